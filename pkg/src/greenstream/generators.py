"""Seeded synthetic stream generators.

Six classic stream families with fixed schemas: RandomTree (5 nominal + 5
numeric, 2 classes), Waveform (21 numeric, 3 classes), RandomRBF (10
numeric, 2 classes), LED (24 binary nominal, 10 classes), Hyperplane (10
numeric, 2 classes) and Agrawal (3 nominal + 6 numeric, 2 classes).  All
draw exclusively from the package's splitmix64 PRNG, so two instantiations
with the same seed emit bit-identical streams.
"""

from __future__ import annotations

import math
from typing import Iterator, List

from greenstream.rng import SplitMix64
from greenstream.stream import AttributeSpec, LabeledExample, Schema, StreamSource

NOMINAL = "nominal"
NUMERIC = "numeric"


class _GeneratorBase(StreamSource):
    def __iter__(self) -> Iterator[LabeledExample]:
        while True:
            yield self.next_example()

    def next_example(self) -> LabeledExample:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# RandomTree
# ---------------------------------------------------------------------------

class _RTLeaf:
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label


class _RTSplit:
    __slots__ = ("attr", "threshold", "children")

    def __init__(self, attr, threshold, children):
        self.attr = attr
        self.threshold = threshold
        self.children = children


class RandomTreeGenerator(_GeneratorBase):
    """Labels drawn by routing uniform instances through a random tree."""

    kind = "rtree"

    def __init__(self, seed: int = 1, n_nominal: int = 5, n_numeric: int = 5,
                 n_values: int = 5, n_classes: int = 2, max_depth: int = 5,
                 first_leaf_depth: int = 3, leaf_fraction: float = 0.15):
        attrs = [AttributeSpec(f"nom{i}", NOMINAL, n_values) for i in range(n_nominal)]
        attrs += [AttributeSpec(f"num{i}", NUMERIC) for i in range(n_numeric)]
        self.schema = Schema(attrs, n_classes)
        self.n_nominal = n_nominal
        self.n_numeric = n_numeric
        self.n_values = n_values
        self.n_classes = n_classes
        self.max_depth = max_depth
        self.first_leaf_depth = first_leaf_depth
        self.leaf_fraction = leaf_fraction
        tree_rng = SplitMix64(seed)
        self.tree = self._build(tree_rng, 0, list(range(n_nominal)),
                                [0.0] * n_numeric, [1.0] * n_numeric)
        self.rng = SplitMix64(seed ^ 0x5DEECE66D)

    def _build(self, rng, depth, free_nominals, lo, hi):
        if depth >= self.max_depth or (
            depth >= self.first_leaf_depth and rng.random() < self.leaf_fraction
        ):
            return _RTLeaf(rng.randint(self.n_classes))
        n_choices = len(free_nominals) + self.n_numeric
        if n_choices == 0:
            return _RTLeaf(rng.randint(self.n_classes))
        pick = rng.randint(n_choices)
        if pick < len(free_nominals):
            attr = free_nominals[pick]
            remaining = [a for a in free_nominals if a != attr]
            children = [
                self._build(rng, depth + 1, remaining, lo, hi)
                for _ in range(self.n_values)
            ]
            return _RTSplit(attr, None, children)
        num_idx = pick - len(free_nominals)
        threshold = rng.uniform(lo[num_idx], hi[num_idx])
        left_hi = list(hi)
        left_hi[num_idx] = threshold
        right_lo = list(lo)
        right_lo[num_idx] = threshold
        children = [
            self._build(rng, depth + 1, free_nominals, lo, left_hi),
            self._build(rng, depth + 1, free_nominals, right_lo, hi),
        ]
        return _RTSplit(self.n_nominal + num_idx, threshold, children)

    def _route(self, values) -> int:
        node = self.tree
        while isinstance(node, _RTSplit):
            if node.threshold is None:
                node = node.children[values[node.attr]]
            else:
                node = node.children[0 if values[node.attr] <= node.threshold else 1]
        return node.label

    def next_example(self) -> LabeledExample:
        rng = self.rng
        values: List = [rng.randint(self.n_values) for _ in range(self.n_nominal)]
        values += [rng.random() for _ in range(self.n_numeric)]
        return LabeledExample(values, self._route(values))


# ---------------------------------------------------------------------------
# Waveform
# ---------------------------------------------------------------------------

def _triangle(center: int) -> List[float]:
    return [max(6.0 - abs(t - center), 0.0) for t in range(1, 22)]


_WAVE_BASES = (_triangle(11), _triangle(15), _triangle(7))
_WAVE_PAIRS = ((0, 1), (0, 2), (1, 2))


class WaveformGenerator(_GeneratorBase):
    """Noisy convex combinations of two of three triangular base waves."""

    kind = "wave"

    def __init__(self, seed: int = 1):
        self.schema = Schema(
            [AttributeSpec(f"x{i}", NUMERIC) for i in range(21)], 3
        )
        self.rng = SplitMix64(seed)

    def next_example(self) -> LabeledExample:
        rng = self.rng
        label = rng.randint(3)
        a, b = _WAVE_PAIRS[label]
        ha, hb = _WAVE_BASES[a], _WAVE_BASES[b]
        u = rng.random()
        v = 1.0 - u
        values = [u * ha[i] + v * hb[i] + rng.gauss() for i in range(21)]
        return LabeledExample(values, label)


# ---------------------------------------------------------------------------
# RandomRBF
# ---------------------------------------------------------------------------

class RandomRBFGenerator(_GeneratorBase):
    """Instances scattered around weighted random centroids with fixed labels."""

    kind = "rbf"

    def __init__(self, seed: int = 1, n_centroids: int = 50, n_attributes: int = 10,
                 n_classes: int = 2):
        self.schema = Schema(
            [AttributeSpec(f"x{i}", NUMERIC) for i in range(n_attributes)], n_classes
        )
        self.n_attributes = n_attributes
        model_rng = SplitMix64(seed)
        self.centers = []
        self.labels = []
        self.stddevs = []
        weights = []
        for _ in range(n_centroids):
            self.centers.append([model_rng.random() for _ in range(n_attributes)])
            self.labels.append(model_rng.randint(n_classes))
            self.stddevs.append(model_rng.random())
            weights.append(model_rng.random())
        total = sum(weights)
        self.cum_weights = []
        acc = 0.0
        for w in weights:
            acc += w / total
            self.cum_weights.append(acc)
        self.cum_weights[-1] = 1.0
        self.rng = SplitMix64(seed ^ 0x5DEECE66D)

    def _pick_centroid(self) -> int:
        r = self.rng.random()
        for i, cw in enumerate(self.cum_weights):
            if r < cw:
                return i
        return len(self.cum_weights) - 1

    def next_example(self) -> LabeledExample:
        rng = self.rng
        c = self._pick_centroid()
        center = self.centers[c]
        direction = [rng.random() * 2.0 - 1.0 for _ in range(self.n_attributes)]
        norm = math.sqrt(sum(x * x for x in direction))
        if norm == 0.0:
            direction = [1.0] + [0.0] * (self.n_attributes - 1)
            norm = 1.0
        length = rng.gauss() * self.stddevs[c]
        scale = length / norm
        values = [center[i] + direction[i] * scale for i in range(self.n_attributes)]
        return LabeledExample(values, self.labels[c])


# ---------------------------------------------------------------------------
# LED
# ---------------------------------------------------------------------------

_LED_SEGMENTS = (
    (1, 1, 1, 0, 1, 1, 1),
    (0, 0, 1, 0, 0, 1, 0),
    (1, 0, 1, 1, 1, 0, 1),
    (1, 0, 1, 1, 0, 1, 1),
    (0, 1, 1, 1, 0, 1, 0),
    (1, 1, 0, 1, 0, 1, 1),
    (1, 1, 0, 1, 1, 1, 1),
    (1, 0, 1, 0, 0, 1, 0),
    (1, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 0, 1, 1),
)


class LedGenerator(_GeneratorBase):
    """Seven noisy display segments plus seventeen irrelevant binary attributes."""

    kind = "led"

    N_IRRELEVANT = 17

    def __init__(self, seed: int = 1, noise: float = 0.10):
        attrs = [AttributeSpec(f"seg{i}", NOMINAL, 2) for i in range(7)]
        attrs += [
            AttributeSpec(f"irr{i}", NOMINAL, 2) for i in range(self.N_IRRELEVANT)
        ]
        self.schema = Schema(attrs, 10)
        self.noise = noise
        self.rng = SplitMix64(seed)

    def next_example(self) -> LabeledExample:
        rng = self.rng
        digit = rng.randint(10)
        segs = _LED_SEGMENTS[digit]
        noise = self.noise
        values = [
            (1 - s) if rng.random() < noise else s for s in segs
        ]
        values += [rng.randint(2) for _ in range(self.N_IRRELEVANT)]
        return LabeledExample(values, digit)


def led_bayes_predict(values) -> int:
    """Maximum-likelihood digit for a noisy LED reading (minimum Hamming
    distance over the seven relevant segments).  Independent oracle for the
    noise-floor sanity band."""
    best = 0
    best_d = 8
    for digit, segs in enumerate(_LED_SEGMENTS):
        d = sum(1 for i in range(7) if values[i] != segs[i])
        if d < best_d:
            best_d = d
            best = digit
    return best


# ---------------------------------------------------------------------------
# Hyperplane
# ---------------------------------------------------------------------------

class HyperplaneGenerator(_GeneratorBase):
    """Static hyperplane labels (no drift, no label noise): class is the side
    of sum(w_i x_i) relative to sum(w_i)/2."""

    kind = "hyper"

    def __init__(self, seed: int = 1, n_attributes: int = 10):
        self.schema = Schema(
            [AttributeSpec(f"x{i}", NUMERIC) for i in range(n_attributes)], 2
        )
        self.n_attributes = n_attributes
        model_rng = SplitMix64(seed)
        self.weights = [model_rng.random() for _ in range(n_attributes)]
        self.threshold = sum(self.weights) / 2.0
        self.rng = SplitMix64(seed ^ 0x5DEECE66D)

    def label_of(self, values) -> int:
        s = 0.0
        for w, x in zip(self.weights, values):
            s += w * x
        return 1 if s >= self.threshold else 0

    def next_example(self) -> LabeledExample:
        rng = self.rng
        values = [rng.random() for _ in range(self.n_attributes)]
        return LabeledExample(values, self.label_of(values))


# ---------------------------------------------------------------------------
# Agrawal
# ---------------------------------------------------------------------------

class AgrawalGenerator(_GeneratorBase):
    """Loan-application attributes with the classic rule-based labeling
    (classification function 1: group by age) and small numeric perturbation.

    Attribute order: salary, commission, age, elevel, car, zipcode, hvalue,
    hyears, loan.
    """

    kind = "agrawal"

    _RANGES = {
        "salary": (20000.0, 150000.0),
        "commission": (0.0, 75000.0),
        "age": (20.0, 80.0),
        "hvalue": (50000.0, 900000.0),
        "hyears": (1.0, 30.0),
        "loan": (0.0, 500000.0),
    }

    def __init__(self, seed: int = 1, perturbation: float = 0.05):
        if not 0.0 <= perturbation <= 1.0:
            raise ValueError("perturbation must be in [0, 1]")
        attrs = [
            AttributeSpec("salary", NUMERIC),
            AttributeSpec("commission", NUMERIC),
            AttributeSpec("age", NUMERIC),
            AttributeSpec("elevel", NOMINAL, 5),
            AttributeSpec("car", NOMINAL, 20),
            AttributeSpec("zipcode", NOMINAL, 9),
            AttributeSpec("hvalue", NUMERIC),
            AttributeSpec("hyears", NUMERIC),
            AttributeSpec("loan", NUMERIC),
        ]
        self.schema = Schema(attrs, 2)
        self.perturbation = perturbation
        self.rng = SplitMix64(seed)

    def _perturb(self, value: float, name: str) -> float:
        lo, hi = self._RANGES[name]
        value += (self.rng.random() * 2.0 - 1.0) * self.perturbation * (hi - lo)
        return min(max(value, lo), hi)

    def next_example(self) -> LabeledExample:
        rng = self.rng
        salary = rng.uniform(20000.0, 150000.0)
        commission = 0.0 if salary >= 75000.0 else rng.uniform(10000.0, 75000.0)
        age = float(20 + rng.randint(61))
        elevel = rng.randint(5)
        car = rng.randint(20)
        zipcode = rng.randint(9)
        hvalue = (9 - zipcode) * 100000.0 * rng.uniform(0.5, 1.5)
        hvalue = min(max(hvalue, 50000.0), 900000.0)
        hyears = float(1 + rng.randint(30))
        loan = rng.uniform(0.0, 500000.0)

        label = 0 if (age < 40.0 or age >= 60.0) else 1

        if self.perturbation > 0.0:
            salary = self._perturb(salary, "salary")
            if commission > 0.0:
                commission = self._perturb(commission, "commission")
            age = self._perturb(age, "age")
            hvalue = self._perturb(hvalue, "hvalue")
            hyears = self._perturb(hyears, "hyears")
            loan = self._perturb(loan, "loan")

        values = [salary, commission, age, elevel, car, zipcode, hvalue, hyears, loan]
        return LabeledExample(values, label)


# ---------------------------------------------------------------------------

_GENERATORS = {
    "rtree": RandomTreeGenerator,
    "wave": WaveformGenerator,
    "rbf": RandomRBFGenerator,
    "led": LedGenerator,
    "hyper": HyperplaneGenerator,
    "agrawal": AgrawalGenerator,
}

SYNTHETIC_KINDS = tuple(_GENERATORS)


def make_generator(kind: str, seed: int = 1, **params) -> StreamSource:
    try:
        cls = _GENERATORS[kind]
    except KeyError:
        raise ValueError(
            f"unknown generator kind {kind!r}; expected one of {sorted(_GENERATORS)}"
        ) from None
    return cls(seed=seed, **params)
