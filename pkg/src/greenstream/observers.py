"""Per-leaf sufficient statistics and split scoring.

Nominal attributes keep a value x class count table; numeric attributes keep
per-class Gaussian summaries (weight, mean, M2) plus per-class and global
min/max.  Split merits are information gains in bits, measured relative to
the parent entropy, so the "null split" (not splitting) always has merit 0.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence

from greenstream.counters import ResourceCounters

#: candidate thresholds evaluated per numeric attribute
DEFAULT_NUM_THRESHOLDS = 10

_SQRT2 = math.sqrt(2.0)


def entropy(class_distribution: Sequence[float]) -> float:
    """Shannon entropy in bits of a (possibly unnormalized) distribution."""
    total = 0.0
    for w in class_distribution:
        if w < 0:
            raise ValueError("negative weight in class distribution")
        total += w
    if total <= 0:
        raise ValueError("all-zero class distribution")
    h = 0.0
    for w in class_distribution:
        if w > 0:
            p = w / total
            h -= p * math.log2(p)
    return h


def hoeffding_bound(r: float, delta: float, n: float) -> float:
    """Confidence radius sqrt(R^2 ln(1/delta) / (2n))."""
    if r <= 0:
        raise ValueError("merit range R must be > 0")
    if not 0 < delta <= 1:
        raise ValueError("delta must be in (0, 1]")
    if n <= 0:
        raise ValueError("observed weight n must be > 0")
    return math.sqrt(r * r * math.log(1.0 / delta) / (2.0 * n))


class NominalObserver:
    """Count table [value][class] of observed weight."""

    __slots__ = ("counts", "class_totals")

    def __init__(self, value_count: int, class_count: int):
        self.counts = [[0.0] * class_count for _ in range(value_count)]
        self.class_totals = [0.0] * class_count

    def observe(self, value: int, class_label: int, weight: float = 1.0) -> None:
        if weight < 0:
            raise ValueError("weight must be >= 0")
        self.counts[value][class_label] += weight
        self.class_totals[class_label] += weight

    def total_weight(self) -> float:
        return sum(self.class_totals)

    def nb_likelihood(self, value: int, class_label: int) -> float:
        """Laplace-smoothed P(value | class)."""
        return (self.counts[value][class_label] + 1.0) / (
            self.class_totals[class_label] + len(self.counts)
        )


class GaussianNumericObserver:
    """Per-class Gaussian summaries with per-class and global min/max.

    Uses the weighted Welford update, so a weight-w observation matches w
    unit observations up to float rounding.
    """

    __slots__ = ("stats", "min_value", "max_value")

    def __init__(self, class_count: int):
        # per class: [weight, mean, M2, min, max]
        self.stats = [[0.0, 0.0, 0.0, math.inf, -math.inf] for _ in range(class_count)]
        self.min_value = math.inf
        self.max_value = -math.inf

    def observe(self, value: float, class_label: int, weight: float = 1.0) -> None:
        if weight < 0:
            raise ValueError("weight must be >= 0")
        if weight == 0:
            return
        s = self.stats[class_label]
        w = s[0] + weight
        delta = value - s[1]
        mean = s[1] + delta * weight / w
        s[2] += weight * delta * (value - mean)
        s[0] = w
        s[1] = mean
        if value < s[3]:
            s[3] = value
        if value > s[4]:
            s[4] = value
        if value < self.min_value:
            self.min_value = value
        if value > self.max_value:
            self.max_value = value

    def mean(self, class_label: int) -> float:
        return self.stats[class_label][1]

    def variance(self, class_label: int) -> float:
        w, _, m2 = self.stats[class_label][:3]
        if w <= 1.0:
            return 0.0
        return m2 / (w - 1.0)

    def total_weight(self) -> float:
        return sum(s[0] for s in self.stats)

    def nb_likelihood(self, value: float, class_label: int) -> float:
        """Gaussian density of `value` under the class summary.

        Classes with no observed weight get likelihood 0; a degenerate
        (zero-variance) class concentrates all its mass on its mean.
        """
        s = self.stats[class_label]
        w = s[0]
        if w == 0.0:
            return 0.0
        var = s[2] / (w - 1.0) if w > 1.0 else 0.0
        if var <= 0.0:
            return 1.0 if value == s[1] else 0.0
        z = value - s[1]
        return math.exp(-z * z / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)

    def class_split_weights(self, threshold: float):
        """Weight mass per class on each side of a threshold.

        Values outside a class's observed [min, max] put all of that class's
        mass on one side; otherwise the class's Gaussian CDF splits it.
        """
        left = []
        right = []
        for w, mean, m2, lo, hi in self.stats:
            if w == 0.0:
                left.append(0.0)
                right.append(0.0)
                continue
            if threshold < lo:
                left.append(0.0)
                right.append(w)
            elif threshold >= hi:
                left.append(w)
                right.append(0.0)
            else:
                var = m2 / (w - 1.0) if w > 1.0 else 0.0
                if var <= 0.0:
                    if mean <= threshold:
                        left.append(w)
                        right.append(0.0)
                    else:
                        left.append(0.0)
                        right.append(w)
                else:
                    z = (threshold - mean) / math.sqrt(var)
                    frac = 0.5 * (1.0 + math.erf(z / _SQRT2))
                    left.append(w * frac)
                    right.append(w * (1.0 - frac))
        return left, right


class SplitSuggestion:
    """One scored candidate split (or the null split)."""

    __slots__ = ("attribute", "kind", "threshold", "merit", "child_dists", "splittable")

    def __init__(self, attribute, kind, threshold, merit, child_dists, splittable=True):
        self.attribute = attribute  # None for the null split
        self.kind = kind  # "nominal" | "numeric" | "null"
        self.threshold = threshold
        self.merit = merit
        self.child_dists = child_dists
        self.splittable = splittable

    @property
    def is_null(self) -> bool:
        return self.kind == "null"

    def __repr__(self):
        return (
            f"SplitSuggestion(attr={self.attribute}, kind={self.kind}, "
            f"threshold={self.threshold}, merit={self.merit:.6f})"
        )


def _gain(parent_entropy: float, total: float, child_dists) -> float:
    rem = 0.0
    for dist in child_dists:
        n = sum(dist)
        if n > 0:
            rem += (n / total) * entropy(dist)
    g = parent_entropy - rem
    return g if g > 0.0 else 0.0


def best_splits(
    observers: Sequence,
    leaf_class_distribution: Sequence[float],
    disabled: Optional[set] = None,
    counters: Optional[ResourceCounters] = None,
    n_thresholds: int = DEFAULT_NUM_THRESHOLDS,
) -> List[SplitSuggestion]:
    """Score every enabled attribute plus the null split.

    Returns suggestions sorted by merit descending; merit ties prefer the
    lower attribute index and rank the null split after attributes.  Charges
    one split evaluation and one gain computation per gain evaluated.
    """
    total = sum(leaf_class_distribution)
    if total <= 0:
        raise ValueError("empty leaf: no observed weight")
    parent_h = entropy(leaf_class_distribution)

    suggestions = [
        SplitSuggestion(None, "null", None, 0.0, [list(leaf_class_distribution)], False)
    ]
    gains_evaluated = 0
    for idx, obs in enumerate(observers):
        if disabled and idx in disabled:
            continue
        if isinstance(obs, NominalObserver):
            child_dists = [list(row) for row in obs.counts]
            gain = _gain(parent_h, total, child_dists)
            gains_evaluated += 1
            suggestions.append(
                SplitSuggestion(idx, "nominal", None, gain, child_dists)
            )
        else:
            lo, hi = obs.min_value, obs.max_value
            best_gain = 0.0
            best_t = None
            best_children = None
            if hi > lo:
                span = hi - lo
                seen = set()
                for i in range(1, n_thresholds + 1):
                    t = lo + span * i / (n_thresholds + 1)
                    if t in seen or t <= lo or t >= hi:
                        continue
                    seen.add(t)
                    left, right = obs.class_split_weights(t)
                    gain = _gain(parent_h, total, (left, right))
                    gains_evaluated += 1
                    if best_t is None or gain > best_gain:
                        best_gain = gain
                        best_t = t
                        best_children = [left, right]
            if best_t is None:
                suggestions.append(
                    SplitSuggestion(idx, "numeric", None, 0.0, None, False)
                )
            else:
                suggestions.append(
                    SplitSuggestion(idx, "numeric", best_t, best_gain, best_children)
                )

    # merit descending; ties: attributes before null, then lower index
    suggestions.sort(
        key=lambda s: (-s.merit, s.is_null, s.attribute if s.attribute is not None else 0)
    )
    if counters is not None:
        counters.split_evaluations += 1
        counters.gain_computations += gains_evaluated
    return suggestions


def split_decision(best_merit: float, second_merit: float, eps: float, tau: float) -> bool:
    """Hoeffding split test: clear win, or a declared tie once eps < tau."""
    d = best_merit - second_merit
    return d > eps or (d < eps and eps < tau)
