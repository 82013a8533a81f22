"""Online bagging and boosting over any base tree learner in this package.

Both ensembles replace bootstrap resampling with per-instance Poisson
weights.  "Training k times" is realized as a single update with weight k,
which gives identical nominal statistics and near-identical (<=1e-9
relative) Gaussian summaries at a fraction of the work.
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional

from greenstream.counters import ResourceCounters
from greenstream.rng import SplitMix64
from greenstream.stream import Schema

#: log-odds member weight ceiling for boosting votes
_MAX_MEMBER_WEIGHT = 10.0
# Knuth's product method underflows near exp(-746); split large lambdas
_KNUTH_LIMIT = 500.0


def _poisson_knuth(rng, lam: float) -> int:
    limit = math.exp(-lam)
    k = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


def poisson_sample(rng, lam: float) -> int:
    """Exact Poisson draw with mean lam, deterministic given the rng state."""
    if lam <= 0:
        raise ValueError("lambda must be > 0")
    total = 0
    while lam > _KNUTH_LIMIT:
        total += _poisson_knuth(rng, _KNUTH_LIMIT)
        lam -= _KNUTH_LIMIT
    return total + _poisson_knuth(rng, lam)


def _argmax_lowest(scores) -> int:
    best = 0
    best_v = scores[0]
    for i in range(1, len(scores)):
        if scores[i] > best_v:
            best_v = scores[i]
            best = i
    return best


class _Ensemble:
    def __init__(self, schema: Schema, member_factory: Callable, n_members: int = 10,
                 seed: int = 1):
        if n_members < 1:
            raise ValueError("n_members must be >= 1")
        self.schema = schema
        self.members = [member_factory(schema) for _ in range(n_members)]
        self.rng = SplitMix64(seed)

    @property
    def counters(self) -> ResourceCounters:
        agg = ResourceCounters()
        for m in self.members:
            agg.add(m.counters)
        return agg


class OzaBag(_Ensemble):
    """Online bagging: every member trains with its own Poisson(1) weight."""

    algorithm = "ozabag"

    def train_on(self, values, label: int) -> None:
        rng = self.rng
        for member in self.members:
            k = poisson_sample(rng, 1.0)
            if k:
                member.train_on(values, label, float(k))

    def predict(self, values) -> List[float]:
        """Unweighted majority over member argmax votes."""
        votes = [0.0] * self.schema.class_count
        for member in self.members:
            votes[_argmax_lowest(member.predict(values))] += 1.0
        return votes


class OzaBoost(_Ensemble):
    """Online boosting: the instance weight grows along the member chain
    whenever the previous members misclassify it."""

    algorithm = "ozaboost"

    def __init__(self, schema, member_factory, n_members=10, seed=1):
        super().__init__(schema, member_factory, n_members, seed)
        self.lambda_sc = [0.0] * n_members
        self.lambda_sw = [0.0] * n_members

    def train_on(self, values, label: int) -> None:
        rng = self.rng
        lam = 1.0
        for i, member in enumerate(self.members):
            k = poisson_sample(rng, lam)
            if k:
                member.train_on(values, label, float(k))
            if _argmax_lowest(member.predict(values)) == label:
                self.lambda_sc[i] += lam
                total = self.lambda_sc[i] + self.lambda_sw[i]
                lam *= total / (2.0 * self.lambda_sc[i])
            else:
                self.lambda_sw[i] += lam
                total = self.lambda_sc[i] + self.lambda_sw[i]
                lam *= total / (2.0 * self.lambda_sw[i])

    def member_weight(self, i: int) -> float:
        """log-odds vote weight of member i, clamped to [0, 10]."""
        mass = self.lambda_sc[i] + self.lambda_sw[i]
        if mass <= 0:
            return 0.0
        err = self.lambda_sw[i] / mass
        if err >= 0.5:
            return 0.0
        if err <= 0.0:
            return _MAX_MEMBER_WEIGHT
        w = math.log((1.0 - err) / err)
        return min(max(w, 0.0), _MAX_MEMBER_WEIGHT)

    def predict(self, values) -> List[float]:
        votes = [0.0] * self.schema.class_count
        for i, member in enumerate(self.members):
            w = self.member_weight(i)
            if w > 0:
                votes[_argmax_lowest(member.predict(values))] += w
        return votes
