"""Prequential test-then-train harness, model size estimation and ranking.

Energy is never reported in joules: each run carries its operation counters
(plus wall time), and cross-algorithm comparisons rank a scalar proxy
computed from them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from scipy.stats import rankdata

from greenstream.counters import ResourceCounters
from greenstream.gaht import GahtTree
from greenstream.observers import GaussianNumericObserver, NominalObserver
from greenstream.stream import StreamSource

# published byte-estimate constants so estimates compare across implementations
NODE_OVERHEAD_BYTES = 64
COUNT_ENTRY_BYTES = 8
GAUSSIAN_TUPLE_BYTES = 24
DIST_ENTRY_BYTES = 8

BYTE_ESTIMATE_CONSTANTS = {
    "node_overhead": NODE_OVERHEAD_BYTES,
    "count_entry": COUNT_ENTRY_BYTES,
    "gaussian_tuple": GAUSSIAN_TUPLE_BYTES,
    "dist_entry": DIST_ENTRY_BYTES,
}

_PRED_HASH_MOD = 1 << 64


def argmax_vote(votes) -> int:
    """Index of the largest vote, ties to the lowest class index."""
    best = 0
    best_v = votes[0]
    for i in range(1, len(votes)):
        if votes[i] > best_v:
            best_v = votes[i]
            best = i
    return best


def _observer_bytes(obs) -> int:
    if isinstance(obs, NominalObserver):
        return len(obs.counts) * len(obs.counts[0]) * COUNT_ENTRY_BYTES
    if isinstance(obs, GaussianNumericObserver):
        return len(obs.stats) * GAUSSIAN_TUPLE_BYTES
    return 0


def _node_bytes(node) -> int:
    size = NODE_OVERHEAD_BYTES
    dist = getattr(node, "class_dist", None)
    if dist is not None:
        size += len(dist) * DIST_ENTRY_BYTES
    observers = getattr(node, "observers", None)
    if observers:
        for obs in observers:
            size += _observer_bytes(obs)
    return size


def estimate_model_bytes(model) -> int:
    """Deterministic structural size estimate of a model.

    Deactivated leaves contribute only their class distribution; ensemble
    estimates are the sum over members.
    """
    members = getattr(model, "members", None)
    if members is not None:
        return sum(estimate_model_bytes(m) for m in members)
    return sum(_node_bytes(n) for n in model.iter_nodes())


def node_census(model) -> dict:
    """Node counts; ensembles report the member-wise sum.  GAHT models add
    inactive-leaf and fast-node counts."""
    members = getattr(model, "members", None)
    if members is not None:
        agg = {"total": 0, "split_nodes": 0, "active_leaves": 0, "deactivated_leaves": 0}
        extra = {}
        for m in members:
            for k, v in node_census(m).items():
                if k in agg:
                    agg[k] += v
                else:
                    extra[k] = extra.get(k, 0) + v
        agg.update(extra)
        return agg
    census = model.node_count()
    if isinstance(model, GahtTree):
        census.update(model.leaf_mode_census())
    return census


def model_counters(model) -> ResourceCounters:
    """The model's counters; for ensembles, the sum over members."""
    c = model.counters
    if isinstance(c, ResourceCounters):
        return c.copy() if getattr(model, "members", None) is None else c
    return c


def proxy_energy(counters: ResourceCounters) -> int:
    """Scalar energy proxy: total split-scoring, statistics and traversal work."""
    return (
        counters.split_evaluations
        + counters.gain_computations
        + counters.observer_updates
        + counters.traversal_steps
    )


@dataclass
class PrequentialResult:
    snapshots: List[dict] = field(default_factory=list)
    instances_seen: int = 0
    correct: int = 0
    final_accuracy: float = 0.0
    final_counters: Optional[dict] = None
    final_census: Optional[dict] = None
    final_bytes: int = 0
    wall_time: float = 0.0
    prediction_hash: int = 0
    truncated: bool = False
    byte_constants: dict = field(default_factory=lambda: dict(BYTE_ESTIMATE_CONSTANTS))

    def summary(self) -> dict:
        return {
            "instances_seen": self.instances_seen,
            "final_accuracy": self.final_accuracy,
            "counters": self.final_counters,
            "proxy_energy": proxy_energy(ResourceCounters.from_dict(self.final_counters)),
            "node_census": self.final_census,
            "estimated_model_bytes": self.final_bytes,
            "wall_time": self.wall_time,
            "prediction_hash": self.prediction_hash,
            "truncated": self.truncated,
            "byte_estimate_constants": self.byte_constants,
        }


def run_prequential(model, stream: StreamSource, limit: int,
                    snapshot_every: int = 100_000) -> PrequentialResult:
    """Test-then-train over `limit` instances with periodic snapshots.

    Every instance is scored by the model before the model trains on it, so
    the prediction for instance i reflects exactly instances 1..i-1.  A
    stream that ends early yields a truncated (flagged) result.
    """
    if snapshot_every < 1:
        raise ValueError("snapshot_every must be >= 1")
    if model.schema != stream.schema:
        raise ValueError("learner schema does not match stream schema")
    result = PrequentialResult()
    start = time.perf_counter()
    seen = 0
    correct = 0
    window_correct = 0
    window_start = 0
    pred_hash = 0
    predict = model.predict
    train = model.train_on
    it = iter(stream)
    while seen < limit:
        try:
            values, label = next(it)
        except StopIteration:
            result.truncated = True
            break
        pred = argmax_vote(predict(values))
        pred_hash = (pred_hash * 31 + pred + 1) % _PRED_HASH_MOD
        if pred == label:
            correct += 1
            window_correct += 1
        train(values, label)
        seen += 1
        if seen % snapshot_every == 0:
            result.snapshots.append(
                {
                    "instances_seen": seen,
                    "cumulative_accuracy": correct / seen,
                    "window_accuracy": window_correct / (seen - window_start),
                    "counters": model_counters(model).as_dict(),
                    "node_census": node_census(model),
                    "estimated_model_bytes": estimate_model_bytes(model),
                    "wall_time": time.perf_counter() - start,
                }
            )
            window_correct = 0
            window_start = seen

    result.instances_seen = seen
    result.correct = correct
    result.final_accuracy = correct / seen if seen else 0.0
    result.final_counters = model_counters(model).as_dict()
    result.final_census = node_census(model)
    result.final_bytes = estimate_model_bytes(model)
    result.wall_time = time.perf_counter() - start
    result.prediction_hash = pred_hash
    return result


@dataclass
class RankTable:
    metric: str
    higher_is_better: bool
    ranks: Dict[str, Dict[str, float]]  # dataset -> algorithm -> rank
    average: Dict[str, float]  # algorithm -> average rank


def compare_runs(values: Dict[str, Dict[str, float]], metric: str = "value",
                 higher_is_better: bool = False) -> RankTable:
    """Rank algorithms per dataset (1 = best) and average the ranks.

    `values` maps algorithm -> dataset -> metric value.  All algorithms must
    cover the same datasets; ties receive the average of the tied ranks.
    """
    algos = sorted(values)
    if len(algos) < 2:
        raise ValueError("need at least two algorithms to rank")
    datasets = set(values[algos[0]])
    for a in algos[1:]:
        if set(values[a]) != datasets:
            raise ValueError("algorithms were run on different dataset sets")
    ranks: Dict[str, Dict[str, float]] = {}
    totals = {a: 0.0 for a in algos}
    for ds in sorted(datasets):
        row = [values[a][ds] for a in algos]
        if higher_is_better:
            row = [-v for v in row]
        r = rankdata(row, method="average")
        ranks[ds] = {a: float(r[i]) for i, a in enumerate(algos)}
        for a in algos:
            totals[a] += ranks[ds][a]
    n = len(datasets)
    average = {a: totals[a] / n for a in algos}
    return RankTable(metric, higher_is_better, ranks, average)
