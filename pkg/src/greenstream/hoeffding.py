"""The incremental Hoeffding tree.

Training routes each instance to a leaf, updates that leaf's class
distribution and attribute observers, and every `nmin` units of weight runs
a split attempt gated by the Hoeffding bound with tie-breaking.  Attributes
whose gain trails the best by more than the bound are disabled at that leaf.

The leaf lifecycle hooks used by the accelerated variant (per-leaf arrival
fraction, deactivation, grow-fast mode) live here too, but with the
degenerate thresholds (0 and +inf) used by this class they never trigger,
so a plain HoeffdingTree behaves exactly as the classic algorithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

from greenstream.counters import ResourceCounters
from greenstream.observers import (
    GaussianNumericObserver,
    NominalObserver,
    best_splits,
    hoeffding_bound,
    split_decision,
)
from greenstream.stream import Schema, SchemaMismatchError


@dataclass(frozen=True)
class HTConfig:
    nmin: int = 200
    delta: float = 1e-7
    tau: float = 0.05

    def __post_init__(self):
        if self.nmin < 1:
            raise ValueError("nmin must be a positive integer")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if self.tau < 0:
            raise ValueError("tau must be >= 0")


class SplitNode:
    __slots__ = ("attribute", "threshold", "children", "was_grow_fast")

    def __init__(self, attribute, threshold, children, was_grow_fast=False):
        self.attribute = attribute
        self.threshold = threshold  # None for nominal multiway splits
        self.children = children
        self.was_grow_fast = was_grow_fast

    def route(self, values) -> int:
        if self.threshold is None:
            return values[self.attribute]
        return 0 if values[self.attribute] <= self.threshold else 1


class LeafNode:
    __slots__ = (
        "class_dist",
        "obs_dist",
        "observers",
        "weight_seen",
        "weight_at_last_eval",
        "disabled",
        "active",
        "grow_fast",
        "created_at_weight",
        "mc_correct",
        "nb_correct",
    )

    def __init__(self, class_dist, observers, created_at_weight=0.0):
        self.class_dist = class_dist
        # arrival-only distribution, kept consistent with the observers
        self.obs_dist = [0.0] * len(class_dist)
        self.observers = observers
        self.weight_seen = 0.0
        self.weight_at_last_eval = 0.0
        self.disabled = set()
        self.active = True
        self.grow_fast = False
        self.created_at_weight = created_at_weight
        # running correct-weights of the two leaf predictors
        self.mc_correct = 0.0
        self.nb_correct = 0.0

    def deactivate(self):
        self.active = False
        self.observers = None
        self.obs_dist = None
        self.disabled = None


def _argmax(votes) -> int:
    """Index of the largest vote; ties go to the lowest class index."""
    best = 0
    best_v = votes[0]
    for i in range(1, len(votes)):
        if votes[i] > best_v:
            best = i
            best_v = votes[i]
    return best


class HoeffdingTree:
    """Classic streaming decision tree with adaptive leaf prediction.

    Each leaf tracks how often its majority-class guess and its naive-Bayes
    guess would have been correct on the instances it trained on, and answers
    queries with whichever predictor is ahead (majority class on ties, and
    always once a leaf's observers are gone).
    """

    algorithm = "ht"

    def __init__(self, schema: Schema, config: Optional[HTConfig] = None,
                 counters: Optional[ResourceCounters] = None):
        self.schema = schema
        self.config = config or HTConfig()
        self.counters = counters if counters is not None else ResourceCounters()
        self.deactivate_threshold = 0.0
        self.grow_fast_threshold = math.inf
        self.total_weight = 0.0
        self.n_leaves = 1
        self.merit_range = math.log2(schema.class_count)
        self.split_hook = None  # callable(leaf, used_null_comparator, did_split)
        self.root = self._new_leaf()

    # -- construction helpers -------------------------------------------------

    def _new_observers(self) -> List:
        c = self.schema.class_count
        obs = []
        for is_nom, vc in zip(self.schema.nominal_flags, self.schema.value_counts):
            if is_nom:
                obs.append(NominalObserver(vc, c))
            else:
                obs.append(GaussianNumericObserver(c))
        return obs

    def _new_leaf(self, seed_dist=None) -> LeafNode:
        dist = list(seed_dist) if seed_dist is not None else [0.0] * self.schema.class_count
        return LeafNode(dist, self._new_observers(), self.total_weight)

    # -- inference -------------------------------------------------------------

    def predict(self, values) -> List[float]:
        """Class votes (the reached leaf's class distribution)."""
        if len(values) != self.schema.n_attributes:
            raise SchemaMismatchError("instance arity does not match schema")
        node = self.root
        depth = 0
        while isinstance(node, SplitNode):
            node = node.children[node.route(values)]
            depth += 1
        self.counters.traversal_steps += depth
        return self._leaf_votes(node, values)

    def _nb_votes(self, leaf: LeafNode, values) -> List[float]:
        """Unnormalized naive-Bayes class scores from the leaf's observers."""
        votes = []
        for c, prior in enumerate(leaf.class_dist):
            v = prior
            if v > 0.0:
                for obs, x in zip(leaf.observers, values):
                    v *= obs.nb_likelihood(x, c)
                    if v == 0.0:
                        break
            votes.append(v)
        return votes

    def _leaf_votes(self, leaf: LeafNode, values) -> List[float]:
        if leaf.observers is None or leaf.nb_correct <= leaf.mc_correct:
            return list(leaf.class_dist)
        return self._nb_votes(leaf, values)

    def _score_leaf_predictors(self, leaf: LeafNode, values, label: int,
                               weight: float) -> None:
        """Pre-update bookkeeping of which leaf predictor would have won."""
        if _argmax(leaf.class_dist) == label:
            leaf.mc_correct += weight
        if _argmax(self._nb_votes(leaf, values)) == label:
            leaf.nb_correct += weight

    # -- training ----------------------------------------------------------------

    def train_on(self, values, label: int, weight: float = 1.0) -> None:
        if len(values) != self.schema.n_attributes:
            raise SchemaMismatchError("instance arity does not match schema")
        counters = self.counters
        counters.instances_processed += 1
        self.total_weight += weight

        node = self.root
        parent = None
        child_idx = -1
        depth = 0
        while isinstance(node, SplitNode):
            parent = node
            child_idx = node.route(values)
            node = node.children[child_idx]
            depth += 1
        counters.traversal_steps += depth

        if node.active and weight > 0:
            self._score_leaf_predictors(node, values, label, weight)
        node.class_dist[label] += weight
        if not node.active:
            return
        if weight > 0:
            node.obs_dist[label] += weight
            for obs, v in zip(node.observers, values):
                obs.observe(v, label, weight)
            counters.observer_updates += self.schema.n_attributes
            node.weight_seen += weight

        # per-instance leaf lifecycle (no-op at the degenerate thresholds)
        since_creation = self.total_weight - node.created_at_weight
        if since_creation > 0:
            fraction = node.weight_seen * self.n_leaves / since_creation
            if fraction < self.deactivate_threshold:
                node.deactivate()
                return
            if not node.grow_fast and fraction > self.grow_fast_threshold:
                node.grow_fast = True

        if node.weight_seen - node.weight_at_last_eval >= self.config.nmin:
            node.weight_at_last_eval = node.weight_seen
            self._attempt_split(node, parent, child_idx)

    def _attempt_split(self, leaf: LeafNode, parent, child_idx: int) -> None:
        dist = leaf.obs_dist
        nonzero = sum(1 for w in dist if w > 0)
        if nonzero < 2:
            return  # pure leaf: nothing to gain from splitting
        suggestions = best_splits(
            leaf.observers, dist, disabled=leaf.disabled, counters=self.counters
        )
        attr_suggestions = [s for s in suggestions if not s.is_null]
        candidates = [s for s in attr_suggestions if s.splittable]
        if not candidates:
            return
        best = candidates[0]
        use_null = leaf.grow_fast
        if use_null:
            second_merit = 0.0
        else:
            runner_up = next((s for s in attr_suggestions if s is not best), None)
            second_merit = runner_up.merit if runner_up is not None else 0.0

        eps = hoeffding_bound(self.merit_range, self.config.delta, leaf.weight_seen)
        do_split = split_decision(best.merit, second_merit, eps, self.config.tau)
        if self.split_hook is not None:
            self.split_hook(leaf, use_null, do_split)
        if do_split:
            self._execute_split(leaf, best, parent, child_idx)
        else:
            for s in attr_suggestions:
                if s is not best and best.merit - s.merit > eps:
                    leaf.disabled.add(s.attribute)

    def _execute_split(self, leaf: LeafNode, suggestion, parent, child_idx: int) -> None:
        children = [self._new_leaf(d) for d in suggestion.child_dists]
        split = SplitNode(
            suggestion.attribute,
            suggestion.threshold,
            children,
            was_grow_fast=leaf.grow_fast,
        )
        if parent is None:
            self.root = split
        else:
            parent.children[child_idx] = split
        self.n_leaves += len(children) - 1

    # -- introspection -----------------------------------------------------------

    def iter_nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if isinstance(node, SplitNode):
                stack.extend(node.children)

    def node_count(self) -> dict:
        total = splits = active = deactivated = 0
        for node in self.iter_nodes():
            total += 1
            if isinstance(node, SplitNode):
                splits += 1
            elif node.active:
                active += 1
            else:
                deactivated += 1
        return {
            "total": total,
            "split_nodes": splits,
            "active_leaves": active,
            "deactivated_leaves": deactivated,
        }
