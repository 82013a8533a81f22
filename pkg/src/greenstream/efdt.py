"""Extremely fast decision tree variant.

Two departures from the plain Hoeffding tree: leaves split as soon as the
best attribute beats the null split by the Hoeffding bound (not the
second-best attribute), and every node on the routing path, internal nodes
included, keeps class/attribute statistics so that established splits can be
re-checked.  Every ``nmin`` units of weight through an internal node the
best attribute is recomputed from that node's own statistics; if the current
split attribute has fallen behind the best by more than the bound, the
subtree is demoted back to a single active leaf that keeps the node's
accumulated statistics.
"""

from __future__ import annotations

from typing import List, Optional

from greenstream.counters import ResourceCounters
from greenstream.hoeffding import HTConfig, LeafNode
from greenstream.observers import (
    best_splits,
    hoeffding_bound,
    split_decision,
)
from greenstream.hoeffding import HoeffdingTree
from greenstream.stream import Schema, SchemaMismatchError


class EfdtSplitNode:
    """Internal node that keeps accumulating statistics for re-evaluation."""

    __slots__ = (
        "attribute",
        "threshold",
        "children",
        "class_dist",
        "obs_dist",
        "observers",
        "weight_seen",
        "weight_at_last_eval",
    )

    def __init__(self, attribute, threshold, children, class_dist, obs_dist,
                 observers, weight_seen, weight_at_last_eval):
        self.attribute = attribute
        self.threshold = threshold
        self.children = children
        self.class_dist = class_dist
        self.obs_dist = obs_dist
        self.observers = observers
        self.weight_seen = weight_seen
        self.weight_at_last_eval = weight_at_last_eval

    def route(self, values) -> int:
        if self.threshold is None:
            return values[self.attribute]
        return 0 if values[self.attribute] <= self.threshold else 1


class EfdtTree(HoeffdingTree):
    algorithm = "efdt"

    def __init__(self, schema: Schema, config: Optional[HTConfig] = None,
                 counters: Optional[ResourceCounters] = None):
        super().__init__(schema, config, counters)
        self.subtree_demotions = 0

    # -- inference ---------------------------------------------------------------

    def predict(self, values) -> List[float]:
        if len(values) != self.schema.n_attributes:
            raise SchemaMismatchError("instance arity does not match schema")
        node = self.root
        depth = 0
        while isinstance(node, EfdtSplitNode):
            node = node.children[node.route(values)]
            depth += 1
        self.counters.traversal_steps += depth
        return self._leaf_votes(node, values)

    # -- training ----------------------------------------------------------------

    def train_on(self, values, label: int, weight: float = 1.0) -> None:
        if len(values) != self.schema.n_attributes:
            raise SchemaMismatchError("instance arity does not match schema")
        counters = self.counters
        counters.instances_processed += 1
        self.total_weight += weight
        d = self.schema.n_attributes
        nmin = self.config.nmin

        node = self.root
        parent = None
        child_idx = -1
        depth = 0
        while isinstance(node, EfdtSplitNode):
            node.class_dist[label] += weight
            if weight > 0:
                node.obs_dist[label] += weight
                for obs, v in zip(node.observers, values):
                    obs.observe(v, label, weight)
                counters.observer_updates += d
                node.weight_seen += weight
            if node.weight_seen - node.weight_at_last_eval >= nmin:
                node.weight_at_last_eval = node.weight_seen
                demoted = self._reevaluate_best_split(node, parent, child_idx)
                if demoted is not None:
                    # the demoted leaf already absorbed this instance while
                    # it was still an internal node
                    counters.traversal_steps += depth
                    return
            parent = node
            child_idx = node.route(values)
            node = node.children[child_idx]
            depth += 1
        counters.traversal_steps += depth

        # leaf handling
        if weight > 0:
            self._score_leaf_predictors(node, values, label, weight)
        node.class_dist[label] += weight
        if weight > 0:
            node.obs_dist[label] += weight
            for obs, v in zip(node.observers, values):
                obs.observe(v, label, weight)
            counters.observer_updates += d
            node.weight_seen += weight
        if node.weight_seen - node.weight_at_last_eval >= nmin:
            node.weight_at_last_eval = node.weight_seen
            self._attempt_split(node, parent, child_idx)

    def _attempt_split(self, leaf: LeafNode, parent, child_idx: int) -> None:
        # EFDT criterion: best attribute against the null split (merit 0),
        # with the same tie rule as the plain Hoeffding tree.
        dist = leaf.obs_dist
        nonzero = sum(1 for w in dist if w > 0)
        if nonzero < 2:
            return
        suggestions = best_splits(leaf.observers, dist, counters=self.counters)
        candidates = [s for s in suggestions if not s.is_null and s.splittable]
        if not candidates:
            return
        best = candidates[0]
        eps = hoeffding_bound(self.merit_range, self.config.delta, leaf.weight_seen)
        if split_decision(best.merit, 0.0, eps, self.config.tau):
            self._execute_split(leaf, best, parent, child_idx)

    def _execute_split(self, leaf: LeafNode, suggestion, parent, child_idx: int) -> None:
        # The former leaf's statistics live on in the internal node so the
        # split can be re-judged later.
        children = [self._new_leaf(dist) for dist in suggestion.child_dists]
        split = EfdtSplitNode(
            suggestion.attribute,
            suggestion.threshold,
            children,
            leaf.class_dist,
            leaf.obs_dist,
            leaf.observers,
            leaf.weight_seen,
            leaf.weight_seen,
        )
        if parent is None:
            self.root = split
        else:
            parent.children[child_idx] = split
        self.n_leaves += len(children) - 1

    def _reevaluate_best_split(self, node: EfdtSplitNode, parent, child_idx: int):
        """Re-judge an internal split; returns the replacement leaf if demoted."""
        dist = node.obs_dist
        nonzero = sum(1 for w in dist if w > 0)
        if nonzero < 2:
            return None
        suggestions = best_splits(node.observers, dist, counters=self.counters)
        candidates = [s for s in suggestions if not s.is_null and s.splittable]
        if not candidates:
            return None
        best = candidates[0]
        if best.attribute == node.attribute:
            return None
        current = next((s for s in suggestions if s.attribute == node.attribute), None)
        current_merit = current.merit if current is not None else 0.0
        eps = hoeffding_bound(self.merit_range, self.config.delta, node.weight_seen)
        if best.merit - current_merit > eps:
            return self._demote(node, parent, child_idx)
        return None

    def _demote(self, node: EfdtSplitNode, parent, child_idx: int) -> LeafNode:
        removed_leaves = sum(
            1 for n in self._iter_subtree(node) if not isinstance(n, EfdtSplitNode)
        )
        leaf = LeafNode(node.class_dist, node.observers, self.total_weight)
        leaf.obs_dist = node.obs_dist
        leaf.weight_seen = node.weight_seen
        leaf.weight_at_last_eval = node.weight_seen
        if parent is None:
            self.root = leaf
        else:
            parent.children[child_idx] = leaf
        self.n_leaves -= removed_leaves - 1
        self.subtree_demotions += 1
        return leaf

    def _iter_subtree(self, node):
        stack = [node]
        while stack:
            n = stack.pop()
            yield n
            if isinstance(n, EfdtSplitNode):
                stack.extend(n.children)

    def iter_nodes(self):
        return self._iter_subtree(self.root)

    def node_count(self) -> dict:
        total = splits = active = deactivated = 0
        for node in self.iter_nodes():
            total += 1
            if isinstance(node, EfdtSplitNode):
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
