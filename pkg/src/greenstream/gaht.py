"""Accelerated Hoeffding tree with per-leaf dynamic splitting criteria.

Each active leaf tracks the fraction of tree arrivals it receives relative
to a uniform spread over all leaves:

    fraction = n_l / (n_since_creation / n_leaves)

Leaves starved below ``deactivate_threshold`` stop growing (their class
distribution keeps tracking routed instances, but attribute observers are
dropped and no further split is attempted).  Leaves running hot above
``grow_fast_threshold`` latch into grow-fast mode, where the split test
compares the best attribute against the null split instead of the
second-best attribute.  Everything else is inherited from HoeffdingTree;
splits are never re-evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from greenstream.counters import ResourceCounters
from greenstream.hoeffding import HoeffdingTree, HTConfig, SplitNode
from greenstream.stream import Schema


@dataclass(frozen=True)
class GahtConfig:
    base: HTConfig = field(default_factory=HTConfig)
    deactivate_threshold: float = 0.01
    grow_fast_threshold: float = 2.0

    def __post_init__(self):
        if self.deactivate_threshold < 0:
            raise ValueError("deactivate_threshold must be >= 0")
        if not self.grow_fast_threshold > self.deactivate_threshold:
            raise ValueError("grow_fast_threshold must exceed deactivate_threshold")


def leaf_fraction(n_l: float, n_since_creation: float, n_leaves: int) -> Optional[float]:
    """Arrival fraction of a leaf; None while nothing has arrived yet."""
    if n_leaves < 1:
        raise ValueError("n_leaves must be >= 1")
    if n_since_creation <= 0:
        return None
    return n_l * n_leaves / n_since_creation


class GahtTree(HoeffdingTree):
    algorithm = "gaht"

    def __init__(self, schema: Schema, config: Optional[GahtConfig] = None,
                 counters: Optional[ResourceCounters] = None):
        config = config or GahtConfig()
        super().__init__(schema, config.base, counters)
        self.gaht_config = config
        self.deactivate_threshold = config.deactivate_threshold
        self.grow_fast_threshold = config.grow_fast_threshold

    def leaf_mode_census(self) -> dict:
        """Counts of deactivated leaves and of grow-fast nodes.

        Grow-fast nodes are current leaves in grow-fast mode plus split
        nodes that were in grow-fast mode at the moment they split.
        """
        inactive = 0
        fast = 0
        for node in self.iter_nodes():
            if isinstance(node, SplitNode):
                if node.was_grow_fast:
                    fast += 1
            else:
                if not node.active:
                    inactive += 1
                elif node.grow_fast:
                    fast += 1
        return {"inactive_leaves": inactive, "fast_nodes": fast}
