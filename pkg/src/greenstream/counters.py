"""Monotone operation counters used as the portable energy proxy."""

from __future__ import annotations


class ResourceCounters:
    """Counts of the work a learner performed.

    split_evaluations   one per call that scores all candidate splits at a node
    gain_computations   one per information gain actually evaluated
    observer_updates    one per (attribute observer, instance) update
    traversal_steps     one per edge walked while routing an instance
    instances_processed one per training call with positive weight routing
    """

    __slots__ = (
        "split_evaluations",
        "gain_computations",
        "observer_updates",
        "traversal_steps",
        "instances_processed",
    )

    FIELDS = (
        "split_evaluations",
        "gain_computations",
        "observer_updates",
        "traversal_steps",
        "instances_processed",
    )

    def __init__(self):
        self.split_evaluations = 0
        self.gain_computations = 0
        self.observer_updates = 0
        self.traversal_steps = 0
        self.instances_processed = 0

    def add(self, other: "ResourceCounters") -> "ResourceCounters":
        for f in self.FIELDS:
            setattr(self, f, getattr(self, f) + getattr(other, f))
        return self

    def copy(self) -> "ResourceCounters":
        c = ResourceCounters()
        c.add(self)
        return c

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "ResourceCounters":
        c = cls()
        for f in cls.FIELDS:
            setattr(c, f, int(d[f]))
        return c

    def __eq__(self, other):
        if not isinstance(other, ResourceCounters):
            return NotImplemented
        return all(getattr(self, f) == getattr(other, f) for f in self.FIELDS)

    def __repr__(self):
        inner = ", ".join(f"{f}={getattr(self, f)}" for f in self.FIELDS)
        return f"ResourceCounters({inner})"
