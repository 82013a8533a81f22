"""Schemas, instances and the stream abstraction shared by all learners."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

NOMINAL = "nominal"
NUMERIC = "numeric"


class SchemaMismatchError(ValueError):
    """An example does not fit the schema it was presented to."""


@dataclass(frozen=True)
class AttributeSpec:
    """One attribute: either nominal with a fixed value set, or numeric."""

    name: str
    kind: str
    value_count: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (NOMINAL, NUMERIC):
            raise ValueError(f"unknown attribute kind {self.kind!r}")
        if self.kind == NOMINAL:
            if self.value_count is None or self.value_count < 2:
                raise ValueError(
                    f"nominal attribute {self.name!r} needs value_count >= 2"
                )
        elif self.value_count is not None:
            raise ValueError(f"numeric attribute {self.name!r} takes no value_count")

    @property
    def is_nominal(self) -> bool:
        return self.kind == NOMINAL


class Schema:
    """Immutable description of a labeled stream: attributes plus class count."""

    __slots__ = ("attributes", "class_count", "_kinds", "_value_counts")

    def __init__(self, attributes: Sequence[AttributeSpec], class_count: int):
        attributes = tuple(attributes)
        if not attributes:
            raise ValueError("schema needs at least one attribute")
        if class_count < 2:
            raise ValueError("class_count must be >= 2")
        names = [a.name for a in attributes]
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "class_count", class_count)
        object.__setattr__(self, "_kinds", tuple(a.is_nominal for a in attributes))
        object.__setattr__(
            self, "_value_counts", tuple(a.value_count for a in attributes)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Schema is immutable")

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def nominal_flags(self) -> Tuple[bool, ...]:
        return self._kinds

    @property
    def value_counts(self) -> Tuple[Optional[int], ...]:
        return self._value_counts

    def __eq__(self, other):
        return (
            isinstance(other, Schema)
            and self.attributes == other.attributes
            and self.class_count == other.class_count
        )

    def __hash__(self):
        return hash((self.attributes, self.class_count))

    def __repr__(self):
        return f"Schema({list(self.attributes)!r}, class_count={self.class_count})"


class LabeledExample(NamedTuple):
    values: List
    label: int


# Error codes reported by validate_example, in checking order.
ARITY_MISMATCH = "arity-mismatch"
KIND_MISMATCH = "kind-mismatch"
OUT_OF_RANGE_NOMINAL = "out-of-range-nominal"
OUT_OF_RANGE_LABEL = "out-of-range-label"
NON_FINITE_NUMERIC = "non-finite-numeric"


def validate_example(schema: Schema, example: LabeledExample) -> Optional[str]:
    """Check an example against a schema.

    Returns None when the example is valid, otherwise the code of the first
    violated constraint (attributes are checked in order, label last).
    """
    values = example.values
    if len(values) != schema.n_attributes:
        return ARITY_MISMATCH
    for v, is_nom, vc in zip(values, schema.nominal_flags, schema.value_counts):
        if is_nom:
            if not isinstance(v, int) or isinstance(v, bool):
                return KIND_MISMATCH
            if not 0 <= v < vc:
                return OUT_OF_RANGE_NOMINAL
        else:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                return KIND_MISMATCH
            if not math.isfinite(v):
                return NON_FINITE_NUMERIC
    label = example.label
    if not isinstance(label, int) or not 0 <= label < schema.class_count:
        return OUT_OF_RANGE_LABEL
    return None


class StreamSource:
    """Base class for labeled-example streams.

    A stream exposes its schema and yields LabeledExample objects, possibly
    forever.  Instances are single-consumer.
    """

    schema: Schema

    def __iter__(self) -> Iterator[LabeledExample]:
        raise NotImplementedError

    def take(self, n: int) -> List[LabeledExample]:
        out = []
        it = iter(self)
        for _ in range(n):
            try:
                out.append(next(it))
            except StopIteration:
                break
        return out


class ListStream(StreamSource):
    """Finite stream backed by an in-memory list of examples."""

    def __init__(self, schema: Schema, examples: Sequence[LabeledExample]):
        self.schema = schema
        self._examples = list(examples)

    def __iter__(self):
        return iter(self._examples)

    def __len__(self):
        return len(self._examples)
