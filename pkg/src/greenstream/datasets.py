"""Dataset ingestion: an ARFF subset and headered CSV.

Both formats produce the same in-memory DatasetFile: a schema plus a list
of labeled examples, with the class attribute taken from the last column by
default.  Nominal values become dense 0-based indices.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from greenstream.stream import (
    AttributeSpec,
    LabeledExample,
    ListStream,
    Schema,
)

NOMINAL = "nominal"
NUMERIC = "numeric"


class DatasetError(ValueError):
    """Malformed dataset file."""


@dataclass
class DatasetFile:
    path: str
    format: str  # "arff" | "csv"
    schema: Schema
    examples: List[LabeledExample]
    relation: Optional[str] = None

    def as_stream(self) -> ListStream:
        return ListStream(self.schema, self.examples)


# ---------------------------------------------------------------------------
# ARFF
# ---------------------------------------------------------------------------

_ARFF_ATTR_RE = re.compile(
    r"@attribute\s+(?:'([^']+)'|\"([^\"]+)\"|(\S+))\s+(.+)$", re.IGNORECASE
)

_NUMERIC_TYPES = {"numeric", "real", "integer"}
_REJECTED_TYPES = {"string", "date", "relational"}


def _parse_arff_header_line(line: str, lineno: int):
    m = _ARFF_ATTR_RE.match(line)
    if m is None:
        raise DatasetError(f"line {lineno}: malformed @attribute declaration")
    name = m.group(1) or m.group(2) or m.group(3)
    decl = m.group(4).strip()
    if decl.startswith("{"):
        if not decl.endswith("}"):
            raise DatasetError(f"line {lineno}: unterminated nominal enumeration")
        raw = decl[1:-1]
        domain = [v.strip().strip("'\"") for v in raw.split(",")]
        if len(domain) < 2:
            raise DatasetError(
                f"line {lineno}: nominal attribute {name!r} needs >= 2 values"
            )
        return name, NOMINAL, domain
    kind = decl.split()[0].lower()
    if kind in _NUMERIC_TYPES:
        return name, NUMERIC, None
    if kind in _REJECTED_TYPES:
        raise DatasetError(
            f"line {lineno}: attribute type {kind!r} is not supported"
        )
    raise DatasetError(f"line {lineno}: unknown attribute type {decl!r}")


def parse_arff(path: str, class_index: int = -1) -> DatasetFile:
    """Parse a dense ARFF file (nominal enumerations and numeric attributes).

    Keywords are case-insensitive and '%' starts a comment.  Sparse rows
    ('{...}' in @data) and string/date attributes are rejected.
    """
    names: List[str] = []
    kinds: List[str] = []
    domains: List[Optional[List[str]]] = []
    relation = None
    rows: List[Tuple[int, List[str]]] = []
    in_data = False

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if not in_data:
                low = line.lower()
                if low.startswith("@relation"):
                    relation = line.split(None, 1)[1].strip().strip("'\"") if " " in line else ""
                elif low.startswith("@attribute"):
                    name, kind, domain = _parse_arff_header_line(line, lineno)
                    names.append(name)
                    kinds.append(kind)
                    domains.append(domain)
                elif low.startswith("@data"):
                    in_data = True
                else:
                    raise DatasetError(f"line {lineno}: unexpected header line {line!r}")
            else:
                if line.startswith("{"):
                    raise DatasetError(
                        f"line {lineno}: sparse ARFF rows are not supported"
                    )
                rows.append((lineno, [f.strip().strip("'\"") for f in line.split(",")]))

    if not in_data:
        raise DatasetError("missing @data section")
    if len(names) < 2:
        raise DatasetError("need at least one attribute plus a class attribute")

    return _assemble(path, "arff", names, kinds, domains, rows, class_index, relation)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_csv(path: str, class_index: int = -1) -> DatasetFile:
    """Parse a headered CSV.  A column is numeric when every value parses as
    a float; otherwise it is nominal with a sorted distinct-value domain."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            names = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DatasetError("empty CSV file") from None
        rows = [(i + 2, [f.strip() for f in row]) for i, row in enumerate(reader) if row]

    if len(names) < 2:
        raise DatasetError("need at least one attribute plus a class column")

    n_cols = len(names)
    kinds = []
    domains: List[Optional[List[str]]] = []
    for col in range(n_cols):
        col_values = []
        for lineno, row in rows:
            if len(row) != n_cols:
                raise DatasetError(f"line {lineno}: row arity mismatch")
            col_values.append(row[col])
        if col != (class_index % n_cols) and all(_is_float(v) for v in col_values):
            kinds.append(NUMERIC)
            domains.append(None)
        else:
            kinds.append(NOMINAL)
            domains.append(sorted(set(col_values)))
    return _assemble(path, "csv", names, kinds, domains, rows, class_index, None)


# ---------------------------------------------------------------------------

def _assemble(path, fmt, names, kinds, domains, rows, class_index, relation):
    n_cols = len(names)
    cls = class_index % n_cols
    if kinds[cls] != NOMINAL:
        raise DatasetError("class attribute must be nominal")
    class_domain = domains[cls]
    class_lookup = {v: i for i, v in enumerate(class_domain)}

    attr_cols = [i for i in range(n_cols) if i != cls]
    specs = []
    lookups = []
    for i in attr_cols:
        if kinds[i] == NOMINAL:
            specs.append(AttributeSpec(names[i], NOMINAL, len(domains[i])))
            lookups.append({v: j for j, v in enumerate(domains[i])})
        else:
            specs.append(AttributeSpec(names[i], NUMERIC))
            lookups.append(None)
    schema = Schema(specs, len(class_domain))

    examples = []
    for lineno, row in rows:
        if len(row) != n_cols:
            raise DatasetError(f"line {lineno}: row arity mismatch")
        values = []
        for i, lookup in zip(attr_cols, lookups):
            field = row[i]
            if lookup is None:
                try:
                    v = float(field)
                except ValueError:
                    raise DatasetError(
                        f"line {lineno}: non-numeric value {field!r} in numeric "
                        f"attribute {names[i]!r}"
                    ) from None
                if not math.isfinite(v):
                    raise DatasetError(
                        f"line {lineno}: non-finite value in attribute {names[i]!r}"
                    )
                values.append(v)
            else:
                try:
                    values.append(lookup[field])
                except KeyError:
                    raise DatasetError(
                        f"line {lineno}: value {field!r} not declared for nominal "
                        f"attribute {names[i]!r}"
                    ) from None
        try:
            label = class_lookup[row[cls]]
        except KeyError:
            raise DatasetError(
                f"line {lineno}: undeclared class value {row[cls]!r}"
            ) from None
        examples.append(LabeledExample(values, label))

    return DatasetFile(path, fmt, schema, examples, relation)


def load_dataset(path: str, class_index: int = -1) -> DatasetFile:
    """Dispatch on file extension (.arff vs .csv)."""
    low = path.lower()
    if low.endswith(".arff"):
        return parse_arff(path, class_index)
    if low.endswith(".csv"):
        return parse_csv(path, class_index)
    raise DatasetError(f"cannot infer format of {path!r} (expected .arff or .csv)")
