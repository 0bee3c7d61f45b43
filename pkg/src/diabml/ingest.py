"""CSV reading/writing and the synthetic stand-in dataset.

CSV dialect: comma separated, no quoting, UTF-8, LF line endings. The
first line is the header and must list the schema attribute names in order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TextIO

from .data import DataError, Dataset, Schema, schema_default, validate_record
from .rng import MASK64, SplitMix64

_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


class CsvError(DataError):
    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.column = column


def _lines(source) -> list[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if not isinstance(source, str):
        source = source.read()
        if isinstance(source, bytes):
            source = source.decode("utf-8")
    return source.split("\n")


def _parse_cell(schema: Schema, col: int, cell: str, line: int):
    spec = schema.attributes[col]
    if spec.is_nominal:
        try:
            return spec.categories.index(cell)
        except ValueError:
            raise CsvError(f"unknown category {cell!r}", line, spec.name) from None
    if not _DECIMAL.fullmatch(cell):
        raise CsvError(f"cannot parse {cell!r} as a number", line, spec.name)
    return float(cell)


def _parse(source, schema: Schema, labeled: bool) -> list[tuple]:
    lines = _lines(source)
    if not lines or not lines[0].strip():
        raise CsvError("missing header", 1)
    header = lines[0].rstrip("\r").split(",")
    columns = list(range(len(schema.attributes)))
    if not labeled:
        columns.remove(schema.class_index)
    expected = [schema.attributes[i].name for i in columns]
    if header != expected:
        raise CsvError(f"header mismatch: expected {','.join(expected)}", 1)

    records = []
    for lineno, raw in enumerate(lines[1:], start=2):
        raw = raw.rstrip("\r")
        if not raw.strip():
            continue
        cells = raw.split(",")
        if len(cells) != len(columns):
            raise CsvError(f"arity mismatch: expected {len(columns)} cells, got {len(cells)}", lineno)
        values = [None] * len(schema.attributes)
        for col, cell in zip(columns, cells):
            values[col] = _parse_cell(schema, col, cell, lineno)
        problems = validate_record(schema, values, skip_class=not labeled)
        if problems:
            raise CsvError(problems[0].reason, lineno, problems[0].attribute)
        records.append(tuple(values))
    return records


def parse_csv(source: str | bytes | TextIO, schema: Schema) -> Dataset:
    """Parse CSV text (or a stream) into a validated dataset.

    Raises CsvError naming the offending line and column.
    """
    return Dataset._trusted(schema, _parse(source, schema, labeled=True))


def parse_unlabeled_csv(source, schema: Schema) -> list[tuple]:
    """Parse prediction inputs; the class column may be present or absent.

    Returned records always have full arity; an absent class slot is None.
    """
    text = "\n".join(_lines(source))
    header = text.split("\n", 1)[0].rstrip("\r").split(",")
    labeled = schema.class_attribute.name in header
    return _parse(text, schema, labeled)


def format_number(x: float) -> str:
    """Shortest decimal string that round-trips; integral values drop ".0"."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def write_csv(dataset: Dataset) -> str:
    schema = dataset.schema
    out = [",".join(schema.names)]
    for r in dataset.records:
        cells = []
        for spec, v in zip(schema.attributes, r):
            cells.append(spec.categories[v] if spec.is_nominal else format_number(v))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    noise_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise ValueError("noise_rate must be in [0, 1]")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


_RISK_FLAGS = ("Genetic", "Polyuria", "Excessive Thirst", "Hyper Tension")


def risk_score(schema: Schema, record) -> int:
    """Points for the fictional ground-truth rule (not a clinical claim)."""
    yes = lambda name: record[schema.index_of(name)] == 0  # noqa: E731  ("Yes" is category 0)
    score = sum(yes(name) for name in _RISK_FLAGS)
    score += record[schema.index_of("Age (Years)")] > 50
    score += record[schema.index_of("Weight (Kg's)")] > 60
    return int(score)


def rule_label(schema: Schema, record) -> int:
    return 0 if risk_score(schema, record) >= 3 else 1


def generate_synthetic(params: GeneratorParams, schema: Schema | None = None) -> Dataset:
    """Deterministic synthetic patients over the default schema.

    Draw order, one SplitMix64 stream seeded with ``params.seed``: for each
    record in turn, each non-class attribute in schema order takes one draw
    (nominal: ``below(#categories)``; numeric: ``lo + uniform01() * (hi - lo)``),
    then one ``uniform01()`` draw flips the rule label when below
    ``noise_rate``. The label is Yes iff the risk score is at least 3.
    """
    if schema is None:
        schema = schema_default()
    if schema != schema_default():
        raise DataError("synthetic generation requires the default diabetes schema")
    rng = SplitMix64(params.seed)
    cls = schema.class_index
    records = []
    for _ in range(params.n):
        values = [None] * len(schema.attributes)
        for i, spec in enumerate(schema.attributes):
            if i == cls:
                continue
            if spec.is_nominal:
                values[i] = rng.below(len(spec.categories))
            else:
                lo, hi = spec.numeric_range
                values[i] = lo + rng.uniform01() * (hi - lo)
        label = rule_label(schema, values)
        if rng.uniform01() < params.noise_rate:
            label = 1 - label
        values[cls] = label
        records.append(tuple(values))
    return Dataset(schema, records)
