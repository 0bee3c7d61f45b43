"""Typed tabular data model and the default diabetes schema.

A record is a plain tuple with one value per schema attribute: a ``float``
for numeric attributes and an ``int`` category index for nominal ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence, Union

Value = Union[float, int]
Record = tuple


class DataError(ValueError):
    """Raised when data does not conform to its schema."""


class Kind(str, Enum):
    NUMERIC = "Numeric"
    NOMINAL = "Nominal"


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: Kind
    numeric_range: tuple[float, float] | None = None
    categories: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind is Kind.NUMERIC:
            if self.numeric_range is None or self.categories is not None:
                raise DataError(f"{self.name}: numeric attribute needs a range and no categories")
            lo, hi = self.numeric_range
            if not lo <= hi:
                raise DataError(f"{self.name}: empty range [{lo}, {hi}]")
        else:
            if self.categories is None or self.numeric_range is not None:
                raise DataError(f"{self.name}: nominal attribute needs categories and no range")
            if len(self.categories) < 2:
                raise DataError(f"{self.name}: nominal attribute needs at least 2 categories")
            if len(set(self.categories)) != len(self.categories):
                raise DataError(f"{self.name}: duplicate category names")

    @classmethod
    def numeric(cls, name: str, lo: float, hi: float) -> AttributeSpec:
        return cls(name, Kind.NUMERIC, numeric_range=(float(lo), float(hi)))

    @classmethod
    def nominal(cls, name: str, *categories: str) -> AttributeSpec:
        return cls(name, Kind.NOMINAL, categories=tuple(categories))

    @property
    def is_nominal(self) -> bool:
        return self.kind is Kind.NOMINAL

    def category_index(self, name: str) -> int:
        try:
            return self.categories.index(name)
        except (ValueError, AttributeError):
            raise DataError(f"{self.name}: unknown category {name!r}") from None


@dataclass(frozen=True)
class Schema:
    attributes: tuple[AttributeSpec, ...]
    class_index: int

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise DataError("attribute names must be unique")
        if not 0 <= self.class_index < len(self.attributes):
            raise DataError("class_index out of range")
        if not self.attributes[self.class_index].is_nominal:
            raise DataError("class attribute must be nominal")

    def __len__(self) -> int:
        return len(self.attributes)

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    @property
    def class_attribute(self) -> AttributeSpec:
        return self.attributes[self.class_index]

    @property
    def class_names(self) -> tuple[str, ...]:
        return self.class_attribute.categories

    @property
    def feature_indices(self) -> list[int]:
        """Indices of all non-class attributes, in schema order."""
        return [i for i in range(len(self.attributes)) if i != self.class_index]

    @property
    def all_nominal(self) -> bool:
        return all(a.is_nominal for a in self.attributes)

    def index_of(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)

    def to_dict(self) -> dict:
        attrs = []
        for a in self.attributes:
            d = {"name": a.name, "kind": a.kind.value}
            if a.is_nominal:
                d["categories"] = list(a.categories)
            else:
                d["range"] = list(a.numeric_range)
            attrs.append(d)
        return {"attributes": attrs, "class_index": self.class_index}

    @classmethod
    def from_dict(cls, d: dict) -> Schema:
        attrs = []
        for a in d["attributes"]:
            if Kind(a["kind"]) is Kind.NOMINAL:
                attrs.append(AttributeSpec.nominal(a["name"], *a["categories"]))
            else:
                attrs.append(AttributeSpec.numeric(a["name"], *a["range"]))
        return cls(tuple(attrs), int(d["class_index"]))


_YES_NO = ("Yes", "No")


def schema_default() -> Schema:
    """The 16-attribute diabetes schema; "Diabetic" is the class."""
    yn = lambda name: AttributeSpec.nominal(name, *_YES_NO)  # noqa: E731
    return Schema(
        (
            AttributeSpec.numeric("Age (Years)", 1, 100),
            AttributeSpec.nominal("Sex", "Male", "Female"),
            AttributeSpec.numeric("Weight (Kg's)", 5, 120),
            AttributeSpec.nominal("Diet", "Vegetarian", "Non-Vegetarian"),
            yn("Polyuria"),
            yn("Water Consumption"),
            yn("Excessive Thirst"),
            AttributeSpec.numeric("Blood Pressure (mmHg)", 50, 200),
            yn("Hyper Tension"),
            yn("Tiredness"),
            yn("Problem in Vision"),
            yn("Kidney Problem"),
            yn("Hearing Loss"),
            yn("Itchy Skin"),
            yn("Genetic"),
            yn("Diabetic"),
        ),
        class_index=15,
    )


@dataclass(frozen=True)
class Violation:
    attribute: str | None
    reason: str

    def __str__(self):
        return f"{self.attribute}: {self.reason}" if self.attribute else self.reason


def _fmt(x: float) -> str:
    return repr(x).removesuffix(".0") if x == int(x) else repr(x)


def _value_violation(spec: AttributeSpec, v) -> str | None:
    if v is None:
        return "missing value"
    if isinstance(v, bool):
        return f"unexpected type {type(v).__name__}"
    if spec.is_nominal:
        if not isinstance(v, int):
            return f"expected a category index, got {type(v).__name__}"
        if not 0 <= v < len(spec.categories):
            return f"category index {v} out of bounds"
        return None
    if not isinstance(v, (int, float)):
        return f"expected a number, got {type(v).__name__}"
    if not math.isfinite(v):
        return "non-finite value"
    lo, hi = spec.numeric_range
    if not lo <= v <= hi:
        return f"outside [{_fmt(lo)},{_fmt(hi)}]"
    return None


def validate_record(schema: Schema, record, *, skip_class: bool = False) -> list[Violation]:
    """Check a record against the schema; an empty list means ok.

    Never raises. With ``skip_class`` the class slot may hold anything
    (used for unlabeled prediction inputs).
    """
    try:
        values = tuple(record)
    except TypeError:
        return [Violation(None, f"record is not a sequence ({type(record).__name__})")]
    if len(values) != len(schema.attributes):
        return [Violation(None, f"arity mismatch: expected {len(schema.attributes)} values, got {len(values)}")]
    out = []
    for i, (spec, v) in enumerate(zip(schema.attributes, values)):
        if skip_class and i == schema.class_index:
            continue
        reason = _value_violation(spec, v)
        if reason:
            out.append(Violation(spec.name, reason))
    return out


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    records: tuple[Record, ...] = field(default=())

    def __post_init__(self):
        recs = tuple(tuple(r) for r in self.records)
        for i, r in enumerate(recs):
            problems = validate_record(self.schema, r)
            if problems:
                raise DataError(f"record {i}: {problems[0]}")
        object.__setattr__(self, "records", recs)

    @classmethod
    def _trusted(cls, schema: Schema, records: Iterable[Record]) -> Dataset:
        # Skips validation; callers guarantee the records already conform.
        obj = object.__new__(cls)
        object.__setattr__(obj, "schema", schema)
        object.__setattr__(obj, "records", tuple(records))
        return obj

    def __len__(self) -> int:
        return len(self.records)

    def subset(self, indices: Sequence[int]) -> Dataset:
        return Dataset._trusted(self.schema, (self.records[i] for i in indices))

    def labels(self) -> list[int]:
        c = self.schema.class_index
        return [r[c] for r in self.records]


def class_distribution(dataset: Dataset) -> dict[str, int]:
    """Count of records per class category, every category present."""
    schema = dataset.schema
    counts = [0] * len(schema.class_names)
    for label in dataset.labels():
        counts[label] += 1
    return dict(zip(schema.class_names, counts))
