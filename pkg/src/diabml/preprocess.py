"""Fixed-bin discretization of Age, Weight and Blood Pressure.

Bins are contiguous half-open intervals over the reals:

    Age:    (-inf, 25] Young, (25, 50] Adult, (50, inf) Old
    Weight: (-inf, 40] Underweight, (40, 60] Normal, (60, inf) Overweight
    BP:     (-inf, 80) Low, [80, 120] Normal, (120, inf) High

Ages under 10 fold into Young.
"""

from __future__ import annotations

from enum import Enum

from .data import AttributeSpec, DataError, Dataset, Schema, schema_default

AGE = "Age (Years)"
WEIGHT = "Weight (Kg's)"
BLOOD_PRESSURE = "Blood Pressure (mmHg)"


class AgeBand(Enum):
    YOUNG = "Young"
    ADULT = "Adult"
    OLD = "Old"


class WeightBand(Enum):
    UNDERWEIGHT = "Underweight"
    NORMAL = "Normal"
    OVERWEIGHT = "Overweight"


class BpBand(Enum):
    LOW = "Low"
    NORMAL = "Normal"
    HIGH = "High"


def _check_range(what: str, x: float, lo: float, hi: float) -> None:
    if not lo <= x <= hi:
        raise DataError(f"{what} {x} outside [{lo:g}, {hi:g}]")


def discretize_age(age: float) -> AgeBand:
    _check_range("age", age, 1, 100)
    if age <= 25:
        return AgeBand.YOUNG
    if age <= 50:
        return AgeBand.ADULT
    return AgeBand.OLD


def discretize_weight(kg: float) -> WeightBand:
    _check_range("weight", kg, 5, 120)
    if kg <= 40:
        return WeightBand.UNDERWEIGHT
    if kg <= 60:
        return WeightBand.NORMAL
    return WeightBand.OVERWEIGHT


def discretize_bp(mmhg: float) -> BpBand:
    _check_range("blood pressure", mmhg, 50, 200)
    if mmhg < 80:
        return BpBand.LOW
    if mmhg <= 120:
        return BpBand.NORMAL
    return BpBand.HIGH


_BINNERS = {
    AGE: (discretize_age, AgeBand),
    WEIGHT: (discretize_weight, WeightBand),
    BLOOD_PRESSURE: (discretize_bp, BpBand),
}


def discretized_schema() -> Schema:
    """The all-nominal schema derived from the default one.

    The three numeric attributes keep their names and positions; their
    categories are the band names in enum order.
    """
    attrs = []
    for spec in schema_default().attributes:
        if spec.name in _BINNERS:
            band = _BINNERS[spec.name][1]
            spec = AttributeSpec.nominal(spec.name, *(b.value for b in band))
        attrs.append(spec)
    return Schema(tuple(attrs), schema_default().class_index)


def discretize_record(schema: Schema, record) -> tuple:
    """Map one default-schema record (class slot may be None) to the derived schema."""
    out = list(record)
    for i, spec in enumerate(schema.attributes):
        if spec.name in _BINNERS:
            fn, band = _BINNERS[spec.name]
            out[i] = list(band).index(fn(record[i]))
    return tuple(out)


def discretize_dataset(dataset: Dataset) -> Dataset:
    if dataset.schema != schema_default():
        raise DataError("discretization requires the default (numeric) diabetes schema")
    records = [discretize_record(dataset.schema, r) for r in dataset.records]
    return Dataset._trusted(discretized_schema(), records)
