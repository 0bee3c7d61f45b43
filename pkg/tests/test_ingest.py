import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diabml.data import DataError, Dataset, class_distribution, schema_default
from diabml.ingest import (
    CsvError,
    GeneratorParams,
    format_number,
    generate_synthetic,
    parse_csv,
    parse_unlabeled_csv,
    rule_label,
    write_csv,
)
from diabml.preprocess import discretize_dataset, discretized_schema

SCHEMA = schema_default()
HEADER = ",".join(SCHEMA.names)
ROW1 = "30,Male,65,Vegetarian,Yes,No,Yes,130,No,No,No,No,No,No,Yes,Yes"
ROW2 = "42.5,Female,50.25,Non-Vegetarian,No,No,No,80,Yes,Yes,Yes,Yes,Yes,Yes,No,No"


def test_parse_two_rows():
    d = parse_csv(f"{HEADER}\n{ROW1}\n{ROW2}\n", SCHEMA)
    assert len(d) == 2
    assert d.records[0][0] == 30.0
    assert d.records[1][1] == 1  # Female
    assert d.records[1][15] == 1  # No


def test_parse_accepts_bytes_and_streams_and_skips_blank_lines():
    text = f"{HEADER}\n\n{ROW1}\n\n"
    assert len(parse_csv(text.encode(), SCHEMA)) == 1
    assert len(parse_csv(io.StringIO(text), SCHEMA)) == 1


def test_header_mismatch():
    names = SCHEMA.names
    names[0], names[1] = names[1], names[0]
    with pytest.raises(CsvError, match="header mismatch"):
        parse_csv(",".join(names) + "\n" + ROW1, SCHEMA)


def test_unknown_category_names_row_and_column():
    bad = ROW1.replace("Vegetarian,Yes", "Vegetarian,Maybe")
    with pytest.raises(CsvError) as err:
        parse_csv(f"{HEADER}\n{ROW1}\n{bad}\n", SCHEMA)
    assert err.value.line == 3
    assert err.value.column == "Polyuria"
    assert "Maybe" in str(err.value)


def test_categories_are_case_sensitive():
    with pytest.raises(CsvError, match="unknown category"):
        parse_csv(f"{HEADER}\n{ROW1.replace('Male', 'male')}\n", SCHEMA)


@pytest.mark.parametrize("cell", ["abc", "", "1_0", "nan", "inf", "0x10"])
def test_unparseable_numeric(cell):
    with pytest.raises(CsvError) as err:
        parse_csv(f"{HEADER}\n{cell}{ROW1[2:]}\n", SCHEMA)
    assert err.value.column == "Age (Years)"
    assert err.value.line == 2


def test_arity_mismatch():
    with pytest.raises(CsvError, match="arity"):
        parse_csv(f"{HEADER}\n{ROW1},Yes\n", SCHEMA)


def test_out_of_range_aborts_parse():
    with pytest.raises(CsvError, match=r"outside \[1,100\]"):
        parse_csv(f"{HEADER}\n150{ROW1[2:]}\n", SCHEMA)


def test_write_empty_dataset():
    assert write_csv(Dataset(SCHEMA, [])) == HEADER + "\n"


def test_write_formats_decimals():
    d = parse_csv(f"{HEADER}\n{ROW2}\n", SCHEMA)
    line = write_csv(d).splitlines()[1]
    assert line.startswith("42.5,Female,50.25,")
    assert line == ROW2


@pytest.mark.parametrize("x, text", [(42.5, "42.5"), (42.0, "42"), (0.1, "0.1"), (1 / 3, "0.3333333333333333")])
def test_format_number(x, text):
    assert format_number(x) == text
    assert float(text) == x


def test_write_is_lf_without_trailing_separator():
    text = write_csv(generate_synthetic(GeneratorParams(5, 0.0, 1)))
    assert "\r" not in text
    assert not any(line.endswith(",") for line in text.splitlines())


@st.composite
def datasets(draw):
    records = []
    for _ in range(draw(st.integers(0, 8))):
        r = []
        for spec in SCHEMA.attributes:
            if spec.is_nominal:
                r.append(draw(st.integers(0, len(spec.categories) - 1)))
            else:
                lo, hi = spec.numeric_range
                r.append(draw(st.floats(lo, hi, allow_nan=False)))
        records.append(tuple(r))
    return Dataset(SCHEMA, records)


@given(datasets())
@settings(max_examples=60)
def test_csv_round_trip(d):
    assert parse_csv(write_csv(d), SCHEMA) == d


def test_round_trip_on_discretized_schema():
    d = discretize_dataset(generate_synthetic(GeneratorParams(30, 0.1, 3)))
    assert parse_csv(write_csv(d), discretized_schema()) == d


def test_unlabeled_parse_with_and_without_class_column():
    no_class = HEADER.rsplit(",", 1)[0]
    recs = parse_unlabeled_csv(f"{no_class}\n{ROW1.rsplit(',', 1)[0]}\n", SCHEMA)
    assert recs[0][15] is None and len(recs[0]) == 16
    recs = parse_unlabeled_csv(f"{HEADER}\n{ROW1}\n", SCHEMA)
    assert recs[0][15] == 0


def test_generator_params_invariants():
    with pytest.raises(ValueError):
        GeneratorParams(0)
    with pytest.raises(ValueError):
        GeneratorParams(5, 1.5)
    with pytest.raises(ValueError):
        GeneratorParams(5, 0.1, -1)


def test_generator_is_deterministic():
    p = GeneratorParams(200, 0.0, 42)
    assert write_csv(generate_synthetic(p)) == write_csv(generate_synthetic(p))
    assert generate_synthetic(p) != generate_synthetic(GeneratorParams(200, 0.0, 43))


def test_generator_frozen_prefix():
    # Pins the documented draw order so other implementations can match it.
    text = write_csv(generate_synthetic(GeneratorParams(2, 0.0, 42)))
    assert text.splitlines()[1:] == FROZEN_SEED42


FROZEN_SEED42 = [
    "74.4149229984105,Male,37.03912997934095,Vegetarian,Yes,No,Yes,170.09478150702552,"
    "Yes,No,Yes,Yes,No,No,No,Yes",
    "11.2538493322478,Male,15.74418036561442,Non-Vegetarian,No,Yes,No,142.97285523486465,"
    "Yes,Yes,No,No,No,No,No,No",
]


def test_noise_free_labels_follow_the_rule():
    d = generate_synthetic(GeneratorParams(300, 0.0, 5))
    assert all(r[15] == rule_label(SCHEMA, r) for r in d.records)


def test_noise_one_inverts_every_label():
    d = generate_synthetic(GeneratorParams(100, 1.0, 5))
    assert all(r[15] != rule_label(SCHEMA, r) for r in d.records)


def test_noise_rate_is_roughly_honoured():
    d = generate_synthetic(GeneratorParams(2000, 0.2, 9))
    flipped = sum(r[15] != rule_label(SCHEMA, r) for r in d.records)
    assert 0.17 < flipped / 2000 < 0.23


def _rule_from_csv_line(line: str) -> str:
    # Oracle: re-derive the label from the emitted text alone.
    cells = dict(zip(HEADER.split(","), line.split(",")))
    score = sum(cells[k] == "Yes" for k in ("Genetic", "Polyuria", "Excessive Thirst", "Hyper Tension"))
    score += float(cells["Age (Years)"]) > 50
    score += float(cells["Weight (Kg's)"]) > 60
    return "Yes" if score >= 3 else "No"


def test_class_counts_match_rule_recomputed_from_csv():
    d = generate_synthetic(GeneratorParams(1000, 0.0, 7))
    lines = write_csv(d).splitlines()[1:]
    expected = {"Yes": 0, "No": 0}
    for line in lines:
        expected[_rule_from_csv_line(line)] += 1
    assert class_distribution(d) == expected
    assert all(line.rsplit(",", 1)[1] == _rule_from_csv_line(line) for line in lines)


def test_generator_rejects_other_schemas():
    with pytest.raises(DataError):
        generate_synthetic(GeneratorParams(3), discretized_schema())
