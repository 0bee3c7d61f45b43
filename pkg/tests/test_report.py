import json

from diabml.classifiers import DEFAULT_CONFIGS
from diabml.evaluation import compare_all
from diabml.ingest import GeneratorParams, generate_synthetic
from diabml.preprocess import discretize_dataset
from diabml.report import (
    PUBLISHED_REFERENCE,
    TIMESTAMP_KEY,
    dumps_report,
    loads_report,
    plot_data_csv,
    render_table,
)

REPORT = compare_all(
    discretize_dataset(generate_synthetic(GeneratorParams(80, 0.1, 5))), 4, 2, DEFAULT_CONFIGS, "2026-01-01T00:00:00+00:00"
)


def test_json_round_trip():
    assert loads_report(dumps_report(REPORT)) == REPORT


def test_json_contents():
    doc = json.loads(dumps_report(REPORT))
    assert doc[TIMESTAMP_KEY] == "2026-01-01T00:00:00+00:00"
    assert doc["published_reference"] == PUBLISHED_REFERENCE
    assert doc["ranking"] == [r["classifier"] for r in doc["rows"]]
    assert doc["positive_class"] == "Yes"
    row = doc["rows"][0]
    assert set(row["averaged"]) >= {"precision", "recall", "f_measure", "accuracy", "degenerate"}


def test_plot_data_has_four_rows_per_classifier():
    lines = plot_data_csv(REPORT).splitlines()
    assert lines[0] == "classifier,metric,value"
    assert len(lines) == 1 + 20
    names = {line.split(",")[0] for line in lines[1:]}
    assert names == {"SVM", "NB", "KNN", "C4.5", "Majority"}
    assert all(0 <= float(line.split(",")[2]) <= 1 for line in lines[1:])


def test_table_lists_every_classifier_in_rank_order():
    text = render_table(REPORT)
    body = text.splitlines()[3:8]
    assert [line.split()[1] for line in body] == REPORT.ranking
