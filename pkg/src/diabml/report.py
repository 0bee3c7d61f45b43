"""Comparison report: JSON (stable keys), plot-data CSV and a console table."""

from __future__ import annotations

import json

from .classifiers import DISPLAY_NAMES, ClassifierConfig
from .evaluation import (
    METRIC_NAMES,
    ComparisonReport,
    ConfusionMatrix,
    CvResult,
    DatasetFingerprint,
    FoldPlan,
    FoldResult,
    MetricSet,
)

REPORT_FORMAT = "diabml-report/1"
TIMESTAMP_KEY = "generated_at"

# Published C4.5 figures for the original clinical dataset, which is not
# public; carried in every report for orientation and never asserted.
PUBLISHED_REFERENCE = {
    "classifier": "C4.5",
    "precision": 0.72,
    "recall": 0.74,
    "f_measure": 0.72,
    "accuracy": 0.735,
    "note": "reference only: measured on a private 200-patient dataset; not reproducible here",
}


def _metrics_to_dict(m: MetricSet) -> dict:
    d = m.as_dict()
    d["degenerate"] = list(m.degenerate)
    return d


def _metrics_from_dict(d: dict) -> MetricSet:
    return MetricSet(*(float(d[n]) for n in METRIC_NAMES), degenerate=tuple(d.get("degenerate", ())))


def _cm_to_dict(cm: ConfusionMatrix) -> dict:
    return {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn}


def _cm_from_dict(d: dict) -> ConfusionMatrix:
    return ConfusionMatrix(int(d["tp"]), int(d["fp"]), int(d["fn"]), int(d["tn"]))


def report_to_dict(report: ComparisonReport) -> dict:
    rows = []
    for r in report.rows:
        rows.append({
            "classifier": DISPLAY_NAMES[r.config.kind],
            "config": r.config.to_dict(),
            "averaged": _metrics_to_dict(r.averaged),
            "pooled_confusion": _cm_to_dict(r.pooled),
            "pooled_metrics": _metrics_to_dict(r.pooled_metrics),
            "folds": [
                {"fold": f.fold, "confusion": _cm_to_dict(f.confusion), "metrics": _metrics_to_dict(f.metrics)}
                for f in r.folds
            ],
            "predictions": list(r.predictions),
        })
    fp = report.dataset
    return {
        "format": REPORT_FORMAT,
        "tool_version": report.tool_version,
        TIMESTAMP_KEY: report.generated_at,
        "dataset": {
            "records": fp.records,
            "class_distribution": dict(fp.class_distribution),
            "sha256": fp.sha256,
        },
        "positive_class": next(iter(fp.class_distribution), None),
        "n_folds": report.n_folds,
        "seed": report.seed,
        "fold_assignment": list(report.plan.assignment),
        "ranking": report.ranking,
        "rows": rows,
        "published_reference": PUBLISHED_REFERENCE,
    }


def report_from_dict(d: dict) -> ComparisonReport:
    if d.get("format") != REPORT_FORMAT:
        raise ValueError(f"unsupported report format {d.get('format')!r}")
    plan = FoldPlan(int(d["n_folds"]), tuple(int(x) for x in d["fold_assignment"]))
    rows = []
    for r in d["rows"]:
        folds = tuple(
            FoldResult(
                int(f["fold"]),
                tuple(plan.test_indices(int(f["fold"]))),
                _cm_from_dict(f["confusion"]),
                _metrics_from_dict(f["metrics"]),
            )
            for f in r["folds"]
        )
        rows.append(CvResult(
            config=ClassifierConfig.from_dict(r["config"]),
            seed=int(d["seed"]),
            plan=plan,
            folds=folds,
            averaged=_metrics_from_dict(r["averaged"]),
            pooled=_cm_from_dict(r["pooled_confusion"]),
            pooled_metrics=_metrics_from_dict(r["pooled_metrics"]),
            predictions=tuple(int(p) for p in r["predictions"]),
        ))
    ds = d["dataset"]
    return ComparisonReport(
        tool_version=d["tool_version"],
        generated_at=d[TIMESTAMP_KEY],
        dataset=DatasetFingerprint(int(ds["records"]), dict(ds["class_distribution"]), ds["sha256"]),
        n_folds=plan.n_folds,
        seed=int(d["seed"]),
        plan=plan,
        rows=tuple(rows),
    )


def dumps_report(report: ComparisonReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def loads_report(text: str) -> ComparisonReport:
    return report_from_dict(json.loads(text))


def plot_data_csv(report: ComparisonReport) -> str:
    """One ``classifier,metric,value`` row per bar (averaged metrics)."""
    lines = ["classifier,metric,value"]
    for r in report.rows:
        name = DISPLAY_NAMES[r.config.kind]
        for metric, value in r.averaged.as_dict().items():
            lines.append(f"{name},{metric},{value!r}")
    return "\n".join(lines) + "\n"


def render_table(report: ComparisonReport) -> str:
    head = f"{'rank':>4}  {'classifier':<10}" + "".join(f"{m:>11}" for m in METRIC_NAMES) + "   tp  fp  fn  tn"
    out = [
        f"{report.n_folds}-fold stratified CV, seed {report.seed}, "
        f"{report.dataset.records} records {report.dataset.class_distribution}",
        head,
        "-" * len(head),
    ]
    for rank, r in enumerate(report.rows, 1):
        m = r.averaged
        cm = r.pooled
        flag = "*" if m.degenerate else " "
        out.append(
            f"{rank:>4}  {DISPLAY_NAMES[r.config.kind]:<10}"
            + "".join(f"{getattr(m, n):>11.4f}" for n in METRIC_NAMES)
            + f"{flag}{cm.tp:>4}{cm.fp:>4}{cm.fn:>4}{cm.tn:>4}"
        )
    if any(r.averaged.degenerate for r in report.rows):
        out.append("* some fold hit a 0/0 metric, counted as 0")
    return "\n".join(out) + "\n"
