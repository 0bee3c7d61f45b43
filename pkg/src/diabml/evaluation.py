"""Stratified cross-validation, confusion matrices and the four summary metrics."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from statistics import fmean
from typing import Sequence

from . import __version__
from .classifiers import ClassifierConfig, predict, train
from .data import Dataset, class_distribution
from .ingest import write_csv
from .rng import MASK64, SplitMix64, derive_seed

METRIC_NAMES = ("precision", "recall", "f_measure", "accuracy")


class EvaluationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def __add__(self, other: ConfusionMatrix) -> ConfusionMatrix:
        return ConfusionMatrix(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn)

    def transposed(self) -> ConfusionMatrix:
        """The same predictions scored with the other class as positive."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, fn=self.fp, tn=self.tp)


@dataclass(frozen=True)
class MetricSet:
    precision: float
    recall: float
    f_measure: float
    accuracy: float
    degenerate: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


def confusion(predicted: Sequence, actual: Sequence, positive=0) -> ConfusionMatrix:
    """Tally predictions against truth; ``positive`` names the positive label."""
    if len(predicted) != len(actual):
        raise ValueError(f"length mismatch: {len(predicted)} predictions, {len(actual)} labels")
    if not predicted:
        raise ValueError("cannot build a confusion matrix from no predictions")
    tp = fp = fn = tn = 0
    for p, a in zip(predicted, actual):
        if p == positive:
            if a == positive:
                tp += 1
            else:
                fp += 1
        elif a == positive:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp, fp, fn, tn)


def _ratio(num: float, den: float, name: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def metrics(cm: ConfusionMatrix) -> MetricSet:
    """Precision, recall, F-measure and accuracy; any 0/0 is 0 and flagged."""
    if cm.total == 0:
        raise ValueError("metrics of an empty confusion matrix are undefined")
    flags: list[str] = []
    precision = _ratio(cm.tp, cm.tp + cm.fp, "precision", flags)
    recall = _ratio(cm.tp, cm.tp + cm.fn, "recall", flags)
    f = _ratio(2 * recall * precision, precision + recall, "f_measure", flags)
    accuracy = (cm.tp + cm.tn) / cm.total
    return MetricSet(precision, recall, f, accuracy, tuple(flags))


def mean_metrics(sets: Sequence[MetricSet]) -> MetricSet:
    """Unweighted mean; a metric is flagged if it was degenerate in any input."""
    flags = {f for s in sets for f in s.degenerate}
    return MetricSet(
        *(fmean(getattr(s, name) for s in sets) for name in METRIC_NAMES),
        degenerate=tuple(n for n in METRIC_NAMES if n in flags),
    )


@dataclass(frozen=True)
class FoldPlan:
    n_folds: int
    assignment: tuple[int, ...]

    def test_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f != fold]


def stratified_folds(dataset: Dataset, n_folds: int, seed: int) -> FoldPlan:
    """Deal each class's shuffled records round-robin onto the folds.

    Classes are processed in category order; each is shuffled with a
    SplitMix64 seeded by ``seed ^ class_index``. The deal continues where
    the previous class stopped, which keeps fold sizes within one.
    """
    n = len(dataset.records)
    if n_folds < 2:
        raise ValueError(f"n_folds must be >= 2, got {n_folds}")
    if n_folds > n:
        raise ValueError(f"n_folds ({n_folds}) exceeds the record count ({n})")
    labels = dataset.labels()
    n_classes = len(dataset.schema.class_names)
    groups = [[i for i, y in enumerate(labels) if y == c] for c in range(n_classes)]
    empty = [dataset.schema.class_names[c] for c, g in enumerate(groups) if not g]
    if empty:
        raise ValueError(f"no records for class {', '.join(empty)}")
    assignment = [0] * n
    slot = 0
    for c, group in enumerate(groups):
        SplitMix64((seed ^ c) & MASK64).shuffle(group)
        for i in group:
            assignment[i] = slot % n_folds
            slot += 1
    return FoldPlan(n_folds, tuple(assignment))


@dataclass(frozen=True)
class FoldResult:
    fold: int
    test_indices: tuple[int, ...]
    confusion: ConfusionMatrix
    metrics: MetricSet


@dataclass(frozen=True)
class CvResult:
    config: ClassifierConfig
    seed: int
    plan: FoldPlan
    folds: tuple[FoldResult, ...]
    averaged: MetricSet
    pooled: ConfusionMatrix
    pooled_metrics: MetricSet
    # predictions[i] is the label predicted for record i while it was held out.
    predictions: tuple[int, ...] = field(default=())


def fold_seed(seed: int, fold: int) -> int:
    return derive_seed(seed, fold + 1)


def cross_validate(
    config: ClassifierConfig,
    dataset: Dataset,
    n_folds: int,
    seed: int,
    plan: FoldPlan | None = None,
) -> CvResult:
    if not dataset.schema.all_nominal:
        raise ValueError("cross-validation expects a discretized (all-nominal) dataset")
    if plan is None:
        plan = stratified_folds(dataset, n_folds, seed)
    elif plan.n_folds != n_folds or len(plan.assignment) != len(dataset.records):
        raise ValueError("fold plan does not match the dataset")
    cls = dataset.schema.class_index
    positive = 0
    predictions = [None] * len(dataset.records)
    folds = []
    for f in range(n_folds):
        test = plan.test_indices(f)
        try:
            model = train(config.with_seed(fold_seed(seed, f)), dataset.subset(plan.train_indices(f)))
        except (ValueError, ArithmeticError) as exc:
            raise EvaluationError(f"fold {f}: training failed: {exc}") from exc
        preds = [predict(model, dataset.records[i]) for i in test]
        for i, p in zip(test, preds):
            predictions[i] = p
        cm = confusion(preds, [dataset.records[i][cls] for i in test], positive)
        folds.append(FoldResult(f, tuple(test), cm, metrics(cm)))
    pooled = sum((fr.confusion for fr in folds), ConfusionMatrix())
    return CvResult(
        config=config,
        seed=seed,
        plan=plan,
        folds=tuple(folds),
        averaged=mean_metrics([fr.metrics for fr in folds]),
        pooled=pooled,
        pooled_metrics=metrics(pooled),
        predictions=tuple(predictions),
    )


@dataclass(frozen=True)
class DatasetFingerprint:
    records: int
    class_distribution: dict
    sha256: str


def fingerprint(dataset: Dataset) -> DatasetFingerprint:
    digest = hashlib.sha256(write_csv(dataset).encode("utf-8")).hexdigest()
    return DatasetFingerprint(len(dataset.records), class_distribution(dataset), digest)


@dataclass(frozen=True)
class ComparisonReport:
    tool_version: str
    generated_at: str
    dataset: DatasetFingerprint
    n_folds: int
    seed: int
    plan: FoldPlan
    rows: tuple[CvResult, ...]

    @property
    def ranking(self) -> list[str]:
        from .classifiers import DISPLAY_NAMES

        return [DISPLAY_NAMES[r.config.kind] for r in self.rows]


def compare_all(
    dataset: Dataset,
    n_folds: int,
    seed: int,
    configs: Sequence[ClassifierConfig],
    generated_at: str = "",
) -> ComparisonReport:
    """Cross-validate every config on one shared fold plan, best accuracy first."""
    if not configs:
        raise ValueError("compare_all needs at least one classifier config")
    plan = stratified_folds(dataset, n_folds, seed)
    rows = [cross_validate(c, dataset, n_folds, seed, plan) for c in configs]
    rows.sort(key=lambda r: -r.averaged.accuracy)  # stable: ties keep input order
    return ComparisonReport(__version__, generated_at, fingerprint(dataset), n_folds, seed, plan, tuple(rows))
