"""Categorical Naive Bayes with additive smoothing, evaluated in log space."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..data import Dataset


@dataclass(frozen=True)
class NbParams:
    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")


@dataclass(frozen=True)
class NbModel:
    class_log_priors: tuple[float, ...]
    # conditional_log_probs[a][v][c] = log P(attribute a = v | class c);
    # the class attribute's slot is None.
    conditional_log_probs: tuple
    cardinalities: tuple[int, ...]
    class_index: int


def train_nb(dataset: Dataset, params: NbParams | None = None) -> NbModel:
    params = params or NbParams()
    schema = dataset.schema
    if not dataset.records:
        raise ValueError("cannot train Naive Bayes on an empty dataset")
    if not schema.all_nominal:
        raise ValueError("Naive Bayes requires an all-nominal dataset")
    alpha = params.alpha
    cls = schema.class_index
    n_classes = len(schema.class_names)
    cards = tuple(len(a.categories) for a in schema.attributes)

    class_counts = [0] * n_classes
    joint = [[[0] * n_classes for _ in range(k)] for k in cards]
    for r in dataset.records:
        c = r[cls]
        class_counts[c] += 1
        for a, v in enumerate(r):
            joint[a][v][c] += 1

    n = len(dataset.records)
    priors = tuple(math.log((class_counts[c] + alpha) / (n + alpha * n_classes)) for c in range(n_classes))
    conds = []
    for a, k in enumerate(cards):
        if a == cls:
            conds.append(None)
            continue
        conds.append(tuple(
            tuple(math.log((joint[a][v][c] + alpha) / (class_counts[c] + alpha * k)) for c in range(n_classes))
            for v in range(k)
        ))
    return NbModel(priors, tuple(conds), cards, cls)


def log_scores(model: NbModel, record) -> list[float]:
    scores = list(model.class_log_priors)
    for a, table in enumerate(model.conditional_log_probs):
        if table is None:
            continue
        row = table[record[a]]
        for c in range(len(scores)):
            scores[c] += row[c]
    return scores


def posterior(model: NbModel, record) -> list[float]:
    """Per-class posterior probabilities (max-shifted exp-normalization)."""
    scores = log_scores(model, record)
    top = max(scores)
    weights = [math.exp(s - top) for s in scores]
    total = math.fsum(weights)
    return [w / total for w in weights]


def predict_nb(model: NbModel, record) -> int:
    probs = posterior(model, record)
    return max(range(len(probs)), key=lambda c: (probs[c], -c))


def nb_to_dict(model: NbModel) -> dict:
    return {
        "class_priors": [math.exp(p) for p in model.class_log_priors],
        "conditionals": [
            None if t is None else [[math.exp(p) for p in row] for row in t]
            for t in model.conditional_log_probs
        ],
        "cardinalities": list(model.cardinalities),
        "class_index": model.class_index,
    }


def nb_from_dict(d: dict) -> NbModel:
    return NbModel(
        tuple(math.log(p) for p in d["class_priors"]),
        tuple(
            None if t is None else tuple(tuple(math.log(p) for p in row) for row in t)
            for t in d["conditionals"]
        ),
        tuple(int(k) for k in d["cardinalities"]),
        int(d["class_index"]),
    )
