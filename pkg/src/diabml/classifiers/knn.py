"""k-nearest neighbours with overlap (Hamming) distance over nominal attributes.

Brute-force scan; neighbour order is (distance, stored index) so results do
not depend on sort stability.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass

from ..data import Dataset


@dataclass(frozen=True)
class KnnParams:
    k: int = 5

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class KnnModel:
    records: tuple[tuple, ...]
    k: int
    class_index: int
    n_classes: int


def overlap_distance(a, b, class_index: int) -> int:
    """Number of non-class attributes on which two records differ."""
    if len(a) != len(b):
        raise ValueError("records have different arity")
    return sum(1 for i, (x, y) in enumerate(zip(a, b)) if i != class_index and x != y)


def train_knn(dataset: Dataset, params: KnnParams | None = None) -> KnnModel:
    params = params or KnnParams()
    if not dataset.records:
        raise ValueError("cannot train KNN on an empty dataset")
    if not dataset.schema.all_nominal:
        raise ValueError("KNN requires an all-nominal dataset")
    k = params.k
    if k > len(dataset.records):
        warnings.warn(f"k={k} exceeds training size {len(dataset.records)}; clamping", stacklevel=2)
        k = len(dataset.records)
    return KnnModel(dataset.records, k, dataset.schema.class_index, len(dataset.schema.class_names))


def neighbors(model: KnnModel, query) -> list[tuple[int, int]]:
    """The k nearest stored records as (index, distance), nearest first."""
    cls = model.class_index
    keyed = ((overlap_distance(r, query, cls), i) for i, r in enumerate(model.records))
    return [(i, d) for d, i in heapq.nsmallest(model.k, keyed)]


def vote(labels_and_distances, n_classes: int) -> int:
    """Majority label; ties go to the smaller summed distance, then the earlier class."""
    votes = [0] * n_classes
    dist = [0] * n_classes
    for label, d in labels_and_distances:
        votes[label] += 1
        dist[label] += d
    return min(range(n_classes), key=lambda c: (-votes[c], dist[c], c))


def predict_knn(model: KnnModel, query) -> int:
    cls = model.class_index
    return vote(((model.records[i][cls], d) for i, d in neighbors(model, query)), model.n_classes)
