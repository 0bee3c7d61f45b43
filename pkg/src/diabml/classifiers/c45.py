"""C4.5-style decision tree over nominal attributes (gain ratio, no pruning)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from ..data import Dataset

GAIN_EPS = 1e-12


@dataclass(frozen=True)
class C45Params:
    min_records_to_split: int = 2

    def __post_init__(self):
        if self.min_records_to_split < 2:
            raise ValueError("min_records_to_split must be >= 2")


@dataclass(frozen=True)
class SplitEvaluation:
    attribute_index: int
    info_gain: float
    split_info: float
    gain_ratio: float | None

    @property
    def eligible(self) -> bool:
        return self.split_info > 0


@dataclass(frozen=True)
class Leaf:
    label: int
    counts: tuple[int, ...]


@dataclass(frozen=True)
class Internal:
    attribute_index: int
    children: tuple[TreeNode, ...]
    majority: int


TreeNode = Union[Leaf, Internal]


def entropy(class_counts: Sequence[int]) -> float:
    """Shannon entropy in bits of a count vector (0 log 0 = 0)."""
    if any(c < 0 for c in class_counts):
        raise ValueError("counts must be non-negative")
    total = sum(class_counts)
    if total == 0:
        raise ValueError("entropy of an all-zero count vector is undefined")
    h = 0.0
    for c in class_counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return max(h, 0.0)


def majority(counts: Sequence[int]) -> int:
    # Ties go to the earliest category.
    return max(range(len(counts)), key=lambda i: (counts[i], -i))


def _class_counts(records, class_index: int, n_classes: int) -> list[int]:
    counts = [0] * n_classes
    for r in records:
        counts[r[class_index]] += 1
    return counts


def _evaluate(records, attribute_index: int, class_index: int, n_categories: int, n_classes: int) -> SplitEvaluation:
    table = [[0] * n_classes for _ in range(n_categories)]
    parent = [0] * n_classes
    for r in records:
        table[r[attribute_index]][r[class_index]] += 1
        parent[r[class_index]] += 1
    n = len(records)
    remainder = 0.0
    sizes = []
    for row in table:
        size = sum(row)
        sizes.append(size)
        if size:
            remainder += size / n * entropy(row)
    gain = entropy(parent) - remainder
    if gain < 0:
        if gain < -GAIN_EPS:
            raise ArithmeticError(f"negative information gain {gain}")
        gain = 0.0
    split_info = entropy(sizes)
    ratio = gain / split_info if split_info > 0 else None
    return SplitEvaluation(attribute_index, gain, split_info, ratio)


def evaluate_split(dataset: Dataset, attribute_index: int, class_index: int | None = None) -> SplitEvaluation:
    """Information gain, split info and gain ratio of splitting on one attribute."""
    schema = dataset.schema
    if class_index is None:
        class_index = schema.class_index
    if attribute_index == class_index:
        raise ValueError("the class attribute cannot be a split candidate")
    if not dataset.records:
        raise ValueError("cannot evaluate a split on no records")
    spec = schema.attributes[attribute_index]
    if not spec.is_nominal:
        raise ValueError(f"{spec.name} is not nominal")
    return _evaluate(
        dataset.records,
        attribute_index,
        class_index,
        len(spec.categories),
        len(schema.attributes[class_index].categories),
    )


def build_tree(dataset: Dataset, params: C45Params | None = None) -> TreeNode:
    params = params or C45Params()
    schema = dataset.schema
    if not dataset.records:
        raise ValueError("cannot build a tree from an empty dataset")
    if not schema.all_nominal:
        raise ValueError("decision tree training requires an all-nominal dataset")
    cls = schema.class_index
    n_classes = len(schema.class_names)
    n_cats = [len(a.categories) for a in schema.attributes]

    def grow(records, available: tuple[int, ...]) -> TreeNode:
        counts = _class_counts(records, cls, n_classes)
        label = majority(counts)
        if max(counts) == len(records) or len(records) < params.min_records_to_split:
            return Leaf(label, tuple(counts))
        best = None
        for a in available:
            ev = _evaluate(records, a, cls, n_cats[a], n_classes)
            if ev.eligible and (best is None or ev.gain_ratio > best.gain_ratio):
                best = ev
        if best is None:
            return Leaf(label, tuple(counts))
        a = best.attribute_index
        parts = [[] for _ in range(n_cats[a])]
        for r in records:
            parts[r[a]].append(r)
        rest = tuple(x for x in available if x != a)
        children = tuple(
            grow(part, rest) if part else Leaf(label, (0,) * n_classes) for part in parts
        )
        return Internal(a, children, label)

    return grow(list(dataset.records), tuple(schema.feature_indices))


def predict_tree(tree: TreeNode, record) -> int:
    node = tree
    while isinstance(node, Internal):
        v = record[node.attribute_index]
        if not isinstance(v, int) or not 0 <= v < len(node.children):
            return node.majority
        node = node.children[v]
    return node.label


def tree_depth(tree: TreeNode) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + max(tree_depth(c) for c in tree.children)


def tree_to_dict(tree: TreeNode) -> dict:
    if isinstance(tree, Leaf):
        return {"type": "leaf", "label": tree.label, "counts": list(tree.counts)}
    return {
        "type": "internal",
        "attribute": tree.attribute_index,
        "majority": tree.majority,
        "children": [tree_to_dict(c) for c in tree.children],
    }


def tree_from_dict(d: dict) -> TreeNode:
    if d["type"] == "leaf":
        return Leaf(int(d["label"]), tuple(int(c) for c in d["counts"]))
    if d["type"] == "internal":
        return Internal(int(d["attribute"]), tuple(tree_from_dict(c) for c in d["children"]), int(d["majority"]))
    raise ValueError(f"unknown node type {d['type']!r}")
