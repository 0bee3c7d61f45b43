"""Uniform train/predict contract over the four classifiers and a majority baseline."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any

from ..data import Dataset, Schema, validate_record
from . import c45, knn, naive_bayes, svm
from .c45 import C45Params
from .knn import KnnParams
from .naive_bayes import NbParams
from .svm import SmoParams

MODEL_FORMAT = "diabml-model/1"


class ModelError(ValueError):
    """Bad configuration, a malformed model document, or a schema mismatch."""


class Kind(str, Enum):
    C45 = "C45"
    NAIVE_BAYES = "NaiveBayes"
    KNN = "Knn"
    SVM = "Svm"
    MAJORITY = "MajorityBaseline"


_PARAM_FIELD = {Kind.C45: "c45", Kind.NAIVE_BAYES: "nb", Kind.KNN: "knn", Kind.SVM: "svm"}
_PARAM_TYPE = {Kind.C45: C45Params, Kind.NAIVE_BAYES: NbParams, Kind.KNN: KnnParams, Kind.SVM: SmoParams}


@dataclass(frozen=True)
class ClassifierConfig:
    kind: Kind
    c45: C45Params | None = None
    nb: NbParams | None = None
    knn: KnnParams | None = None
    svm: SmoParams | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        wanted = _PARAM_FIELD.get(self.kind)
        for name in _PARAM_FIELD.values():
            present = getattr(self, name) is not None
            if present != (name == wanted):
                raise ModelError(f"{self.kind.value} config must carry exactly the {wanted or 'no'} parameter block")

    @classmethod
    def default(cls, kind: Kind | str) -> ClassifierConfig:
        kind = Kind(kind)
        if kind is Kind.MAJORITY:
            return cls(kind)
        return cls(kind, **{_PARAM_FIELD[kind]: _PARAM_TYPE[kind]()})

    @property
    def params(self):
        name = _PARAM_FIELD.get(self.kind)
        return getattr(self, name) if name else None

    def with_seed(self, seed: int) -> ClassifierConfig:
        """Copy with the classifier-internal seed replaced (only SVM has one)."""
        if self.kind is Kind.SVM:
            return dataclasses.replace(self, svm=dataclasses.replace(self.svm, seed=seed))
        return self

    def to_dict(self) -> dict:
        p = self.params
        return {"kind": self.kind.value, "parameters": dataclasses.asdict(p) if p else {}}

    @classmethod
    def from_dict(cls, d: dict) -> ClassifierConfig:
        kind = Kind(d["kind"])
        if kind is Kind.MAJORITY:
            return cls(kind)
        return cls(kind, **{_PARAM_FIELD[kind]: _PARAM_TYPE[kind](**d.get("parameters", {}))})


# Default hyperparameters used by the CLI.
DEFAULT_CONFIGS = (
    ClassifierConfig.default(Kind.SVM),
    ClassifierConfig.default(Kind.NAIVE_BAYES),
    ClassifierConfig.default(Kind.KNN),
    ClassifierConfig.default(Kind.C45),
    ClassifierConfig.default(Kind.MAJORITY),
)

DISPLAY_NAMES = {
    Kind.SVM: "SVM",
    Kind.NAIVE_BAYES: "NB",
    Kind.KNN: "KNN",
    Kind.C45: "C4.5",
    Kind.MAJORITY: "Majority",
}


@dataclass(frozen=True)
class TrainedModel:
    config: ClassifierConfig
    schema: Schema
    payload: Any

    @property
    def kind(self) -> Kind:
        return self.config.kind


def train(config: ClassifierConfig, dataset: Dataset) -> TrainedModel:
    if not dataset.records:
        raise ValueError("cannot train on an empty dataset")
    if not dataset.schema.all_nominal:
        raise ValueError("classifiers require an all-nominal (discretized) dataset")
    kind = config.kind
    if kind is Kind.C45:
        payload = c45.build_tree(dataset, config.c45)
    elif kind is Kind.NAIVE_BAYES:
        payload = naive_bayes.train_nb(dataset, config.nb)
    elif kind is Kind.KNN:
        payload = knn.train_knn(dataset, config.knn)
    elif kind is Kind.SVM:
        payload = svm.train_svm(dataset, config.svm)
    else:
        payload = c45.majority(list(_class_counts(dataset)))
    return TrainedModel(config, dataset.schema, payload)


def _class_counts(dataset: Dataset):
    counts = [0] * len(dataset.schema.class_names)
    for label in dataset.labels():
        counts[label] += 1
    return counts


def predict(model: TrainedModel, record) -> int:
    """Predicted class category index; the record's class slot is ignored."""
    problems = validate_record(model.schema, record, skip_class=True)
    if problems:
        raise ModelError(f"record does not match the model schema: {problems[0]}")
    kind = model.kind
    if kind is Kind.C45:
        return c45.predict_tree(model.payload, record)
    if kind is Kind.NAIVE_BAYES:
        return naive_bayes.predict_nb(model.payload, record)
    if kind is Kind.KNN:
        return knn.predict_knn(model.payload, record)
    if kind is Kind.SVM:
        return svm.predict_svm(model.payload, model.schema, record)
    return model.payload


def predict_label(model: TrainedModel, record) -> str:
    return model.schema.class_names[predict(model, record)]


def _payload_to_dict(model: TrainedModel):
    kind = model.kind
    if kind is Kind.C45:
        return c45.tree_to_dict(model.payload)
    if kind is Kind.NAIVE_BAYES:
        return naive_bayes.nb_to_dict(model.payload)
    if kind is Kind.KNN:
        m = model.payload
        return {"k": m.k, "records": [list(r) for r in m.records]}
    if kind is Kind.SVM:
        return svm.svm_to_dict(model.payload)
    return {"label": model.payload}


def _payload_from_dict(kind: Kind, schema: Schema, d):
    if kind is Kind.C45:
        return c45.tree_from_dict(d)
    if kind is Kind.NAIVE_BAYES:
        return naive_bayes.nb_from_dict(d)
    if kind is Kind.KNN:
        records = tuple(tuple(int(v) for v in r) for r in d["records"])
        for r in records:
            if validate_record(schema, r):
                raise ModelError("stored KNN record does not match the model schema")
        return knn.KnnModel(records, int(d["k"]), schema.class_index, len(schema.class_names))
    if kind is Kind.SVM:
        return svm.svm_from_dict(d)
    return int(d["label"])


def model_to_json(model: TrainedModel) -> str:
    doc = {
        "format": MODEL_FORMAT,
        "kind": model.kind.value,
        "schema": model.schema.to_dict(),
        "parameters": model.config.to_dict()["parameters"],
        "payload": _payload_to_dict(model),
    }
    return json.dumps(doc, indent=2) + "\n"


def model_from_json(text: str, expected_schema: Schema | None = None) -> TrainedModel:
    """Load a model document; raises ModelError on any defect or schema mismatch."""
    try:
        doc = json.loads(text)
        if doc.get("format") != MODEL_FORMAT:
            raise ModelError(f"unsupported model format {doc.get('format')!r}")
        config = ClassifierConfig.from_dict({"kind": doc["kind"], "parameters": doc["parameters"]})
        schema = Schema.from_dict(doc["schema"])
        payload = _payload_from_dict(config.kind, schema, doc["payload"])
    except ModelError:
        raise
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ModelError(f"malformed model document: {exc}") from exc
    if expected_schema is not None and schema != expected_schema:
        raise ModelError("model was trained under a different schema")
    return TrainedModel(config, schema, payload)
