import json

import pytest

from diabml.classifiers import (
    DEFAULT_CONFIGS,
    ClassifierConfig,
    Kind,
    KnnParams,
    ModelError,
    NbParams,
    model_from_json,
    model_to_json,
    predict,
    predict_label,
    train,
)
from diabml.data import Dataset, schema_default
from diabml.ingest import GeneratorParams, generate_synthetic
from diabml.preprocess import discretize_dataset, discretized_schema

from conftest import nominal_schema

DATA = discretize_dataset(generate_synthetic(GeneratorParams(80, 0.1, 21)))


def test_config_requires_matching_parameter_block():
    with pytest.raises(ModelError):
        ClassifierConfig(Kind.KNN)
    with pytest.raises(ModelError):
        ClassifierConfig(Kind.KNN, nb=NbParams())
    with pytest.raises(ModelError):
        ClassifierConfig(Kind.MAJORITY, knn=KnnParams())
    assert ClassifierConfig(Kind.KNN, knn=KnnParams(3)).params == KnnParams(3)


def test_config_dict_round_trip():
    for c in DEFAULT_CONFIGS:
        assert ClassifierConfig.from_dict(c.to_dict()) == c


def test_majority_baseline_and_tie_rule():
    d = Dataset(nominal_schema([2]), [(0, 1), (1, 1), (0, 0)])
    m = train(ClassifierConfig.default(Kind.MAJORITY), d)
    assert predict(m, (0, None)) == 1
    tie = Dataset(nominal_schema([2]), [(0, 1), (1, 0)])
    assert predict(train(ClassifierConfig.default(Kind.MAJORITY), tie), (1, None)) == 0


@pytest.mark.parametrize("config", DEFAULT_CONFIGS, ids=lambda c: c.kind.value)
@pytest.mark.filterwarnings("ignore:k=5 exceeds")
def test_single_class_training_predicts_that_class(config):
    d = Dataset(nominal_schema([2, 3]), [(0, 1, 1), (1, 2, 1), (1, 0, 1)])
    m = train(config, d)
    assert all(predict(m, (a, b, None)) == 1 for a in range(2) for b in range(3))


@pytest.mark.parametrize("config", DEFAULT_CONFIGS, ids=lambda c: c.kind.value)
def test_json_round_trip_preserves_predictions(config):
    m = train(config, DATA)
    back = model_from_json(model_to_json(m), expected_schema=discretized_schema())
    assert back.config == m.config
    assert [predict(back, r) for r in DATA.records] == [predict(m, r) for r in DATA.records]


def test_predict_label_uses_class_names():
    m = train(ClassifierConfig.default(Kind.C45), DATA)
    assert predict_label(m, DATA.records[0]) in ("Yes", "No")


def test_predict_rejects_mismatched_record():
    m = train(ClassifierConfig.default(Kind.NAIVE_BAYES), DATA)
    with pytest.raises(ModelError):
        predict(m, DATA.records[0][:-2])
    with pytest.raises(ModelError):
        predict(m, (9,) + DATA.records[0][1:])


def test_train_requires_nominal_non_empty_data():
    with pytest.raises(ValueError):
        train(ClassifierConfig.default(Kind.C45), generate_synthetic(GeneratorParams(5)))
    with pytest.raises(ValueError):
        train(ClassifierConfig.default(Kind.C45), Dataset(DATA.schema, []))


def test_model_loading_errors():
    text = model_to_json(train(ClassifierConfig.default(Kind.KNN), DATA))
    with pytest.raises(ModelError):
        model_from_json(text[: len(text) // 2])
    with pytest.raises(ModelError):
        model_from_json(text, expected_schema=schema_default())
    doc = json.loads(text)
    doc["format"] = "other/9"
    with pytest.raises(ModelError):
        model_from_json(json.dumps(doc))
    doc = json.loads(text)
    del doc["payload"]
    with pytest.raises(ModelError):
        model_from_json(json.dumps(doc))
