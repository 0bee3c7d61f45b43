from .api import (
    DEFAULT_CONFIGS,
    DISPLAY_NAMES,
    ClassifierConfig,
    Kind,
    ModelError,
    TrainedModel,
    model_from_json,
    model_to_json,
    predict,
    predict_label,
    train,
)
from .c45 import C45Params
from .knn import KnnParams
from .naive_bayes import NbParams
from .svm import SmoParams

__all__ = [
    "DEFAULT_CONFIGS",
    "DISPLAY_NAMES",
    "C45Params",
    "ClassifierConfig",
    "Kind",
    "KnnParams",
    "ModelError",
    "NbParams",
    "SmoParams",
    "TrainedModel",
    "model_from_json",
    "model_to_json",
    "predict",
    "predict_label",
    "train",
]
