"""Detector packs; importing this package registers every rule."""

from mlsniff.detectors.base import RuleMatchContext
from mlsniff.detectors.data import detect_numpy, detect_pandas
from mlsniff.detectors.deeplearning import detect_pytorch, detect_tensorflow
from mlsniff.detectors.mlcore import detect_general_ml, detect_huggingface, detect_sklearn

__all__ = [
    "RuleMatchContext",
    "detect_general_ml",
    "detect_huggingface",
    "detect_numpy",
    "detect_pandas",
    "detect_pytorch",
    "detect_sklearn",
    "detect_tensorflow",
]
