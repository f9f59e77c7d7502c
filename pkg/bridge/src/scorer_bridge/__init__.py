"""Sentiment scorer bridge: cleaned comment tables in, scored tables out."""

from .classifiers import (
    DEFAULT_MODEL,
    STUB_MODEL,
    TINY_MODEL,
    Classifier,
    StubClassifier,
    TinyTorchClassifier,
    load_model,
)
from .errors import BridgeError, ModelLoadError, SchemaError, UsageError
from .finetune import BridgeConfig, FinetuneReport, finetune, split_rows
from .formats import (
    CLEANED_HEADER,
    LABELED_HEADER,
    SCORE_HEADER,
    CleanedRow,
    LabeledComment,
    ScoredRow,
    read_cleaned,
    read_labeled,
    write_scored,
)

__version__ = "0.1.0"

__all__ = [
    "BridgeConfig",
    "BridgeError",
    "CLEANED_HEADER",
    "Classifier",
    "CleanedRow",
    "DEFAULT_MODEL",
    "FinetuneReport",
    "LABELED_HEADER",
    "LabeledComment",
    "ModelLoadError",
    "SCORE_HEADER",
    "STUB_MODEL",
    "SchemaError",
    "ScoredRow",
    "StubClassifier",
    "TINY_MODEL",
    "TinyTorchClassifier",
    "UsageError",
    "finetune",
    "load_model",
    "read_cleaned",
    "read_labeled",
    "split_rows",
    "write_scored",
]
