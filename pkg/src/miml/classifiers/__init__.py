"""MIML classifiers and their registry.

Registry keys are dotted names such as ``classifiers.lazy.MIMLkNN``; the
Java-style ``miml.classifiers.miml.lazy.MIMLkNN`` and bare class names
resolve to the same learner.
"""

from .base import (
    ComponentSpec,
    MIMLClassifier,
    Prediction,
    build,
    predict,
    registered_keys,
    resolve_classifier,
    train,
)
from .lazy import MIMLBRkNN, MIMLkNN, MIMLMAPkNN
from .meta import MIMLBagging
from .wrappers import MIMLClassifierToMI, MIMLClassifierToML

__all__ = [
    "ComponentSpec",
    "MIMLClassifier",
    "Prediction",
    "build",
    "predict",
    "registered_keys",
    "resolve_classifier",
    "train",
    "MIMLkNN",
    "MIMLBRkNN",
    "MIMLMAPkNN",
    "MIMLBagging",
    "MIMLClassifierToML",
    "MIMLClassifierToMI",
]
