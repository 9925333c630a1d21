"""Classifier abstraction, parameter handling and the registry."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..distance import BagDistance, resolve_distance
from ..errors import BadParameter, DimensionMismatch, UnknownAlgorithm

_REGISTRY = {}


@dataclass(frozen=True)
class ComponentSpec:
    """Registry key plus raw parameters, as read from a config file.

    Parameter values are usually strings; each classifier converts its own.
    Nested components (``metric``, ``baseClassifier``) are ComponentSpecs.
    """

    key: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Prediction:
    bipartition: np.ndarray
    confidences: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bipartition, dtype=np.int8)
        c = np.asarray(self.confidences, dtype=np.float64)
        if b.shape != c.shape or b.ndim != 1:
            raise ValueError("bipartition and confidences must be equal-length vectors")
        object.__setattr__(self, "bipartition", b)
        object.__setattr__(self, "confidences", c)

    def __eq__(self, other):
        if not isinstance(other, Prediction):
            return NotImplemented
        return (np.array_equal(self.bipartition, other.bipartition)
                and np.array_equal(self.confidences, other.confidences))

    def __hash__(self):
        return hash(self.bipartition.tobytes())


# ---------------------------------------------------------------- parameters

def to_int(value):
    if isinstance(value, bool):
        raise ValueError("expected an integer")
    if isinstance(value, (int, np.integer)):
        return int(value)
    text = str(value).strip()
    return int(text)


def to_float(value):
    return float(str(value).strip()) if not isinstance(value, (int, float)) else float(value)


def to_bool(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    text = str(value).strip().lower()
    if text in ("true", "1", "yes"):
        return True
    if text in ("false", "0", "no"):
        return False
    raise ValueError("expected true or false")


def to_distance(value):
    if isinstance(value, BagDistance):
        return value
    if isinstance(value, ComponentSpec):
        extra = set(value.params) - {"normalize"}
        if extra:
            raise ValueError(f"unknown metric parameter(s) {sorted(extra)}")
        return resolve_distance(value.key, to_bool(value.params.get("normalize", False)))
    return resolve_distance(value)


def to_spec(value):
    if isinstance(value, ComponentSpec):
        return value
    if isinstance(value, str):
        return ComponentSpec(value, {})
    raise ValueError("expected a classifier specification")


def one_of(*choices):
    lowered = {c.lower(): c for c in choices}

    def convert(value):
        short = str(value).strip().rsplit(".", 1)[-1].replace("-", "").lower()
        if short not in lowered:
            raise ValueError(f"expected one of {', '.join(choices)}")
        return lowered[short]
    convert.__name__ = "one_of"
    return convert


@dataclass(frozen=True)
class Param:
    convert: object
    default: object = None
    minimum: object = None


# ---------------------------------------------------------------- registry

def register(cls):
    _REGISTRY[cls.key] = cls
    return cls


def registered_keys():
    return sorted(_REGISTRY)


def resolve_classifier(key):
    """Find a classifier class by registry key.

    Besides the exact key, the Java-style ``miml.classifiers.miml.lazy.MIMLkNN``
    form and a bare class name (``MIMLkNN``) are accepted.
    """
    key = str(key).strip()
    if key in _REGISTRY:
        return _REGISTRY[key]
    short = key.rsplit(".", 1)[-1]
    matches = [k for k in _REGISTRY if k.rsplit(".", 1)[-1] == short]
    if len(matches) == 1:
        return _REGISTRY[matches[0]]
    raise UnknownAlgorithm(f"unknown classifier {key!r}")


class MIMLClassifier:
    """Base class of every MIML learner.

    Subclasses declare ``key`` (registry key) and ``params`` (name ->
    :class:`Param`), implement ``_fit(ds)`` and ``_confidences(bags)``
    and may override ``_bipartition`` when their decision rule is not a
    plain threshold on the confidences.
    """

    key = None
    params = {}
    threshold = 0.5

    def __init__(self, **params):
        unknown = set(params) - set(self.params)
        if unknown:
            name = sorted(unknown)[0]
            raise BadParameter(
                f"{self.key}: unknown parameter <{name}>; "
                f"accepted: {', '.join(sorted(self.params)) or 'none'}")
        for name, p in self.params.items():
            if name in params and params[name] is not None:
                try:
                    value = p.convert(params[name])
                except (TypeError, ValueError) as exc:
                    raise BadParameter(
                        f"{self.key}: bad value {params[name]!r} for <{name}>: {exc}") from None
                if p.minimum is not None and value < p.minimum:
                    raise BadParameter(f"{self.key}: <{name}> must be >= {p.minimum}")
            else:
                value = p.default
            setattr(self, name, value)
        self.fitted_ = False

    def get_params(self):
        return {name: getattr(self, name) for name in self.params}

    def fit(self, ds):
        self.dim_ = ds.n_attributes
        self.label_names_ = ds.label_names
        self.n_labels_ = ds.n_labels
        self._fit(ds)
        self.fitted_ = True
        return self

    def _check_bags(self, bags):
        if not self.fitted_:
            raise RuntimeError(f"{self.key} has not been trained")
        for bag in bags:
            dim = getattr(bag, "dim", None)
            if dim is None:
                dim = np.atleast_2d(bag).shape[1]
            if dim != self.dim_:
                raise DimensionMismatch(
                    f"bag has {dim} attributes, model was trained on {self.dim_}")

    def _bipartition(self, conf):
        return (conf >= self.threshold).astype(np.int8)

    def predict_arrays(self, bags):
        """``(bipartitions, confidences)`` arrays of shape ``(n, q)``."""
        bags = list(bags)
        self._check_bags(bags)
        conf = np.asarray(self._confidences(bags), dtype=np.float64)
        return self._bipartition(conf), conf

    def predict(self, bags):
        bip, conf = self.predict_arrays(bags)
        return [Prediction(b, c) for b, c in zip(bip, conf)]

    def predict_bag(self, bag):
        return self.predict([bag])[0]

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


def build(spec):
    """Instantiate (untrained) the classifier named by a spec."""
    if not isinstance(spec, ComponentSpec):
        spec = to_spec(spec)
    cls = resolve_classifier(spec.key)
    return cls(**dict(spec.params))


def train(spec, ds):
    return build(spec).fit(ds)


def predict(model, bag):
    return model.predict_bag(bag)
