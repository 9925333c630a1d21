"""Problem transformations.

``to_ml`` collapses every bag into one feature vector (a single-instance
multi-label problem). ``to_mi_br`` and ``to_mi_lp`` keep the bags and
reduce the label side to one binary problem per label, or to one
multiclass problem over the observed labelsets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter

ARITHMETIC = "Arithmetic"
GEOMETRIC = "Geometric"
MINMAX = "MinMax"
METHODS = (ARITHMETIC, GEOMETRIC, MINMAX)


def resolve_method(name):
    """Map ``transform.Arithmetic``, ``Min-Max``, ``minmax``... to a method name."""
    short = str(name).strip().rsplit(".", 1)[-1].replace("-", "").lower()
    for method in METHODS:
        if method.lower() == short:
            return method
    raise BadParameter(f"unknown bag transformation {name!r}")


@dataclass(frozen=True)
class MLDataset:
    features: np.ndarray
    labels: object  # LabelMatrix of the source dataset


@dataclass(frozen=True)
class MIDataset:
    bags: tuple
    targets: np.ndarray
    n_classes: int = 2


class LabelsetDictionary:
    """Bijection between observed labelsets and class ids (first-seen order)."""

    def __init__(self):
        self._ids = {}
        self._sets = []

    def encode(self, row, add=True):
        key = tuple(int(v) for v in row)
        if key not in self._ids:
            if not add:
                raise KeyError(f"labelset {key} was never seen")
            self._ids[key] = len(self._sets)
            self._sets.append(key)
        return self._ids[key]

    def decode(self, class_id):
        return np.array(self._sets[class_id], dtype=np.int8)

    def __len__(self):
        return len(self._sets)

    def as_matrix(self):
        return np.array(self._sets, dtype=np.int8)


def aggregate(instances, method):
    """Collapse an ``(n, d)`` instance matrix to one vector."""
    x = np.asarray(instances, dtype=np.float64)
    lo = x.min(axis=0)
    hi = x.max(axis=0)
    if method == ARITHMETIC:
        # rounding can push the mean of equal values just past them
        return np.clip(x.mean(axis=0), lo, hi)
    if method == GEOMETRIC:
        return (lo + hi) / 2.0
    if method == MINMAX:
        return np.concatenate([lo, hi])
    raise BadParameter(f"unknown bag transformation {method!r}")


def to_ml(ds, method=ARITHMETIC):
    method = resolve_method(method)
    features = np.vstack([aggregate(b.instances, method) for b in ds.bags])
    return MLDataset(features, ds.labels)


def to_mi_br(ds):
    """One binary MI dataset per label; the bag tuple is shared, not copied."""
    y = ds.y
    return [MIDataset(ds.bags, y[:, j].astype(np.int64), 2) for j in range(ds.n_labels)]


def to_mi_lp(ds):
    """One multiclass MI dataset whose classes are the distinct labelsets."""
    book = LabelsetDictionary()
    targets = np.array([book.encode(row) for row in ds.y], dtype=np.int64)
    return MIDataset(ds.bags, targets, len(book)), book
