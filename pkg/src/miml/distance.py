"""Hausdorff-family distances between bags.

With ``e(x, B) = min_{y in B} ||x - y||`` (Euclidean):

* maximal:  ``max(max_{x in A} e(x, B), max_{y in B} e(y, A))``
* minimal:  ``min_{x in A, y in B} ||x - y||``
* average:  ``(sum_{x in A} e(x, B) + sum_{y in B} e(y, A)) / (|A| + |B|)``

Config files refer to the variants by registry key, e.g.
``distance.AverageHausdorff``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, DimensionMismatch, MissingRanges

AVERAGE = "AverageHausdorff"
MINIMAL = "MinimalHausdorff"
MAXIMAL = "MaximalHausdorff"
VARIANTS = (AVERAGE, MINIMAL, MAXIMAL)

REGISTRY = {f"distance.{v}": v for v in VARIANTS}


@dataclass(frozen=True)
class BagDistance:
    variant: str = AVERAGE
    normalize: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise BadParameter(f"unknown bag distance {self.variant!r}; "
                               f"expected one of {', '.join(VARIANTS)}")

    @property
    def key(self):
        return f"distance.{self.variant}"

    def __call__(self, a, b, ranges=None):
        return bag_distance(self, a, b, ranges)


def resolve_distance(name, normalize=False):
    """Accept ``AverageHausdorff``, ``distance.AverageHausdorff`` or any dotted
    path ending in a variant name (``miml.core.distance.AverageHausdorff``)."""
    short = str(name).strip().rsplit(".", 1)[-1]
    if short not in VARIANTS:
        raise BadParameter(f"unknown bag distance {name!r}")
    return BagDistance(short, bool(normalize))


def _instances(bag):
    x = getattr(bag, "instances", bag)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    return x


def attribute_ranges(bags):
    """Per-attribute ``(min, max)`` over all instances of ``bags``; shape ``(d, 2)``."""
    stacked = np.vstack([_instances(b) for b in bags])
    return np.column_stack([stacked.min(axis=0), stacked.max(axis=0)])


def normalize_instances(x, ranges):
    """Min-max scale columns of ``x`` into [0, 1]; constant attributes map to 0."""
    ranges = np.asarray(ranges, dtype=np.float64)
    lo, hi = ranges[:, 0], ranges[:, 1]
    width = hi - lo
    safe = np.where(width > 0, width, 1.0)
    return np.where(width > 0, (x - lo) / safe, 0.0)


def instance_distances(a, b):
    """Euclidean distances between the rows of two instance matrices."""
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def _prepare(kind, a, b, ranges):
    a = _instances(a)
    b = _instances(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(
            f"bags have {a.shape[1]} and {b.shape[1]} attributes")
    if kind.normalize:
        if ranges is None:
            raise MissingRanges("normalized distance needs per-attribute ranges")
        ranges = np.asarray(ranges, dtype=np.float64)
        if ranges.shape != (a.shape[1], 2):
            raise MissingRanges(
                f"expected ranges of shape ({a.shape[1]}, 2), got {ranges.shape}")
        a = normalize_instances(a, ranges)
        b = normalize_instances(b, ranges)
    return a, b


def _from_matrix(variant, dm):
    if variant == MINIMAL:
        return float(dm.min())
    row = dm.min(axis=1)
    col = dm.min(axis=0)
    if variant == MAXIMAL:
        return float(max(row.max(), col.max()))
    total = float(row.sum()) + float(col.sum())
    avg = total / (dm.shape[0] + dm.shape[1])
    # the mean of the e() terms lies between the minimal and maximal
    # distances; clamp away rounding so the ordering holds exactly
    lo = float(dm.min())
    hi = float(max(row.max(), col.max()))
    return min(max(avg, lo), hi)


def bag_distance(kind, a, b, ranges=None):
    """Distance between bags ``a`` and ``b`` (``Bag`` objects or arrays)."""
    if isinstance(kind, str):
        kind = resolve_distance(kind)
    a, b = _prepare(kind, a, b, ranges)
    return _from_matrix(kind.variant, instance_distances(a, b))


def cross_distances(kind, queries, references, ranges=None):
    """``len(queries) x len(references)`` matrix of bag distances."""
    if isinstance(kind, str):
        kind = resolve_distance(kind)
    out = np.empty((len(queries), len(references)))
    for i, q in enumerate(queries):
        for j, r in enumerate(references):
            out[i, j] = bag_distance(kind, q, r, ranges)
    return out


def pairwise_distances(kind, bags, ranges=None):
    """Symmetric ``m x m`` matrix of bag distances with a zero diagonal."""
    if isinstance(kind, str):
        kind = resolve_distance(kind)
    m = len(bags)
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = bag_distance(kind, bags[i], bags[j], ranges)
    if m:
        # validates dimensions even for a single bag
        _prepare(kind, bags[0], bags[-1], ranges)
    return out
