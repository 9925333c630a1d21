"""Instance-based MIML learners working directly on bags.

* ``MIMLkNN``: citation neighborhoods (references and citers) turned into
  per-label count vectors, mapped to labels by a ridge least-squares
  linear model.
* ``MIMLBRkNN``: per-label vote among the k nearest bags.
* ``MIMLMAPkNN``: per-label maximum a posteriori rule over neighbor
  counts, with count likelihoods estimated by leave-one-out.
"""

from __future__ import annotations

import math

import numpy as np

from ..distance import BagDistance, attribute_ranges, cross_distances, pairwise_distances
from ..errors import BadParameter
from . import neighbors
from .base import MIMLClassifier, Param, register, to_distance, to_float, to_int

RIDGE = 1e-6
DEFAULT_K = 10


def default_neighbors(m):
    """Default reference/citer count: sqrt(m) rounded, at least 1."""
    return max(1, int(round(math.sqrt(m))))


def ridge_solve(v, t, eps=RIDGE):
    """``argmin_W ||V W - T||^2 + eps ||W||^2`` through the thin SVD of V."""
    u, s, vt = np.linalg.svd(np.asarray(v, dtype=np.float64), full_matrices=False)
    shrink = s / (s * s + eps)
    return vt.T @ (shrink[:, None] * (u.T @ np.asarray(t, dtype=np.float64)))


def mlknn_tables(neighbor_idx, y, k, smooth=1.0):
    """Priors and count likelihoods of the MAP kNN rule.

    ``neighbor_idx`` holds the leave-one-out k nearest neighbors of every
    training example. Returns ``(prior1, prior0, like1, like0)`` with the
    likelihoods indexed ``[label, count]``.
    """
    y = np.asarray(y, dtype=np.int64)
    m, q = y.shape
    counts = y[neighbor_idx].sum(axis=1)
    pos = y.sum(axis=0)
    prior1 = (smooth + pos) / (2 * smooth + m)
    prior0 = (smooth + (m - pos)) / (2 * smooth + m)
    c1 = np.zeros((q, k + 1))
    c0 = np.zeros((q, k + 1))
    for i in range(m):
        for l in range(q):
            if y[i, l]:
                c1[l, counts[i, l]] += 1
            else:
                c0[l, counts[i, l]] += 1
    like1 = (smooth + c1) / (smooth * (k + 1) + c1.sum(axis=1, keepdims=True))
    like0 = (smooth + c0) / (smooth * (k + 1) + c0.sum(axis=1, keepdims=True))
    return prior1, prior0, like1, like0


def mlknn_posterior(counts, tables):
    """Posterior probability of each label given neighbor counts ``(n, q)``."""
    prior1, prior0, like1, like0 = tables
    counts = np.asarray(counts, dtype=np.int64)
    labels = np.arange(counts.shape[1])
    p1 = prior1 * like1[labels, counts]
    p0 = prior0 * like0[labels, counts]
    return p1 / (p1 + p0)


class BagLearner(MIMLClassifier):
    """Shared plumbing for learners built on a bag distance."""

    def _setup_distance(self, ds):
        kind = self.metric
        self.bags_ = ds.bags
        self.y_ = np.asarray(ds.y, dtype=np.int64)
        self.ranges_ = attribute_ranges(ds.bags) if kind.normalize else None
        self.dist_ = pairwise_distances(kind, ds.bags, self.ranges_)

    def _query_distances(self, bags):
        return cross_distances(self.metric, bags, self.bags_, self.ranges_)


_METRIC = Param(to_distance, BagDistance())


def _resolve_k(learner, m, limit):
    k = learner.k
    if k is None:
        return max(1, min(DEFAULT_K, limit))
    if k > limit:
        raise BadParameter(f"{learner.key}: k={k} exceeds the {limit} usable training bags")
    return k


@register
class MIMLkNN(BagLearner):
    key = "classifiers.lazy.MIMLkNN"
    params = {
        "nReferences": Param(to_int, None, minimum=1),
        "nCiters": Param(to_int, None, minimum=1),
        "metric": _METRIC,
    }
    threshold = 0.0

    def _fit(self, ds):
        m = ds.n_bags
        if m < 2:
            raise BadParameter(f"{self.key}: needs at least two training bags")
        r = self.nReferences if self.nReferences is not None else min(default_neighbors(m), m - 1)
        c = self.nCiters if self.nCiters is not None else min(default_neighbors(m), m - 1)
        for name, value in (("nReferences", r), ("nCiters", c)):
            if value >= m:
                raise BadParameter(
                    f"{self.key}: {name}={value} must be smaller than the {m} training bags")
        self.n_refs_, self.n_citers_ = r, c
        self._setup_distance(ds)
        sets = neighbors.citation_sets(self.dist_, r, c)
        self.counts_ = np.array([self.y_[s].sum(axis=0) for s in sets], dtype=np.float64)
        self.weights_ = ridge_solve(self.counts_, 2.0 * self.y_ - 1.0)
        self.citer_thresholds_ = neighbors.citer_thresholds(self.dist_, c)

    def count_vectors(self, bags):
        dq = self._query_distances(bags)
        out = np.empty((len(bags), self.n_labels_))
        for i, row in enumerate(dq):
            members = neighbors.query_citation_set(row, self.n_refs_, self.citer_thresholds_)
            out[i] = self.y_[members].sum(axis=0)
        return out

    def _confidences(self, bags):
        return self.count_vectors(bags) @ self.weights_


@register
class MIMLBRkNN(BagLearner):
    key = "classifiers.lazy.MIMLBRkNN"
    params = {
        "k": Param(to_int, None, minimum=1),
        "metric": _METRIC,
    }

    def _fit(self, ds):
        self.k_ = _resolve_k(self, ds.n_bags, ds.n_bags)
        self._setup_distance(ds)

    def _confidences(self, bags):
        dq = self._query_distances(bags)
        idx = np.array([neighbors.nearest(row, self.k_) for row in dq])
        return self.y_[idx].sum(axis=1) / self.k_


@register
class MIMLMAPkNN(BagLearner):
    key = "classifiers.lazy.MIMLMAPkNN"
    params = {
        "k": Param(to_int, None, minimum=1),
        "smooth": Param(to_float, 1.0, minimum=0.0),
        "metric": _METRIC,
    }

    def _fit(self, ds):
        if ds.n_bags < 2:
            raise BadParameter(f"{self.key}: needs at least two training bags")
        if self.smooth <= 0:
            raise BadParameter(f"{self.key}: <smooth> must be positive")
        self.k_ = _resolve_k(self, ds.n_bags, ds.n_bags - 1)
        self._setup_distance(ds)
        loo = neighbors.loo_neighbors(self.dist_, self.k_)
        self.tables_ = mlknn_tables(loo, self.y_, self.k_, self.smooth)

    def _confidences(self, bags):
        dq = self._query_distances(bags)
        idx = np.array([neighbors.nearest(row, self.k_) for row in dq])
        return mlknn_posterior(self.y_[idx].sum(axis=1), self.tables_)
