"""Learners that solve a MIML problem through a transformation.

``MIMLClassifierToML`` turns every bag into one vector (arithmetic,
geometric or min-max aggregation) and runs a single-instance multi-label
kNN learner on the vectors. ``MIMLClassifierToMI`` keeps the bags and
reduces the labels with binary relevance (one binary problem per label)
or label powerset (one class per observed labelset), solved by a
citation-kNN or a SimpleMI-style learner.

Neighborhoods never depend on the targets, so the per-label problems of
binary relevance share one neighbor search; the outcome is the same as
training one base learner per label.
"""

from __future__ import annotations

import numpy as np

from ..distance import (BagDistance, attribute_ranges, cross_distances, instance_distances,
                        pairwise_distances)
from ..errors import BadParameter
from ..transform import ARITHMETIC, LabelsetDictionary, aggregate, resolve_method
from . import neighbors
from .base import MIMLClassifier, Param, register, one_of, to_distance, to_float, to_int
from .lazy import _resolve_k, default_neighbors, mlknn_posterior, mlknn_tables


def _lp_confidences(neighbor_sets, y, book, class_ids):
    """Winner labelset by vote (lowest class id on ties) plus per-label scores.

    Label ``l`` scores ``(1 + p_l) / 2`` when it belongs to the winning
    labelset and ``p_l / 2`` otherwise, ``p_l`` being the share of
    neighbors carrying it; the 0.5 threshold then reproduces the winner.
    """
    out = np.empty((len(neighbor_sets), y.shape[1]))
    for i, members in enumerate(neighbor_sets):
        votes = neighbors.class_votes(class_ids[members], len(book))
        winner = book.decode(int(np.argmax(votes)))
        share = y[members].mean(axis=0)
        out[i] = np.where(winner == 1, (1.0 + share) / 2.0, share / 2.0)
    return out


@register
class MIMLClassifierToML(MIMLClassifier):
    key = "classifiers.mimlTOml.MIMLClassifierToML"
    params = {
        "transformationMethod": Param(resolve_method, ARITHMETIC),
        "learner": Param(one_of("BRkNN", "LPkNN", "MLkNN"), "MLkNN"),
        "k": Param(to_int, None, minimum=1),
        "smooth": Param(to_float, 1.0),
    }

    def _vectors(self, bags):
        return np.vstack([aggregate(getattr(b, "instances", b), self.transformationMethod)
                          for b in bags])

    def _fit(self, ds):
        m = ds.n_bags
        self.y_ = np.asarray(ds.y, dtype=np.int64)
        self.features_ = self._vectors(ds.bags)
        if self.learner == "MLkNN":
            if m < 2:
                raise BadParameter(f"{self.key}: needs at least two training bags")
            if self.smooth <= 0:
                raise BadParameter(f"{self.key}: <smooth> must be positive")
            self.k_ = _resolve_k(self, m, m - 1)
            dist = instance_distances(self.features_, self.features_)
            loo = neighbors.loo_neighbors(dist, self.k_)
            self.tables_ = mlknn_tables(loo, self.y_, self.k_, self.smooth)
        else:
            self.k_ = _resolve_k(self, m, m)
        if self.learner == "LPkNN":
            self.book_ = LabelsetDictionary()
            self.class_ids_ = np.array([self.book_.encode(r) for r in self.y_])

    def _confidences(self, bags):
        dq = instance_distances(self._vectors(bags), self.features_)
        idx = np.array([neighbors.nearest(row, self.k_) for row in dq])
        if self.learner == "BRkNN":
            return self.y_[idx].sum(axis=1) / self.k_
        if self.learner == "MLkNN":
            return mlknn_posterior(self.y_[idx].sum(axis=1), self.tables_)
        return _lp_confidences(list(idx), self.y_, self.book_, self.class_ids_)


@register
class MIMLClassifierToMI(MIMLClassifier):
    key = "classifiers.mimlTOmi.MIMLClassifierToMI"
    params = {
        "transformationMethod": Param(one_of("BR", "LP"), "BR"),
        "learner": Param(one_of("CitationKNN", "SimpleMI"), "CitationKNN"),
        "nReferences": Param(to_int, None, minimum=1),
        "nCiters": Param(to_int, None, minimum=1),
        "metric": Param(to_distance, BagDistance()),
        "k": Param(to_int, None, minimum=1),
        "aggregation": Param(resolve_method, ARITHMETIC),
    }

    def _fit(self, ds):
        m = ds.n_bags
        self.y_ = np.asarray(ds.y, dtype=np.int64)
        if self.learner == "CitationKNN":
            if m < 2:
                raise BadParameter(f"{self.key}: needs at least two training bags")
            r = self.nReferences if self.nReferences is not None else min(default_neighbors(m), m - 1)
            c = self.nCiters if self.nCiters is not None else min(default_neighbors(m), m - 1)
            if r >= m or c >= m:
                raise BadParameter(
                    f"{self.key}: nReferences/nCiters must be smaller than the {m} training bags")
            self.n_refs_ = r
            self.bags_ = ds.bags
            self.ranges_ = attribute_ranges(ds.bags) if self.metric.normalize else None
            dist = pairwise_distances(self.metric, ds.bags, self.ranges_)
            self.citer_thresholds_ = neighbors.citer_thresholds(dist, c)
        else:
            self.k_ = _resolve_k(self, m, m)
            self.features_ = np.vstack([aggregate(b.instances, self.aggregation) for b in ds.bags])
        if self.transformationMethod == "LP":
            self.book_ = LabelsetDictionary()
            self.class_ids_ = np.array([self.book_.encode(r) for r in self.y_])

    def neighbor_sets(self, bags):
        if self.learner == "CitationKNN":
            dq = cross_distances(self.metric, bags, self.bags_, self.ranges_)
            return [np.array(neighbors.query_citation_set(row, self.n_refs_, self.citer_thresholds_),
                             dtype=np.int64) for row in dq]
        vectors = np.vstack([aggregate(getattr(b, "instances", b), self.aggregation) for b in bags])
        dq = instance_distances(vectors, self.features_)
        return [neighbors.nearest(row, self.k_) for row in dq]

    def _confidences(self, bags):
        sets = self.neighbor_sets(bags)
        if self.transformationMethod == "BR":
            return np.array([self.y_[s].mean(axis=0) for s in sets])
        return _lp_confidences(sets, self.y_, self.book_, self.class_ids_)
