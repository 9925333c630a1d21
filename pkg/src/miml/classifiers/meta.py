"""Bagging ensemble over any registered MIML learner."""

from __future__ import annotations

import numpy as np

from .._rng import SeededRandom
from ..data import select_bags
from ..errors import BadParameter
from .base import MIMLClassifier, Param, build, register, to_bool, to_float, to_int, to_spec


@register
class MIMLBagging(MIMLClassifier):
    """Members are trained on resampled copies of the training set.

    Confidences are the mean of the members' confidences; a label is
    predicted relevant when at least half of the members predict it.
    With ``sampleWithReplacement`` off the sample is a sorted subset, so
    one member at 100% sees exactly the original training set.
    """

    key = "classifiers.meta.MIMLBagging"
    params = {
        "baseClassifier": Param(to_spec, None),
        "numClassifiers": Param(to_int, 10, minimum=1),
        "seed": Param(to_int, 1),
        "sampleWithReplacement": Param(to_bool, True),
        "samplePercentage": Param(to_float, 100.0),
    }

    def _sample(self, rng, m):
        n = int(round(m * self.samplePercentage / 100.0))
        if self.sampleWithReplacement:
            return [rng.below(m) for _ in range(max(n, 1))]
        n = min(max(n, 1), m)
        return sorted(rng.shuffle(list(range(m)))[:n])

    def _fit(self, ds):
        if self.baseClassifier is None:
            raise BadParameter(f"{self.key}: <baseClassifier> is required")
        if not 0 < self.samplePercentage <= (1e9 if self.sampleWithReplacement else 100):
            raise BadParameter(f"{self.key}: <samplePercentage> out of range")
        build(self.baseClassifier)  # fail fast on a bad base spec
        rng = SeededRandom(self.seed)
        self.members_ = []
        for _ in range(self.numClassifiers):
            idx = self._sample(rng, ds.n_bags)
            self.members_.append(build(self.baseClassifier).fit(select_bags(ds, idx)))

    def predict_arrays(self, bags):
        bags = list(bags)
        self._check_bags(bags)
        votes = np.zeros((len(bags), self.n_labels_))
        conf = np.zeros((len(bags), self.n_labels_))
        for member in self.members_:
            b, c = member.predict_arrays(bags)
            votes += b
            conf += c
        t = len(self.members_)
        bip = (votes * 2 >= t).astype(np.int8)
        return bip, conf / t

    def _confidences(self, bags):
        return self.predict_arrays(bags)[1]
