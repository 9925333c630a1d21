"""Holdout and k-fold partitioning of MIML datasets.

Three strategies are available:

``random``
    Shuffle the bags and deal them out one by one.
``powerset``
    Group bags by their exact labelset, shuffle each group and deal each
    group across the parts, so every labelset is spread proportionally.
``iterative``
    Iterative stratification: the rarest label still carrying unassigned
    bags is handled first, each of its bags going to the part that still
    wants the most positives of that label.

All strategies are weighted partitions: k-fold CV uses ``k`` equal
weights, holdout uses ``(train_fraction, 1 - train_fraction)``. Dealing
always gives the next bag to the part with the largest remaining
deficit (target size minus current size), lowest part index on ties.
With equal weights this is plain round-robin.

Randomness comes from :class:`miml._rng.SeededRandom` (PCG64 raw stream),
seeded once per call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._rng import SeededRandom
from .data import select_bags
from .errors import InvalidFraction, InvalidK

RANDOM = "random"
POWERSET = "powerset"
ITERATIVE = "iterative"
STRATEGIES = (RANDOM, POWERSET, ITERATIVE)


def resolve_strategy(name):
    short = str(name).strip().rsplit(".", 1)[-1].lower()
    for suffix in ("partitioner", "stratification"):
        if short.endswith(suffix) and short != suffix:
            short = short[: -len(suffix)]
    if short not in STRATEGIES:
        raise ValueError(f"unknown partitioning strategy {name!r}; "
                         f"expected one of {', '.join(STRATEGIES)}")
    return short


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    k: int
    assignment: np.ndarray
    seed: int
    strategy: str = RANDOM

    def __post_init__(self):
        a = np.array(self.assignment, dtype=np.int64)
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)

    def fold_indices(self, fold):
        return np.flatnonzero(self.assignment == fold)

    def sizes(self):
        return np.bincount(self.assignment, minlength=self.k)

    def __eq__(self, other):
        if not isinstance(other, FoldAssignment):
            return NotImplemented
        return (self.k == other.k and self.seed == other.seed
                and self.strategy == other.strategy
                and np.array_equal(self.assignment, other.assignment))

    def __hash__(self):
        return hash((self.k, self.seed, self.strategy))


def _deal(targets, counts):
    """Index of the part with the largest remaining deficit, lowest index on ties."""
    deficit = targets - counts
    return int(np.argmax(deficit))


def _random(y, targets, rng):
    order = rng.shuffle(list(range(len(y))))
    counts = np.zeros(len(targets))
    out = np.empty(len(y), dtype=np.int64)
    for i in order:
        j = _deal(targets, counts)
        out[i] = j
        counts[j] += 1
    return out


def _powerset(y, targets, rng):
    groups = {}
    for i, row in enumerate(y):
        groups.setdefault(row.tobytes(), []).append(i)
    counts = np.zeros(len(targets))
    out = np.empty(len(y), dtype=np.int64)
    for members in groups.values():
        rng.shuffle(members)
        for i in members:
            j = _deal(targets, counts)
            out[i] = j
            counts[j] += 1
    return out


def _iterative(y, targets, rng):
    m, q = y.shape
    weights = targets / m
    capacity = targets.astype(np.float64).copy()
    # desired positives of each label per part
    desire = np.outer(weights, y.sum(axis=0).astype(np.float64))
    out = np.full(m, -1, dtype=np.int64)
    unassigned = np.ones(m, dtype=bool)

    def place(i, candidates):
        best = capacity[candidates].max()
        candidates = [c for c in candidates if capacity[c] == best]
        j = candidates[0] if len(candidates) == 1 else rng.choice(candidates)
        out[i] = j
        unassigned[i] = False
        capacity[j] -= 1
        desire[j] -= y[i]

    while unassigned.any():
        remaining = y[unassigned].sum(axis=0)
        if not remaining.any():
            for i in np.flatnonzero(unassigned):
                place(i, list(range(len(targets))))
            break
        # rarest label with unassigned positives; lowest index on ties
        label = int(np.argmin(np.where(remaining > 0, remaining, np.iinfo(np.int64).max)))
        for i in np.flatnonzero(unassigned & (y[:, label] == 1)):
            col = desire[:, label]
            top = col.max()
            place(i, [j for j in range(len(targets)) if col[j] == top])
    return out


_DISPATCH = {RANDOM: _random, POWERSET: _powerset, ITERATIVE: _iterative}


def weighted_partition(ds, strategy, weights, seed):
    """Assign every bag to one of ``len(weights)`` parts.

    Returns an int array of part ids. Part ``j`` aims at
    ``weights[j] * m`` bags.
    """
    strategy = resolve_strategy(strategy)
    weights = np.asarray(weights, dtype=np.float64)
    weights = weights / weights.sum()
    y = np.asarray(ds.y, dtype=np.int64)
    targets = weights * len(y)
    rng = SeededRandom(seed)
    return _DISPATCH[strategy](y, targets, rng)


def partition(ds, strategy=ITERATIVE, k=5, seed=1):
    """Split ``ds`` into ``k`` folds; returns a :class:`FoldAssignment`."""
    k = int(k)
    if k < 2 or k > ds.n_bags:
        raise InvalidK(f"k={k} folds needs 2 <= k <= {ds.n_bags} (number of bags)")
    strategy = resolve_strategy(strategy)
    assignment = weighted_partition(ds, strategy, np.ones(k), seed)
    return FoldAssignment(k, assignment, int(seed), strategy)


def split_holdout(ds, strategy=ITERATIVE, train_fraction=0.7, seed=1):
    """Two-part split; returns sorted ``(train_indices, test_indices)``."""
    f = float(train_fraction)
    m = ds.n_bags
    if not 0.0 < f < 1.0:
        raise InvalidFraction(f"train fraction must be in (0, 1), got {train_fraction}")
    if m * f < 1 or m * (1 - f) < 1:
        raise InvalidFraction(
            f"train fraction {f} leaves an empty part with {m} bags")
    parts = weighted_partition(ds, strategy, [f, 1.0 - f], seed)
    train = np.flatnonzero(parts == 0)
    test = np.flatnonzero(parts == 1)
    if not len(train) or not len(test):
        raise InvalidFraction(f"train fraction {f} leaves an empty part")
    return train, test


def materialize_folds(ds, fa, fold):
    """``(train, test)`` datasets for one fold; the test set is the fold itself."""
    if not 0 <= fold < fa.k:
        raise IndexError(f"fold {fold} out of range for k={fa.k}")
    if len(fa.assignment) != ds.n_bags:
        raise ValueError("fold assignment does not match the dataset size")
    test = np.flatnonzero(fa.assignment == fold)
    train = np.flatnonzero(fa.assignment != fold)
    return select_bags(ds, train), select_bags(ds, test)


def label_distribution_deviation(y, assignment, k):
    """Mean over labels and folds of ``|P(label | fold) - P(label)|``.

    Lower means the folds reproduce the overall label frequencies better.
    """
    y = np.asarray(y, dtype=np.float64)
    overall = y.mean(axis=0)
    dev = []
    for j in range(k):
        members = y[np.asarray(assignment) == j]
        if len(members):
            dev.append(np.abs(members.mean(axis=0) - overall))
    return float(np.mean(dev))
