"""Neighbor search and voting primitives over precomputed distances.

Everything here works on distance matrices, so the same code serves bag
learners (Hausdorff distances) and the single-instance learners used
after a bag-to-vector transformation (Euclidean distances). Equal
distances are always ordered by training index.
"""

import numpy as np


def ranked(dist_row, exclude=None):
    """Training indices sorted by distance, ties by index; optionally drop one."""
    order = np.argsort(dist_row, kind="stable")
    if exclude is not None:
        order = order[order != exclude]
    return order


def nearest(dist_row, k, exclude=None):
    return ranked(dist_row, exclude)[:k]


def loo_neighbors(dist, k):
    """k nearest other training bags for every training bag, shape (m, k)."""
    return np.array([nearest(dist[i], k, exclude=i) for i in range(len(dist))],
                    dtype=np.int64).reshape(len(dist), k)


def citation_sets(dist, n_refs, n_citers):
    """References-plus-citers neighborhood of every training bag.

    Bag ``j`` cites bag ``i`` when ``i`` is among the ``n_citers`` nearest
    other bags of ``j``.
    """
    m = len(dist)
    top_citers = [set(nearest(dist[j], n_citers, exclude=j).tolist()) for j in range(m)]
    sets = []
    for i in range(m):
        refs = set(nearest(dist[i], n_refs, exclude=i).tolist())
        citers = {j for j in range(m) if j != i and i in top_citers[j]}
        sets.append(sorted(refs | citers))
    return sets


def citer_thresholds(dist, n_citers):
    """Distance from each training bag to its ``n_citers``-th nearest other bag."""
    m = len(dist)
    out = np.empty(m)
    for j in range(m):
        others = np.delete(dist[j], j)
        out[j] = np.sort(others)[n_citers - 1]
    return out


def query_citation_set(query_row, n_refs, thresholds):
    """Neighborhood of an unseen bag given its distances to the training bags.

    A training bag cites the query when the query is strictly closer than
    that bag's ``n_citers``-th neighbor: on equal distance the training
    bags, having lower indices, rank ahead of the query.
    """
    refs = set(nearest(query_row, n_refs).tolist())
    citers = set(np.flatnonzero(query_row < thresholds).tolist())
    return sorted(refs | citers)


def class_votes(neighbor_classes, n_classes):
    return np.bincount(np.asarray(neighbor_classes, dtype=np.int64), minlength=n_classes)
