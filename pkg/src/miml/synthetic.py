"""Small synthetic MIML datasets for demos and tests."""

from __future__ import annotations

import numpy as np

from .data import AttributeSchema, Bag, LabelMatrix, MIMLDataset

BIRD_SPECIES = ("brown_creeper", "pacific_wren", "varied_thrush", "hermit_thrush",
                "swainsons_thrush")


def make_birds_like(n_bags=30, n_features=6, seed=0, label_rates=(0.5, 0.35, 0.25, 0.15, 0.1),
                    label_names=BIRD_SPECIES, max_instances=6, decimals=4):
    """Recording-style bags: each bag is a set of segments (instances).

    Every species has a prototype feature vector; a bag carrying the
    species holds one or more segments drawn around that prototype, and
    every bag also holds background-noise segments. Label frequencies
    follow ``label_rates`` so the set is mildly imbalanced.
    """
    rng = np.random.default_rng(seed)
    q = len(label_names)
    prototypes = rng.normal(0.0, 3.0, size=(q, n_features))
    y = (rng.random((n_bags, q)) < np.asarray(label_rates)[:q]).astype(np.int8)
    for j in range(q):
        # every species occurs at least twice so stratified folds stay informative
        while y[:, j].sum() < 2:
            y[rng.integers(n_bags), j] = 1
    bags = []
    for i in range(n_bags):
        segments = []
        for j in np.flatnonzero(y[i]):
            for _ in range(rng.integers(1, 3)):
                segments.append(prototypes[j] + rng.normal(0.0, 0.7, n_features))
        n_noise = max(1, int(rng.integers(1, max_instances + 1)) - len(segments))
        for _ in range(n_noise):
            segments.append(rng.normal(0.0, 1.5, n_features))
        x = np.round(np.array(segments[:max_instances]), decimals)
        bags.append(Bag(f"rec{i:03d}", x))
    schema = AttributeSchema(tuple(f"f{j + 1}" for j in range(n_features)))
    return MIMLDataset(schema, tuple(bags), LabelMatrix(y, tuple(label_names)), "miml_birds")


def random_dataset(rng, max_bags=20, max_dim=5, max_labels=4, max_instances=6, min_bags=1):
    """Random valid dataset for property tests (``rng``: numpy Generator)."""
    m = int(rng.integers(min_bags, max_bags + 1))
    d = int(rng.integers(1, max_dim + 1))
    q = int(rng.integers(2, max_labels + 1))
    bags = []
    for i in range(m):
        n = int(rng.integers(1, max_instances + 1))
        bags.append(Bag(f"b{i}", rng.normal(0.0, 10.0, size=(n, d))))
    y = rng.integers(0, 2, size=(m, q))
    return MIMLDataset(AttributeSchema(tuple(f"a{j}" for j in range(d))), tuple(bags),
                       LabelMatrix(y, tuple(f"l{j}" for j in range(q))), "random")
