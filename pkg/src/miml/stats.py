"""Descriptive statistics of a MIML dataset."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# keys printed by ``miml stats``, in output order
STAT_KEYS = (
    "num_bags",
    "num_labels",
    "num_attributes",
    "bag_size_min",
    "bag_size_max",
    "bag_size_mean",
    "cardinality",
    "density",
    "distinct_labelsets",
    "label_frequencies",
    "irlbl",
    "mean_ir",
    "cooccurrence",
)

ABSENT = "NA"


@dataclass(frozen=True)
class DatasetStats:
    num_bags: int
    num_labels: int
    num_attributes: int
    bag_size_min: int
    bag_size_max: int
    bag_size_mean: float
    cardinality: float
    density: float
    distinct_labelsets: int
    label_frequencies: tuple
    cooccurrence: np.ndarray
    irlbl: tuple  # None where the label never occurs
    mean_ir: float

    def as_text(self):
        """Flat ``key=value`` block, one line per key in :data:`STAT_KEYS`."""
        lines = []
        for key in STAT_KEYS:
            value = getattr(self, key)
            if key == "irlbl":
                text = ",".join(ABSENT if v is None else repr(v) for v in value)
            elif key == "label_frequencies":
                text = ",".join(str(v) for v in value)
            elif key == "cooccurrence":
                text = ";".join(",".join(str(int(v)) for v in row) for row in value)
            else:
                text = repr(value)
            lines.append(f"{key}={text}")
        return "\n".join(lines) + "\n"


def label_stats(y):
    """Label-only statistics of a binary ``(m, q)`` matrix as a dict."""
    y = np.asarray(y, dtype=np.int64)
    m, q = y.shape
    freq = y.sum(axis=0)
    cardinality = float(y.sum()) / m
    top = int(freq.max())
    irlbl = tuple(top / int(f) if f > 0 else None for f in freq)
    present = [v for v in irlbl if v is not None]
    # no positive label anywhere: every ratio is undefined, report the neutral 1
    mean_ir = float(np.mean(present)) if present else 1.0
    return {
        "cardinality": cardinality,
        "density": cardinality / q,
        "distinct_labelsets": len({row.tobytes() for row in y}),
        "label_frequencies": tuple(int(f) for f in freq),
        "cooccurrence": y.T @ y,
        "irlbl": irlbl,
        "mean_ir": mean_ir,
    }


def compute_stats(ds):
    sizes = np.array([b.n_instances for b in ds.bags])
    return DatasetStats(
        num_bags=ds.n_bags,
        num_labels=ds.n_labels,
        num_attributes=ds.n_attributes,
        bag_size_min=int(sizes.min()),
        bag_size_max=int(sizes.max()),
        bag_size_mean=float(sizes.mean()),
        **label_stats(ds.y),
    )
