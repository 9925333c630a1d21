"""Multi-label performance measures.

Measure names are the display strings used in config files and report
headers (see :data:`MEASURES`).

Conventions:

* A ratio whose denominator is zero scores 0, except when the example (or
  label) has neither true nor predicted positives: nothing to find and
  nothing claimed counts as a perfect 1.
* Ranking measures rank labels by confidence, tied labels sharing the
  mean of their ranks. Examples for which a ranking measure is undefined
  are skipped (no relevant label for one-error, coverage and average
  precision; no relevant or no irrelevant label for ranking loss). If no
  example qualifies the measure takes its best value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatch, UnknownMeasure

HAMMING_LOSS = "Hamming Loss"
SUBSET_ACCURACY = "Subset Accuracy"
EXAMPLE_PRECISION = "Example-Based Precision"
EXAMPLE_RECALL = "Example-Based Recall"
EXAMPLE_F = "Example-Based F Measure"
EXAMPLE_ACCURACY = "Example-Based Accuracy"
MACRO_PRECISION = "Macro-averaged Precision"
MACRO_RECALL = "Macro-averaged Recall"
MACRO_F = "Macro-averaged F-Measure"
MICRO_PRECISION = "Micro-averaged Precision"
MICRO_RECALL = "Micro-averaged Recall"
MICRO_F = "Micro-averaged F-Measure"
ONE_ERROR = "One-Error"
COVERAGE = "Coverage"
RANKING_LOSS = "Ranking Loss"
AVERAGE_PRECISION = "Average Precision"

EXAMPLE_BASED = (HAMMING_LOSS, SUBSET_ACCURACY, EXAMPLE_PRECISION, EXAMPLE_RECALL,
                 EXAMPLE_F, EXAMPLE_ACCURACY)
LABEL_BASED = (MACRO_PRECISION, MACRO_RECALL, MACRO_F, MICRO_PRECISION, MICRO_RECALL, MICRO_F)
RANKING = (ONE_ERROR, COVERAGE, RANKING_LOSS, AVERAGE_PRECISION)
MACRO = (MACRO_PRECISION, MACRO_RECALL, MACRO_F)

MEASURES = EXAMPLE_BASED + LABEL_BASED + RANKING


def check_measures(names):
    """Validate measure names; an empty selection means every measure."""
    names = list(names or ())
    unknown = [n for n in names if n not in MEASURES]
    if unknown:
        raise UnknownMeasure(f"unknown measure(s) {unknown}; known: {', '.join(MEASURES)}")
    return names or list(MEASURES)


@dataclass
class EvaluationResult:
    """Measure values for one run, or the fold mean of a cross-validation.

    For cross-validation ``folds`` holds one result per fold and ``std``
    / ``per_label_std`` the sample standard deviation across folds.
    """

    measures: dict
    per_label: dict = field(default_factory=dict)
    label_names: tuple = ()
    train_time: float = 0.0
    test_time: float = 0.0
    folds: list = field(default_factory=list)
    std: dict = field(default_factory=dict)
    per_label_std: dict = field(default_factory=dict)
    dataset: str = ""
    algorithm: str = ""

    def __getitem__(self, name):
        return self.measures[name]


def _ratio(num, den, empty):
    """num/den elementwise; 0 on zero denominators, 1 where ``empty``."""
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    out = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
    return np.where(empty, 1.0, out)


def _prf(tp, fp, fn):
    empty = (tp + fp + fn) == 0
    return (_ratio(tp, tp + fp, empty),
            _ratio(tp, tp + fn, empty),
            _ratio(2 * tp, 2 * tp + fp + fn, empty))


def _ranks(conf):
    """Rank 1 = highest confidence; ties get the mean of their ranks."""
    higher = (conf[None, :] > conf[:, None]).sum(axis=1)
    equal = (conf[None, :] == conf[:, None]).sum(axis=1)
    return higher + (equal + 1) / 2.0


def _ranking(truth, conf):
    one_err, cov, rloss, avgp = [], [], [], []
    q = truth.shape[1]
    for y, c in zip(truth, conf):
        rel = y == 1
        n_rel = int(rel.sum())
        if n_rel == 0:
            continue
        rank = _ranks(c)
        top = c == c.max()
        one_err.append(float(np.sum(top & ~rel)) / float(np.sum(top)))
        cov.append(float(rank[rel].max()) - 1.0)
        rel_conf = c[rel]
        precs = []
        for lc, lr in zip(rel_conf, rank[rel]):
            above = np.sum(rel_conf > lc) + (np.sum(rel_conf == lc) + 1) / 2.0
            precs.append(above / lr)
        avgp.append(float(np.mean(precs)))
        if n_rel < q:
            irr_conf = c[~rel]
            wrong = (rel_conf[:, None] < irr_conf[None, :]).sum()
            tied = (rel_conf[:, None] == irr_conf[None, :]).sum()
            rloss.append((wrong + 0.5 * tied) / (n_rel * (q - n_rel)))
    return {
        ONE_ERROR: float(np.mean(one_err)) if one_err else 0.0,
        COVERAGE: float(np.mean(cov)) if cov else 0.0,
        RANKING_LOSS: float(np.mean(rloss)) if rloss else 0.0,
        AVERAGE_PRECISION: float(np.mean(avgp)) if avgp else 1.0,
    }


def _as_arrays(truth, preds):
    t = np.asarray(getattr(truth, "values", truth), dtype=np.int64)
    if len(preds) != len(t):
        raise LengthMismatch(f"{len(preds)} predictions for {len(t)} examples")
    if len(preds):
        z = np.array([p.bipartition for p in preds], dtype=np.int64)
        c = np.array([p.confidences for p in preds], dtype=np.float64)
    else:
        z = np.zeros_like(t)
        c = np.zeros(t.shape)
    if z.shape != t.shape:
        raise LengthMismatch(f"predictions have shape {z.shape}, truth {t.shape}")
    return t, z, c


def compute_all(truth, bip, conf):
    """Every measure plus per-label vectors of the macro ones, from arrays."""
    t = np.asarray(truth, dtype=np.int64)
    z = np.asarray(bip, dtype=np.int64)
    conf = np.asarray(conf, dtype=np.float64)
    m, q = t.shape
    inter = (t & z).sum(axis=1)
    n_true = t.sum(axis=1)
    n_pred = z.sum(axis=1)
    union = (t | z).sum(axis=1)
    both_empty = union == 0
    values = {
        HAMMING_LOSS: float((t != z).sum()) / (m * q),
        SUBSET_ACCURACY: float(np.all(t == z, axis=1).mean()),
        EXAMPLE_PRECISION: float(_ratio(inter, n_pred, both_empty).mean()),
        EXAMPLE_RECALL: float(_ratio(inter, n_true, both_empty).mean()),
        EXAMPLE_F: float(_ratio(2 * inter, n_true + n_pred, both_empty).mean()),
        EXAMPLE_ACCURACY: float(_ratio(inter, union, both_empty).mean()),
    }
    tp = ((t == 1) & (z == 1)).sum(axis=0)
    fp = ((t == 0) & (z == 1)).sum(axis=0)
    fn = ((t == 1) & (z == 0)).sum(axis=0)
    p, r, f = _prf(tp, fp, fn)
    per_label = {MACRO_PRECISION: p, MACRO_RECALL: r, MACRO_F: f}
    values[MACRO_PRECISION] = float(p.mean())
    values[MACRO_RECALL] = float(r.mean())
    values[MACRO_F] = float(f.mean())
    mp, mr, mf = _prf(tp.sum(), fp.sum(), fn.sum())
    values[MICRO_PRECISION] = float(mp)
    values[MICRO_RECALL] = float(mr)
    values[MICRO_F] = float(mf)
    values.update(_ranking(t, conf))
    return values, per_label


def evaluate(truth, preds, measures=None, per_label=False):
    """Score predictions against a label matrix.

    ``measures`` selects measure names (all when empty); ``per_label``
    attaches per-label vectors for the selected macro measures.
    """
    names = check_measures(measures)
    t, z, c = _as_arrays(truth, preds)
    values, labels = compute_all(t, z, c)
    result = EvaluationResult({n: values[n] for n in names},
                              label_names=tuple(getattr(truth, "label_names", ())))
    if per_label:
        result.per_label = {n: labels[n].copy() for n in names if n in MACRO}
    return result
