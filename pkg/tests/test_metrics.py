import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from miml.classifiers import Prediction
from miml.errors import LengthMismatch, UnknownMeasure
from miml.metrics import (MACRO, MEASURES, RANKING, check_measures, compute_all, evaluate)

import oracles

LOSSES = ("Hamming Loss", "One-Error", "Coverage", "Ranking Loss")


def _preds(bip, conf):
    return [Prediction(np.asarray(b), np.asarray(c, dtype=float)) for b, c in zip(bip, conf)]


def test_single_example_hand_counts():
    r = evaluate(np.array([[1, 0, 1]]), _preds([[1, 1, 1]], [[0.9, 0.8, 0.7]]))
    assert r["Hamming Loss"] == pytest.approx(1 / 3, abs=1e-15)
    assert r["Micro-averaged Recall"] == 1.0
    assert r["Macro-averaged Precision"] == pytest.approx(2 / 3, abs=1e-15)


def test_perfect_predictions():
    truth = np.array([[1, 0, 1], [0, 1, 0], [0, 0, 1], [1, 0, 0]])
    conf = np.where(truth == 1, 0.9, 0.1)
    r = evaluate(truth, _preds(truth, conf))
    for name in MEASURES:
        if name in LOSSES:
            assert r[name] == 0.0 or name == "Coverage"
        else:
            assert r[name] == 1.0, name
    # row 0 has two tied relevant labels at mid-rank 1.5
    assert r["Coverage"] == 0.5 / 4


def test_all_wrong():
    truth = np.array([[1, 0, 1], [0, 1, 0]])
    r = evaluate(truth, _preds(1 - truth, np.zeros(truth.shape)))
    assert r["Hamming Loss"] == 1.0
    assert r["Subset Accuracy"] == 0.0


def test_unknown_measure_and_length():
    with pytest.raises(UnknownMeasure):
        check_measures(["Hamming loss"])
    with pytest.raises(LengthMismatch):
        evaluate(np.array([[1, 0], [0, 1]]), _preds([[1, 0]], [[1.0, 0.0]]))
    assert check_measures([]) == list(MEASURES)


def test_per_label_vectors():
    truth = np.array([[1, 0], [1, 1]])
    r = evaluate(truth, _preds([[1, 1], [0, 1]], [[1, 1], [0, 1]]),
                 ["Macro-averaged Recall", "Hamming Loss"], per_label=True)
    assert set(r.per_label) == {"Macro-averaged Recall"}
    np.testing.assert_array_equal(r.per_label["Macro-averaged Recall"], [0.5, 1.0])
    assert set(r.measures) == {"Macro-averaged Recall", "Hamming Loss"}


def _random_case(rng):
    m, q = int(rng.integers(1, 12)), int(rng.integers(2, 6))
    truth = (rng.random((m, q)) < 0.4).astype(int)
    bip = (rng.random((m, q)) < 0.4).astype(int)
    conf = np.round(rng.random((m, q)), 1)  # coarse grid so ties occur
    return truth, bip, conf


def test_matches_oracle(rng):
    for _ in range(200):
        truth, bip, conf = _random_case(rng)
        got, per = compute_all(truth, bip, conf)
        want, wper = oracles.metrics(truth.tolist(), bip.tolist(), conf.tolist())
        for name in MEASURES:
            assert got[name] == pytest.approx(want[name], abs=1e-12), name
        for key, name in zip("prf", MACRO):
            np.testing.assert_allclose(per[name], wper[key], rtol=0, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bounds_and_joint_permutation(seed):
    rng = np.random.default_rng(seed)
    truth, bip, conf = _random_case(rng)
    base, _ = compute_all(truth, bip, conf)
    for name in MEASURES:
        if name not in RANKING or name in ("One-Error", "Ranking Loss", "Average Precision"):
            assert 0.0 <= base[name] <= 1.0
    perm = rng.permutation(len(truth))
    moved, _ = compute_all(truth[perm], bip[perm], conf[perm])
    for name in MEASURES:
        assert moved[name] == pytest.approx(base[name], abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_ranking_measures_invariant_to_monotone_maps(seed):
    rng = np.random.default_rng(seed)
    truth, bip, conf = _random_case(rng)
    base, _ = compute_all(truth, bip, conf)
    warped, _ = compute_all(truth, bip, np.exp(3 * conf) - 7)
    for name in ("Ranking Loss", "One-Error"):
        assert warped[name] == base[name]


def test_micro_equals_macro_for_identical_label_counts():
    truth = np.array([[1, 1], [0, 0], [1, 1], [0, 0]])
    bip = np.array([[1, 1], [1, 1], [0, 0], [0, 0]])
    got, _ = compute_all(truth, bip, np.zeros(truth.shape))
    assert got["Micro-averaged F-Measure"] == got["Macro-averaged F-Measure"]
