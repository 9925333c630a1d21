"""Holdout and cross-validation evaluators."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .classifiers.base import ComponentSpec, build, resolve_classifier
from .errors import ConfigError, InvalidK, MIMLError
from .metrics import MACRO, EvaluationResult, check_measures, evaluate
from .partition import ITERATIVE, materialize_folds, partition

HOLDOUT_KEY = "evaluation.EvaluatorHoldout"
CV_KEY = "evaluation.EvaluatorCV"
EVALUATORS = (HOLDOUT_KEY, CV_KEY)


def resolve_evaluator(name):
    short = str(name).strip().rsplit(".", 1)[-1]
    for key in EVALUATORS:
        if key.rsplit(".", 1)[-1] == short:
            return key
    raise ConfigError(f"unknown evaluator {name!r}")


def _key(spec):
    key = spec.key if isinstance(spec, ComponentSpec) else str(spec)
    return resolve_classifier(key).key


def evaluate_holdout(spec, train, test, measures=None, per_label=False):
    """Train once on ``train``, predict every bag of ``test`` and score."""
    if train.schema != test.schema or train.label_names != test.label_names:
        raise MIMLError("train and test sets must share attributes and labels")
    measures = check_measures(measures)
    start = time.perf_counter()
    model = build(spec).fit(train)
    train_time = time.perf_counter() - start
    start = time.perf_counter()
    preds = model.predict(test.bags)
    test_time = time.perf_counter() - start
    result = evaluate(test.labels, preds, measures, per_label)
    result.train_time = train_time
    result.test_time = test_time
    result.dataset = test.relation_name
    result.algorithm = _key(spec)
    return result


def _annotate(exc, fold):
    try:
        wrapped = type(exc)(f"fold {fold}: {exc}")
    except Exception:
        return exc
    wrapped.fold = fold
    return wrapped


def _run_fold(spec, ds, fa, fold, measures, per_label):
    try:
        train, test = materialize_folds(ds, fa, fold)
        return evaluate_holdout(spec, train, test, measures, per_label)
    except MIMLError as exc:
        raise _annotate(exc, fold) from exc


def summarize(folds, measures, per_label):
    """Mean and sample standard deviation across fold results."""
    n = len(folds)
    mean, std, pl_mean, pl_std = {}, {}, {}, {}
    for name in measures:
        vals = np.array([f.measures[name] for f in folds])
        mean[name] = float(vals.mean())
        std[name] = float(vals.std(ddof=1)) if n > 1 else 0.0
    if per_label:
        for name in measures:
            if name in MACRO:
                vals = np.array([f.per_label[name] for f in folds])
                pl_mean[name] = vals.mean(axis=0)
                pl_std[name] = vals.std(axis=0, ddof=1) if n > 1 else np.zeros(vals.shape[1])
    return mean, std, pl_mean, pl_std


def evaluate_cv(spec, ds, k=5, seed=1, strategy=ITERATIVE, measures=None, per_label=False,
                n_jobs=1):
    """k-fold cross-validation.

    Folds can run on ``n_jobs`` threads; results are gathered in fold
    order so the outcome does not depend on ``n_jobs``.
    """
    k = int(k)
    if k < 2:
        raise InvalidK(f"cross-validation needs k >= 2, got {k}")
    measures = check_measures(measures)
    build(spec)  # reject a bad spec before partitioning
    fa = partition(ds, strategy, k, seed)
    if n_jobs and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            futures = [pool.submit(_run_fold, spec, ds, fa, i, measures, per_label)
                       for i in range(k)]
            folds = [f.result() for f in futures]
    else:
        folds = [_run_fold(spec, ds, fa, i, measures, per_label) for i in range(k)]
    mean, std, pl_mean, pl_std = summarize(folds, measures, per_label)
    return EvaluationResult(
        measures=mean,
        per_label=pl_mean,
        label_names=ds.label_names,
        train_time=sum(f.train_time for f in folds),
        test_time=sum(f.test_time for f in folds),
        folds=folds,
        std=std,
        per_label_std=pl_std,
        dataset=ds.relation_name,
        algorithm=_key(spec),
    )
