"""Run a parsed experiment configuration end to end."""

from __future__ import annotations

from .data import parse_dataset, select_bags
from .evaluation import CV_KEY, evaluate_cv, evaluate_holdout
from .partition import split_holdout
from .report import write_report


def load_data(cfg):
    """Datasets named by an evaluator config: ``(full,)`` or ``(train, test)``."""
    ev = cfg.evaluator
    if ev.train_file and ev.test_file:
        return parse_dataset(ev.train_file, ev.xml_file), parse_dataset(ev.test_file, ev.xml_file)
    return (parse_dataset(ev.data_file, ev.xml_file),)


def evaluate_config(cfg, datasets, n_jobs=1):
    ev = cfg.evaluator
    rep = cfg.report
    if ev.key == CV_KEY:
        (ds,) = datasets
        return evaluate_cv(cfg.classifier, ds, ev.num_folds, ev.seed, ev.strategy,
                           rep.measures, rep.per_label, n_jobs=n_jobs)
    if len(datasets) == 2:
        train, test = datasets
    else:
        (ds,) = datasets
        tr, te = split_holdout(ds, ev.strategy, ev.train_fraction, ev.seed)
        train, test = select_bags(ds, tr), select_bags(ds, te)
    return evaluate_holdout(cfg.classifier, train, test, rep.measures, rep.per_label)


def run_experiment(cfg, n_jobs=1, overwrite=False, output=None):
    """Load data, evaluate and write the report; returns ``(result, report path)``."""
    datasets = load_data(cfg)
    result = evaluate_config(cfg, datasets, n_jobs)
    path = write_report(result, output or cfg.report.file_name, cfg.report.measures,
                        cfg.report.per_label, overwrite=overwrite)
    return result, path
