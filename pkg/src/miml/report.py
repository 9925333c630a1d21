"""CSV reports of evaluation results.

Columns: ``dataset``, ``algorithm``, ``fold``, then one column per
measure. With ``per_label`` every macro measure is followed by one
``<measure>[<label>]`` column per label. Cross-validation results give
one row per fold (``fold`` = 0..k-1) plus ``mean`` and ``std`` rows;
holdout results give a single row with fold ``holdout``.
"""

from __future__ import annotations

import csv
import io
import os

from .errors import ConfigError, UnknownMeasure
from .metrics import MACRO, check_measures

REPORT_KEY = "report.BaseMIMLReport"


def resolve_report(name):
    if str(name).strip().rsplit(".", 1)[-1] != REPORT_KEY.rsplit(".", 1)[-1]:
        raise ConfigError(f"unknown report {name!r}")
    return REPORT_KEY


def _fmt(value):
    return f"{float(value):.6f}"


def report_columns(measures, label_names, per_label):
    cols = []
    for name in measures:
        cols.append(name)
        if per_label and name in MACRO:
            cols.extend(f"{name}[{label}]" for label in label_names)
    return cols


def _row(measures, values, per_label_values, per_label):
    cells = []
    for name in measures:
        cells.append(_fmt(values[name]))
        if per_label and name in MACRO:
            cells.extend(_fmt(v) for v in per_label_values[name])
    return cells


def report_rows(result, measures=None, per_label=False):
    """Header plus data rows as lists of strings."""
    measures = check_measures(measures)
    missing = [n for n in measures if n not in result.measures]
    if missing:
        raise UnknownMeasure(f"measure(s) {missing} were not computed for this result")
    header = ["dataset", "algorithm", "fold"] + report_columns(
        measures, result.label_names, per_label)
    lead = [result.dataset, result.algorithm]
    rows = [header]
    if result.folds:
        for i, fold in enumerate(result.folds):
            rows.append(lead + [str(i)] + _row(measures, fold.measures, fold.per_label, per_label))
        rows.append(lead + ["mean"] + _row(measures, result.measures, result.per_label, per_label))
        rows.append(lead + ["std"] + _row(measures, result.std, result.per_label_std, per_label))
    else:
        rows.append(lead + ["holdout"] + _row(measures, result.measures, result.per_label,
                                              per_label))
    return rows


def format_report(result, measures=None, per_label=False):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(report_rows(result, measures, per_label))
    return buf.getvalue()


def write_report(result, path, measures=None, per_label=False, overwrite=False):
    """Write the CSV report; refuses to replace an existing file unless ``overwrite``."""
    text = format_report(result, measures, per_label)
    path = os.fspath(path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    mode = "w" if overwrite else "x"
    with open(path, mode, encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
