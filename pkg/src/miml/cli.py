"""Command-line interface.

    miml run -c <config> [--jobs N] [--overwrite] [--output PATH]
    miml stats <arff> <xml>
    miml partition <arff> <xml> --strategy S --k K --seed N --out DIR

Exit codes: 0 success, 1 usage, 2 configuration error, 3 data error,
4 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import parse_config
from .data import parse_dataset, write_dataset
from .errors import ConfigError, DataError, MIMLError
from .partition import STRATEGIES, materialize_folds, partition
from .runner import evaluate_config, load_data
from .report import write_report
from .stats import compute_stats

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_DATA, EXIT_RUNTIME = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fail(stage, exc, code):
    print(f"miml: {stage} error [{type(exc).__name__}]: {exc}", file=sys.stderr)
    return code


def _classify(exc, default):
    if isinstance(exc, ConfigError):
        return "config", EXIT_CONFIG
    if isinstance(exc, DataError):
        return "data", EXIT_DATA
    return default


def cmd_run(args):
    try:
        cfg = parse_config(args.config)
    except (MIMLError, OSError) as exc:
        return _fail("config", exc, EXIT_CONFIG)
    try:
        datasets = load_data(cfg)
    except (MIMLError, OSError) as exc:
        stage, code = _classify(exc, ("data", EXIT_DATA))
        return _fail(stage, exc, code)
    try:
        result = evaluate_config(cfg, datasets, n_jobs=args.jobs)
    except MIMLError as exc:
        stage, code = _classify(exc, ("evaluation", EXIT_RUNTIME))
        return _fail(stage, exc, code)
    try:
        path = write_report(result, args.output or cfg.report.file_name, cfg.report.measures,
                            cfg.report.per_label, overwrite=args.overwrite)
    except FileExistsError as exc:
        return _fail("report", MIMLError(f"{exc.filename} exists; use --overwrite"),
                     EXIT_RUNTIME)
    except (MIMLError, OSError) as exc:
        stage, code = _classify(exc, ("report", EXIT_RUNTIME))
        return _fail(stage, exc, code)
    print(path)
    return EXIT_OK


def cmd_stats(args):
    try:
        ds = parse_dataset(args.arff, args.xml)
    except (MIMLError, OSError) as exc:
        return _fail("data", exc, EXIT_DATA)
    sys.stdout.write(compute_stats(ds).as_text())
    return EXIT_OK


def cmd_partition(args):
    try:
        ds = parse_dataset(args.arff, args.xml)
    except (MIMLError, OSError) as exc:
        return _fail("data", exc, EXIT_DATA)
    try:
        fa = partition(ds, args.strategy, args.k, args.seed)
    except MIMLError as exc:
        return _fail("partition", exc, EXIT_RUNTIME)
    stem = os.path.splitext(os.path.basename(args.arff))[0]
    try:
        os.makedirs(args.out, exist_ok=True)
        for fold in range(fa.k):
            for part, subset in zip(("train", "test"), materialize_folds(ds, fa, fold)):
                base = os.path.join(args.out, f"{stem}_fold{fold}_{part}")
                write_dataset(subset, base + ".arff", base + ".xml")
                print(base + ".arff")
    except OSError as exc:
        return _fail("partition", exc, EXIT_RUNTIME)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="miml", description="Multi-instance multi-label experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run an experiment described by a config file")
    run.add_argument("-c", "--config", required=True, help="XML configuration file")
    run.add_argument("-j", "--jobs", type=int, default=1, help="folds evaluated in parallel")
    run.add_argument("--overwrite", action="store_true", help="replace an existing report")
    run.add_argument("-o", "--output", help="report path overriding <fileName>")
    run.set_defaults(func=cmd_run)

    stats = sub.add_parser("stats", help="print dataset statistics as key=value lines")
    stats.add_argument("arff")
    stats.add_argument("xml")
    stats.set_defaults(func=cmd_stats)

    part = sub.add_parser("partition", help="write k-fold train/test file pairs")
    part.add_argument("arff")
    part.add_argument("xml")
    part.add_argument("--strategy", choices=STRATEGIES, default="iterative")
    part.add_argument("--k", type=int, default=5)
    part.add_argument("--seed", type=int, default=1)
    part.add_argument("--out", default=".")
    part.set_defaults(func=cmd_partition)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
