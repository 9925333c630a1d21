"""Experiment configuration files.

A configuration has a ``<configuration>`` root with exactly one
``<classifier>``, ``<evaluator>`` and ``<report>`` element::

    <configuration>
      <classifier name="miml.classifiers.miml.lazy.MIMLkNN">
        <nReferences>4</nReferences>
        <nCiters>6</nCiters>
        <metric name="miml.core.distance.AverageHausdorff"></metric>
      </classifier>
      <evaluator name="miml.evaluation.EvaluatorCV">
        <seed>712637</seed>
        <numFolds>5</numFolds>
        <data>
          <file>data/miml_birds.arff</file>
          <xmlFile>data/miml_birds.xml</xmlFile>
        </data>
      </evaluator>
      <report name="miml.report.BaseMIMLReport">
        <fileName>results/mimlknnn.csv</fileName>
        <measures perLabel="true">
          <measure>Hamming Loss</measure>
        </measures>
      </report>
    </configuration>

Classifier parameters are kept as raw strings and converted by the
classifier; nested elements carrying a ``name`` attribute (``metric``,
``baseClassifier``) become nested component specs. Unknown elements are
errors, never silently ignored. Relative paths resolve against the
directory of the configuration file.

The holdout evaluator (``EvaluatorHoldout``) takes either
``<trainFile>``/``<testFile>`` or ``<file>`` plus a ``<percentageTrain>``
(0-100) inside ``<data>``. Both evaluators accept an optional
``<strategy>`` (random, powerset or iterative; iterative by default).
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .classifiers.base import ComponentSpec, resolve_classifier
from .errors import (
    BadParameter,
    ConfigError,
    ConfigSyntaxError,
    DuplicateBranch,
    MissingBranch,
)
from .evaluation import CV_KEY, HOLDOUT_KEY, resolve_evaluator
from .metrics import check_measures
from .partition import ITERATIVE, resolve_strategy
from .report import resolve_report

BRANCHES = ("classifier", "evaluator", "report")
# parameters whose value is itself a classifier spec
NESTED_CLASSIFIERS = ("baseClassifier",)


@dataclass(frozen=True)
class EvaluatorConfig:
    key: str
    seed: int = 1
    num_folds: int = 5
    strategy: str = ITERATIVE
    data_file: str = None
    xml_file: str = None
    train_file: str = None
    test_file: str = None
    train_fraction: float = None


@dataclass(frozen=True)
class ReportConfig:
    key: str
    file_name: str
    measures: tuple = ()
    per_label: bool = False


@dataclass(frozen=True)
class ExperimentConfig:
    classifier: ComponentSpec
    evaluator: EvaluatorConfig
    report: ReportConfig
    path: str = None


def _text(el):
    return (el.text or "").strip()


def _component(el, where):
    name = el.get("name")
    if not name:
        raise ConfigError(f"<{where}> needs a name attribute")
    params = {}
    for child in el:
        if child.tag in params:
            raise BadParameter(f"{name}: parameter <{child.tag}> given twice")
        if child.get("name") is not None or len(child):
            params[child.tag] = _component(child, child.tag)
        else:
            params[child.tag] = _text(child)
    return ComponentSpec(name.strip(), params)


def validate_classifier_spec(spec):
    """Check the key and parameter names (not values) of a classifier spec."""
    cls = resolve_classifier(spec.key)
    for pname, value in spec.params.items():
        if pname not in cls.params:
            raise BadParameter(
                f"{spec.key}: unknown parameter <{pname}>; "
                f"accepted: {', '.join(sorted(cls.params)) or 'none'}")
        if pname in NESTED_CLASSIFIERS:
            if not isinstance(value, ComponentSpec):
                raise BadParameter(f"{spec.key}: <{pname}> needs a name attribute")
            validate_classifier_spec(value)


def _resolve_path(base, value):
    if value is None or os.path.isabs(value):
        return value
    return os.path.normpath(os.path.join(base, value))


def _int(el, what):
    try:
        return int(_text(el))
    except ValueError:
        raise ConfigError(f"<{what}> must be an integer, got {_text(el)!r}") from None


def _evaluator(el, base):
    key = resolve_evaluator(el.get("name") or "")
    fields = {}
    for child in el:
        tag = child.tag
        if tag == "seed":
            fields["seed"] = _int(child, tag)
        elif tag == "numFolds":
            if key != CV_KEY:
                raise ConfigError("<numFolds> only applies to EvaluatorCV")
            fields["num_folds"] = _int(child, tag)
        elif tag == "strategy":
            try:
                fields["strategy"] = resolve_strategy(_text(child))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        elif tag == "data":
            for item in child:
                mapping = {"file": "data_file", "xmlFile": "xml_file",
                           "trainFile": "train_file", "testFile": "test_file"}
                if item.tag in mapping:
                    fields[mapping[item.tag]] = _resolve_path(base, _text(item))
                elif item.tag == "percentageTrain":
                    try:
                        fields["train_fraction"] = float(_text(item)) / 100.0
                    except ValueError:
                        raise ConfigError("<percentageTrain> must be a number") from None
                else:
                    raise ConfigError(f"unknown element <{item.tag}> in <data>")
        else:
            raise ConfigError(f"unknown element <{tag}> in <evaluator>")
    cfg = EvaluatorConfig(key, **fields)
    if not cfg.xml_file:
        raise ConfigError("<data> needs an <xmlFile>")
    if key == CV_KEY:
        if not cfg.data_file:
            raise ConfigError("EvaluatorCV needs <data><file>")
    elif not (cfg.train_file and cfg.test_file) and not (cfg.data_file and cfg.train_fraction):
        raise ConfigError(
            "EvaluatorHoldout needs <trainFile> and <testFile>, or <file> and <percentageTrain>")
    return cfg


def _report(el, base):
    key = resolve_report(el.get("name") or "")
    file_name = None
    measures = ()
    per_label = False
    for child in el:
        if child.tag == "fileName":
            file_name = _resolve_path(base, _text(child))
        elif child.tag == "measures":
            flag = (child.get("perLabel") or "false").strip().lower()
            if flag not in ("true", "false"):
                raise ConfigError("perLabel must be true or false")
            per_label = flag == "true"
            names = []
            for m in child:
                if m.tag != "measure":
                    raise ConfigError(f"unknown element <{m.tag}> in <measures>")
                names.append(_text(m))
            check_measures(names)
            measures = tuple(names)
        else:
            raise ConfigError(f"unknown element <{child.tag}> in <report>")
    if not file_name:
        raise ConfigError("<report> needs a <fileName>")
    return ReportConfig(key, file_name, measures, per_label)


def parse_config_text(text, base_dir="."):
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ConfigSyntaxError(f"line {line}, column {col + 1}: {exc}") from None
    if root.tag != "configuration":
        raise ConfigSyntaxError(f"root element must be <configuration>, got <{root.tag}>")
    found = {}
    for child in root:
        if child.tag not in BRANCHES:
            raise ConfigError(f"unknown element <{child.tag}> in <configuration>")
        if child.tag in found:
            raise DuplicateBranch(f"more than one <{child.tag}> element")
        found[child.tag] = child
    for branch in BRANCHES:
        if branch not in found:
            raise MissingBranch(f"configuration has no <{branch}> element")
    classifier = _component(found["classifier"], "classifier")
    validate_classifier_spec(classifier)
    return ExperimentConfig(classifier, _evaluator(found["evaluator"], base_dir),
                            _report(found["report"], base_dir))


def parse_config(path):
    """Read and validate a configuration file (raises FileNotFoundError if absent)."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    cfg = parse_config_text(text, os.path.dirname(os.path.abspath(path)))
    return ExperimentConfig(cfg.classifier, cfg.evaluator, cfg.report, path)
