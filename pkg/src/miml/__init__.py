"""Multi-instance multi-label learning toolkit.

Load bag-structured multi-label datasets, compute statistics, partition
them for holdout or cross-validation, train instance-based MIML learners
and score them with the usual multi-label measures.
"""

from .classifiers import ComponentSpec, Prediction, predict, registered_keys, train
from .data import AttributeSchema, Bag, LabelMatrix, MIMLDataset, parse_dataset, select_bags, write_dataset
from .distance import BagDistance, bag_distance, pairwise_distances
from .evaluation import evaluate_cv, evaluate_holdout
from .metrics import MEASURES, EvaluationResult, evaluate
from .partition import FoldAssignment, materialize_folds, partition, split_holdout
from .stats import DatasetStats, compute_stats
from .transform import to_mi_br, to_mi_lp, to_ml

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "Bag",
    "BagDistance",
    "ComponentSpec",
    "DatasetStats",
    "EvaluationResult",
    "FoldAssignment",
    "LabelMatrix",
    "MEASURES",
    "MIMLDataset",
    "Prediction",
    "bag_distance",
    "compute_stats",
    "evaluate",
    "evaluate_cv",
    "evaluate_holdout",
    "materialize_folds",
    "pairwise_distances",
    "parse_dataset",
    "partition",
    "predict",
    "registered_keys",
    "select_bags",
    "split_holdout",
    "to_mi_br",
    "to_mi_lp",
    "to_ml",
    "train",
    "write_dataset",
]
