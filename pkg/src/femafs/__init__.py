"""Finite Element Machines (FEMa) and FEMa-FS feature selection."""

__version__ = "0.1.0"

from .basis import (SINGULAR, inverse_distance_weight, shepard_basis,
                    shepard_basis_feature)
from .baselines import ScoreVector, anova_f_scores, chi2_scores, knn_predict
from .dataset import (LabeledDataset, NormalizationStats, apply_normalizer, fit_normalizer,
                      load_csv, load_csv_files, stratified_split)
from .errors import (DatasetError, DimensionError, EmptyFileError, FemaError,
                     MissingColumnError, NotNormalizedError, ParseError, SingleClassError)
from .experiment import ExperimentConfig, ExperimentReport, run_experiment
from .fema import (FemaModel, fema_certainty, fema_class_probabilities, fema_predict,
                   fema_train)
from .metrics import ConfusionMatrix, MetricsReport, confusion, metrics
from .selection import (FeatureManifold, FeatureRanking, RankEntry, SamplingGrid, build_grid,
                        feature_manifold, overlap_score, project, rank_features, select_top)
from .wilcoxon import Decision, WilcoxonResult, wilcoxon_signed_rank

__all__ = [name for name in dir() if not name.startswith("_")]
