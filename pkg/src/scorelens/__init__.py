"""scorelens: preference-model auditing for application screening.

Feature derivation, pairwise ranking-SVM score prediction, inconsistency
detection, comparison layouts, and an append-only scoring log — exposed as
a library, a CLI, and an HTTP service.
"""

__version__ = "0.1.0"

from .attributes import AttributeVector, derive_attributes, derive_group_attributes
from .embedding import ComparisonLayout, EmbeddingConfig, build_layout, tsne_embed
from .inconsistency import classify_deviations, find_inversions, flag_time_anomalies
from .ranking import (
    PreferenceModel,
    Prediction,
    derive_constraints,
    fit_preference_model,
    map_to_scores,
    predict_values,
    top_attributes,
)
from .records import Application, Group, RankTables, ScoreSheet, load_group, load_rank_tables
from .stats import box_stats, indicator_set, kde, kurtosis, section_durations

__all__ = [
    "Application",
    "AttributeVector",
    "ComparisonLayout",
    "EmbeddingConfig",
    "Group",
    "PreferenceModel",
    "Prediction",
    "RankTables",
    "ScoreSheet",
    "box_stats",
    "build_layout",
    "classify_deviations",
    "derive_attributes",
    "derive_constraints",
    "derive_group_attributes",
    "find_inversions",
    "fit_preference_model",
    "flag_time_anomalies",
    "indicator_set",
    "kde",
    "kurtosis",
    "load_group",
    "load_rank_tables",
    "map_to_scores",
    "predict_values",
    "section_durations",
    "top_attributes",
    "tsne_embed",
]
