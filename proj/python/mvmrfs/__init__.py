"""Non-parametric filter feature selection.

Relevance is the inter-class overlap of kernel density estimates, redundancy
the pairwise Wasserstein-1 distance between feature densities, and subsets
are searched with a fitness-adaptive genetic algorithm. A small evaluation
harness (KNN, Gaussian naive Bayes, decision tree) scores selected subsets.
"""

from ._core import (
    Dataset,
    EvalReport,
    FeatureMetricsCache,
    GaConfig,
    GaResult,
    GaTrace,
    GenerationStats,
    Individual,
    SplitPair,
    build_cache,
    evaluate_subset,
    load_csv,
    make_artificial_iris,
    min_max_normalize,
    mvmr_score,
    pairwise_accuracy_matrix,
    pairwise_mvmr_matrix,
    run,
    stratified_split,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "EvalReport",
    "FeatureMetricsCache",
    "GaConfig",
    "GaResult",
    "GaTrace",
    "GenerationStats",
    "Individual",
    "SplitPair",
    "build_cache",
    "evaluate_subset",
    "load_csv",
    "make_artificial_iris",
    "min_max_normalize",
    "mvmr_score",
    "pairwise_accuracy_matrix",
    "pairwise_mvmr_matrix",
    "run",
    "stratified_split",
]
