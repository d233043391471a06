"""Divergences between score vectors and rankings, built from submodular functions.

The library measures how far a real-valued score vector is from agreeing
with a ranking, using the Bregman divergence of the Lovász extension of a
submodular set function. On top of that primitive it provides classical
permutation metrics, rank aggregation with a closed-form representative,
k-means-style clustering with ranking representatives, NDCG and AUC as
divergence instances, and Mallows-style probability models over scores and
rankings.
"""

from .aggregation import (
    as_score_matrix,
    brute_force_representative,
    confidence,
    ltr_feature,
    ltr_inference,
    representative,
)
from .clustering import ClusteringResult, clustering_objective, kmeans_cluster
from .divergence import (
    PartialOrder,
    cardinality_divergence,
    cut_divergence,
    divergence_upper_bound,
    lb_divergence,
    partial_order_divergence,
    top_m_divergence,
)
from .mallows import (
    MallowsModel,
    PartitionEstimate,
    conditional_ltr_pmf,
    extended_mallows_pmf,
)
from .permutations import (
    Permutation,
    as_scores,
    kendall_tau,
    ordering_of,
    rank_correlation,
    relabel_scores,
    spearman_footrule,
    weighted_kendall_tau,
)
from .ranking_measures import (
    GoodBadSplit,
    auc_as_lb,
    auc_loss,
    default_discount,
    ndcg_as_lb,
    ndcg_loss,
)
from .submodular import (
    CardinalityConcave,
    GenericOracle,
    GraphCut,
    Modular,
    SetFunction,
    SumFunction,
    TruncatedCardinality,
    default_set_function,
    function_from_spec,
    is_monotone,
    is_submodular,
)

__version__ = "0.1.0"

__all__ = [
    "CardinalityConcave",
    "ClusteringResult",
    "GenericOracle",
    "GoodBadSplit",
    "GraphCut",
    "MallowsModel",
    "Modular",
    "PartialOrder",
    "PartitionEstimate",
    "Permutation",
    "SetFunction",
    "SumFunction",
    "TruncatedCardinality",
    "as_score_matrix",
    "as_scores",
    "auc_as_lb",
    "auc_loss",
    "brute_force_representative",
    "cardinality_divergence",
    "clustering_objective",
    "conditional_ltr_pmf",
    "confidence",
    "cut_divergence",
    "default_discount",
    "default_set_function",
    "divergence_upper_bound",
    "extended_mallows_pmf",
    "function_from_spec",
    "is_monotone",
    "is_submodular",
    "kendall_tau",
    "kmeans_cluster",
    "lb_divergence",
    "ltr_feature",
    "ltr_inference",
    "ndcg_as_lb",
    "ndcg_loss",
    "ordering_of",
    "partial_order_divergence",
    "rank_correlation",
    "relabel_scores",
    "representative",
    "spearman_footrule",
    "top_m_divergence",
    "weighted_kendall_tau",
]
