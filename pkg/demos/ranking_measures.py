"""
NDCG and AUC as divergence instances
====================================

Two standard retrieval losses drop out of the same divergence machinery:
NDCG from a truncated cardinality function whose increments are the
position discounts, AUC from a directed cut charging each good-below-bad
pair. The bridges are exact for every ranking.
"""

import numpy as np

from lovbreg import (
    GoodBadSplit,
    Permutation,
    auc_as_lb,
    auc_loss,
    lb_divergence,
    ndcg_as_lb,
    ndcg_loss,
    ordering_of,
)
from itertools import permutations

relevance = np.array([3.0, 2.0, 0.0, 1.0])
print("relevance grades:", relevance)
print("best ordering:", ordering_of(relevance).to_one_based())

# ---------------------------------------------------------------------------
# NDCG at cutoff 3 with the logarithmic discount.

fn, scale = ndcg_as_lb(relevance, 3)
print("\nranking          ndcg loss   divergence / scale")
for candidate in ([1, 2, 4, 3], [2, 1, 4, 3], [4, 3, 2, 1]):
    sigma = Permutation.from_one_based(candidate)
    loss = ndcg_loss(relevance, sigma, 3)
    bridged = lb_divergence(fn, relevance, sigma) / scale
    print(f"{candidate}   {loss:9.6f}   {bridged:9.6f}")

# The bridge holds for all 24 rankings.
worst = max(
    abs(ndcg_loss(relevance, s, 3) - lb_divergence(fn, relevance, s) / scale)
    for s in permutations(range(4))
)
print(f"max bridge error over all rankings: {worst:.2e}")

# ---------------------------------------------------------------------------
# AUC: binary relevance, pairwise misorderings.

split = GoodBadSplit(4, good=[0, 1], bad=[2, 3])
cut, indicator = auc_as_lb(split)
print("\ngood-set indicator used by the bridge:", indicator)
print("ranking          auc loss   divergence")
for candidate in ([1, 2, 3, 4], [3, 1, 4, 2], [3, 4, 1, 2]):
    sigma = Permutation.from_one_based(candidate)
    print(
        f"{candidate}   {auc_loss(sigma, split):8.4f}   "
        f"{lb_divergence(cut, indicator, sigma):8.4f}"
    )
