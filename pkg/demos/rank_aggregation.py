"""
Rank aggregation that listens to confidence
===========================================

Five voters score two items. Three of them barely prefer item 2; two of
them strongly prefer item 1. A pure ranking method sees three votes
against two and elects item 2. Aggregating the scores instead, the
representative ranking is the ordering of the arithmetic mean, and the
decisive minority carries the day.
"""

import numpy as np

from lovbreg import (
    brute_force_representative,
    confidence,
    default_set_function,
    ltr_feature,
    ltr_inference,
    ordering_of,
    representative,
)

votes = np.array(
    [
        [1.9, 2.0],   # weak preference for item 2
        [1.8, 2.0],
        [1.95, 2.0],
        [2.0, 1.0],   # strong preference for item 1
        [2.5, 1.2],
    ]
)

orderings = [ordering_of(row).to_one_based() for row in votes]
print("per-voter orderings:", orderings)
print("majority of orderings favors item 2 (3 votes to 2)")

mean = votes.mean(axis=0)
rep = representative(votes)
print("\nmean scores:", mean)
print("score-aware representative:", rep.to_one_based())
print("population confidence (total variation of the mean):", confidence(votes))

# The closed form really is the argmin of the total divergence: check it
# against exhaustive enumeration for any submodular generator.
fn = default_set_function(2)
winner, objective = brute_force_representative(votes, fn)
print("\nexhaustive argmin:", winner.to_one_based(), f"objective {objective:.4f}")

# An uninformative voter (constant scores) changes nothing.
padded = np.vstack([votes, [3.0, 3.0]])
print("after adding a constant vote:", representative(padded).to_one_based())

# ---------------------------------------------------------------------------
# The same machinery does learning-to-rank inference: documents x features,
# one weight per feature, rank by the weighted scores.

features = np.array(
    [
        [0.9, 0.10],  # document 1: strong text match, weak freshness
        [0.6, 0.80],
        [0.3, 0.95],
        [0.1, 0.20],
    ]
)
w = np.array([0.7, 0.3])
ranking = ltr_inference(features, w)
print("\nlearning-to-rank ordering:", ranking.to_one_based())
print(
    "feature value at that ordering:",
    ltr_feature(features, w, default_set_function(4), ranking),
)
