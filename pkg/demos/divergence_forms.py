"""
Score-to-ranking divergences and their closed forms
===================================================

The divergence d(x || sigma) = fhat(x) - <x, h_sigma> measures how badly a
ranking disagrees with a score vector: zero when the ranking sorts the
scores, growing with both the number of misordered pairs and the score
gaps across them. This demo compares the definitional route against the
closed forms, recovers the Kendall distance with tailored cut weights, and
scores partial orders.
"""

import numpy as np

from lovbreg import (
    CardinalityConcave,
    GraphCut,
    PartialOrder,
    Permutation,
    cardinality_divergence,
    cut_divergence,
    divergence_upper_bound,
    kendall_tau,
    lb_divergence,
    ordering_of,
    partial_order_divergence,
    top_m_divergence,
)

x = np.array([0.9, 0.5, 0.2])
sigma_x = ordering_of(x)
worst = Permutation.from_one_based([3, 2, 1])
print("scores:", x, "their ordering:", sigma_x.to_one_based())

# ---------------------------------------------------------------------------
# Definitional value vs the cardinality closed form.

fn = CardinalityConcave([2.0, 1.0, 0.0])
print("d(x || own ordering):", lb_divergence(fn, x, sigma_x))
print("d(x || reversed):", lb_divergence(fn, x, worst))
print("closed form agrees:", cardinality_divergence([2.0, 1.0, 0.0], x, worst))

# Truncated form: only the top ranks matter.
print("top-2 unit form:", top_m_divergence(np.ones(3), 2, x, Permutation.from_one_based([1, 3, 2])))

# Cut form: every misordered pair costs its weight times the score gap.
weights = np.ones((3, 3)) - np.eye(3)
print("cut form:", cut_divergence(weights, x, worst),
      "= definitional:", lb_divergence(GraphCut(weights), x, worst))

# ---------------------------------------------------------------------------
# With weights 1/|x_i - x_j| the gaps cancel and the divergence counts
# misordered pairs: exactly twice the Kendall distance under the
# ordered-pair cut convention used here.

w = np.zeros((3, 3))
for i in range(3):
    for j in range(3):
        if i != j:
            w[i, j] = 1.0 / abs(x[i] - x[j])
fn_kendall = GraphCut(w)
print("\nranking        divergence   2 * kendall")
for ranking in ([1, 2, 3], [1, 3, 2], [2, 1, 3], [3, 2, 1]):
    sigma = Permutation.from_one_based(ranking)
    d = lb_divergence(fn_kendall, x, sigma)
    print(f"{ranking}    {d:10.6f}   {2 * kendall_tau(sigma_x, sigma)}")

# ---------------------------------------------------------------------------
# Partial orders: charge only the stated precedence constraints.

order = PartialOrder(4, [(0, 1), (2, 1)])  # items 1 and 3 must beat item 2
consistent = np.array([0.9, 0.1, 0.8, 0.5])
violated = np.array([0.1, 0.9, 0.8, 0.5])
print("\nconsistent scores:", partial_order_divergence(order, consistent))
print("violated scores:  ", partial_order_divergence(order, violated))

# ---------------------------------------------------------------------------
# For monotone functions the divergence to any ranking is bounded by the
# score spread; near-constant scores cannot be far from any ranking.

monotone = CardinalityConcave([2.0, 1.0, 0.5])
flat = np.array([0.50, 0.52, 0.49])
bound = divergence_upper_bound(monotone, flat)
worst_case = max(
    lb_divergence(monotone, flat, p)
    for p in ([1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1])
    for p in [Permutation.from_one_based(p)]
)
print(f"\nnear-constant scores: max divergence {worst_case:.4f} <= bound {bound:.4f}")
