"""
Set-function families and the Lovász extension
===============================================

A tour of the building blocks: evaluating set functions, the greedy
extreme subgradients that a ranking induces, and the continuous extension
they define. Run as a script; everything prints.
"""

import numpy as np

from lovbreg import (
    CardinalityConcave,
    GraphCut,
    Modular,
    Permutation,
    TruncatedCardinality,
    is_monotone,
    is_submodular,
)

# ---------------------------------------------------------------------------
# A cut function on three items: f(S) counts ordered pairs leaving S.

cut = GraphCut(np.ones((3, 3)) - np.eye(3))
print("cut values:", [cut.value(s) for s in [(), (0,), (0, 1), (0, 1, 2)]])

# A concave-of-cardinality function, stored via its increment sequence.
budget = CardinalityConcave([2.0, 1.0, 0.0])
print("cardinality values:", [budget.value(range(r)) for r in range(4)])

# Truncation keeps only the contribution of the top ranks.
top2 = TruncatedCardinality([3.0, 2.0, 1.0], 2)
print("truncated values:", [top2.value(range(r)) for r in range(4)])

# ---------------------------------------------------------------------------
# Each ranking picks out one vertex of the subdifferential: the marginal
# gains along the ranking's prefix chain. The entries always sum to f(V).

identity = Permutation.identity(3)
reversed_ = Permutation.from_one_based([3, 2, 1])
for sigma in (identity, reversed_):
    h = cut.extreme_subgradient(sigma)
    print(f"cut subgradient for {sigma.to_one_based()}: {h}, sum = {h.sum():.1f}")

# For cardinality families the subgradient is just the increments placed at
# the ranked items, so any two identically ordered vectors share it.
print("budget subgradient:", budget.extreme_subgradient(reversed_))

# ---------------------------------------------------------------------------
# The Lovász extension interpolates f on the cube: exact on indicator
# vectors, positively homogeneous, and convex when f is submodular.

x = np.array([0.8, 0.5, 0.1])
print("extension at x:", budget.lovasz_extension(x))
print("extension at 1_{0,1}:", budget.lovasz_extension([1, 1, 0]), "= f({0,1}) =", budget.value([0, 1]))
print("extension at 2x:", budget.lovasz_extension(2 * x), "= 2 * extension(x)")

# ---------------------------------------------------------------------------
# Exhaustive checkers for small ground sets.

print("cut submodular:", is_submodular(cut), "| cut monotone:", is_monotone(cut))
print("budget submodular:", is_submodular(budget), "| budget monotone:", is_monotone(budget))
print("modular (-1, 2, 0) submodular:", is_submodular(Modular([-1.0, 2.0, 0.0])))
