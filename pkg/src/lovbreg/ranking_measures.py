"""NDCG and AUC ranking losses, directly and as divergence instances.

Both losses compare a proposed ranking against graded or binary relevance.
Each also arises as a Lovász-Bregman divergence: NDCG from a truncated
cardinality function over the discount sequence, AUC from a directed cut
charging each good-below-bad pair.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .permutations import Permutation, as_forward
from .submodular import GraphCut, TruncatedCardinality

__all__ = [
    "GoodBadSplit",
    "auc_as_lb",
    "auc_loss",
    "default_discount",
    "ndcg_as_lb",
    "ndcg_loss",
]


def default_discount(k: int) -> np.ndarray:
    """The usual logarithmic position discount ``1 / log2(1 + rank)``."""
    return 1.0 / np.log2(np.arange(1, k + 1) + 1.0)


def _check_relevance(relevance) -> np.ndarray:
    r = np.asarray(relevance, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("relevance must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(r)):
        raise ValueError("relevance contains non-finite entries")
    if np.any(r < 0):
        raise ValueError("relevance grades must be nonnegative")
    return r


def _check_discount(discount, k: int) -> np.ndarray:
    if discount is None:
        return default_discount(k)
    d = np.asarray(discount, dtype=float)
    if d.ndim != 1 or d.size < k:
        raise ValueError(f"need at least {k} discount values, got shape {d.shape}")
    d = d[:k]
    if not np.all(np.isfinite(d)) or np.any(d <= 0):
        raise ValueError("discounts must be positive finite reals")
    if np.any(np.diff(d) > 0):
        raise ValueError("discounts must be nonincreasing")
    return d


def ndcg_loss(relevance, sigma, k: int | None = None, discount=None) -> float:
    """Normalized discounted cumulative gain loss in ``[0, 1]``.

    ``1 - DCG(sigma) / DCG(best)`` over the top ``k`` ranks, where gains are
    relevance grades weighted by a positive nonincreasing discount
    (logarithmic by default). Zero when ``sigma`` sorts by decreasing
    relevance within the cutoff.
    """
    r = _check_relevance(relevance)
    n = r.size
    k = n if k is None else operator.index(k)
    if not 1 <= k <= n:
        raise ValueError(f"cutoff must be in 1..{n}, got {k}")
    d = _check_discount(discount, k)
    fwd = as_forward(sigma, n)
    best = float(-np.sort(-r)[:k] @ d)
    if best <= 0:
        raise ValueError("ideal top-k gain is zero; relevance has no positive entry")
    got = float(r[fwd[:k]] @ d)
    return (best - got) / best


def ndcg_as_lb(relevance, k: int | None = None, discount=None) -> tuple[TruncatedCardinality, float]:
    """The set function and scale exhibiting NDCG loss as a divergence.

    Returns ``(fn, scale)`` with ``fn`` a truncated cardinality function
    whose increments are the discounts, such that
    ``lb_divergence(fn, relevance, sigma) / scale == ndcg_loss(...)`` for
    every ranking. ``scale`` is the ideal top-k gain.
    """
    r = _check_relevance(relevance)
    n = r.size
    k = n if k is None else operator.index(k)
    if not 1 <= k <= n:
        raise ValueError(f"cutoff must be in 1..{n}, got {k}")
    d = _check_discount(discount, k)
    best = float(-np.sort(-r)[:k] @ d)
    if best <= 0:
        raise ValueError("ideal top-k gain is zero; relevance has no positive entry")
    increments = np.zeros(n)
    increments[:k] = d
    return TruncatedCardinality(increments, k), best


@dataclass(frozen=True)
class GoodBadSplit:
    """Binary relevance: disjoint nonempty sets of good and bad items."""

    n: int
    good: frozenset
    bad: frozenset

    def __post_init__(self):
        n = operator.index(self.n)
        good = frozenset(operator.index(g) for g in self.good)
        bad = frozenset(operator.index(b) for b in self.bad)
        if not good or not bad:
            raise ValueError("both the good and the bad set must be nonempty")
        if good & bad:
            raise ValueError(f"good and bad sets overlap: {sorted(good & bad)}")
        out_of_range = {j for j in good | bad if not 0 <= j < n}
        if out_of_range:
            raise ValueError(f"items out of range for ground set of size {n}: {sorted(out_of_range)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "good", good)
        object.__setattr__(self, "bad", bad)


def auc_loss(sigma, split: GoodBadSplit) -> float:
    """Fraction of (good, bad) pairs where the good item is ranked below the bad."""
    perm = sigma if isinstance(sigma, Permutation) else Permutation(sigma)
    if perm.n != split.n:
        raise ValueError(f"permutation over {perm.n} items, expected {split.n}")
    ranks = perm.ranks
    good_ranks = ranks[sorted(split.good)]
    bad_ranks = ranks[sorted(split.bad)]
    violations = int(np.sum(good_ranks[:, None] > bad_ranks[None, :]))
    return violations / (len(split.good) * len(split.bad))


def auc_as_lb(split: GoodBadSplit) -> tuple[GraphCut, np.ndarray]:
    """The cut function and 0/1 scores exhibiting AUC loss as a divergence.

    Returns ``(fn, x)`` with weight ``1 / (|good| * |bad|)`` on each directed
    (good, bad) pair and ``x`` the indicator of the good set, such that
    ``lb_divergence(fn, x, sigma) == auc_loss(sigma, split)`` for every
    ranking (proportionality constant 1 under this convention).
    """
    n = split.n
    good = sorted(split.good)
    bad = sorted(split.bad)
    weights = np.zeros((n, n))
    weights[np.ix_(good, bad)] = 1.0 / (len(good) * len(bad))
    x = np.zeros(n)
    x[good] = 1.0
    return GraphCut(weights), x
