"""Rank aggregation of score collections.

A collection of score vectors is combined into a single ranking by
minimizing the total divergence. For any submodular generator this argmin
is closed form: the ordering of the arithmetic mean. The exhaustive
minimizer is kept alongside as an independent check, and the spread of the
mean doubles as a confidence measure for the aggregate.
"""

from __future__ import annotations

from itertools import permutations as _all_permutations

import numpy as np

from .divergence import lb_divergence
from .permutations import Permutation, as_scores, ordering_of
from .submodular import SetFunction

__all__ = [
    "as_score_matrix",
    "brute_force_representative",
    "confidence",
    "ltr_feature",
    "ltr_inference",
    "representative",
]

MAX_BRUTE_FORCE_ITEMS = 8


def as_score_matrix(scores) -> np.ndarray:
    """Validate a collection of score vectors as a finite 2-D array (rows = vectors)."""
    arr = np.asarray(scores, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"score collection must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("score collection is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("score collection contains non-finite entries")
    return arr


def representative(scores) -> Permutation:
    """The aggregate ranking: ordering of the arithmetic mean of the collection.

    Minimizes the total divergence to the collection for every submodular
    generator, so no set function argument is needed.
    """
    x = as_score_matrix(scores)
    return ordering_of(x.mean(axis=0))


def confidence(scores) -> float:
    """Total variation of the mean: sum of ``|mu_i - mu_j|`` over item pairs.

    Zero exactly when the mean is constant (the population expresses no
    preference); large values certify a decisive aggregate ordering.
    """
    x = as_score_matrix(scores)
    mu = x.mean(axis=0)
    return float(np.triu(np.abs(mu[:, None] - mu[None, :]), k=1).sum())


def brute_force_representative(scores, fn: SetFunction) -> tuple[Permutation, float]:
    """Exhaustive aggregate: scan all rankings for the minimum total divergence.

    Intended as an oracle for small ground sets. The scan uses linearity of
    the total divergence in the extreme subgradient; the reported objective
    is recomputed literally at the winner. Ties go to the lexicographically
    smallest ranking.
    """
    x = as_score_matrix(scores)
    n = x.shape[1]
    if fn.n != n:
        raise ValueError(f"set function over {fn.n} items, expected {n}")
    if n > MAX_BRUTE_FORCE_ITEMS:
        raise ValueError(
            f"ground set too large for exhaustive aggregation: n={n}, max {MAX_BRUTE_FORCE_ITEMS}"
        )
    total_extension = float(sum(fn.lovasz_extension(row) for row in x))
    column_sums = x.sum(axis=0)
    best_forward: tuple[int, ...] | None = None
    best_objective = np.inf
    for candidate in _all_permutations(range(n)):
        forward = np.array(candidate, dtype=np.intp)
        h = fn._subgradient_for_forward(forward)
        objective = total_extension - float(column_sums @ h)
        if objective < best_objective:
            best_objective = objective
            best_forward = candidate
    assert best_forward is not None
    winner = Permutation(best_forward)
    exact = float(sum(lb_divergence(fn, row, winner) for row in x))
    return winner, exact


def ltr_feature(features, weights, fn: SetFunction, sigma) -> float:
    """Weighted total divergence of the per-feature score columns to a ranking.

    ``features`` is documents x features; column ``j`` scores every document
    under feature ``j``. Returns ``sum_j weights[j] * d(column_j || sigma)``.
    """
    f = np.asarray(features, dtype=float)
    if f.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("feature matrix contains non-finite entries")
    w = as_scores(weights)
    if w.size != f.shape[1]:
        raise ValueError(f"expected {f.shape[1]} weights, got {w.size}")
    if fn.n != f.shape[0]:
        raise ValueError(f"set function over {fn.n} items, expected {f.shape[0]}")
    return float(sum(w[j] * lb_divergence(fn, f[:, j], sigma) for j in range(w.size)))


def ltr_inference(features, weights) -> Permutation:
    """Rank documents by their weighted feature scores.

    For nonnegative weights this ordering also minimizes ``ltr_feature``
    over all rankings (it is the ordering of the weighted mean of the
    feature columns).
    """
    f = np.asarray(features, dtype=float)
    if f.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("feature matrix contains non-finite entries")
    w = as_scores(weights)
    if w.size != f.shape[1]:
        raise ValueError(f"expected {f.shape[1]} weights, got {w.size}")
    return ordering_of(f @ w)
