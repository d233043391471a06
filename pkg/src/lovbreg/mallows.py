"""Exponential (Mallows-style) models built on the score-to-ranking divergence.

Two views: a density over score vectors in the unit cube concentrated
around a central ranking, and a distribution over rankings given a
collection of score vectors. Partition functions for the density are
estimated by plain Monte Carlo; the ranking distributions are normalized
by exact enumeration on small ground sets.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from itertools import permutations as _all_permutations
from typing import NamedTuple

import numpy as np

from .aggregation import as_score_matrix
from .divergence import NEGATIVE_TOLERANCE
from .permutations import Permutation, as_scores
from .submodular import SetFunction

__all__ = [
    "MallowsModel",
    "PartitionEstimate",
    "conditional_ltr_pmf",
    "extended_mallows_pmf",
]

MAX_ENUMERATION_ITEMS = 8


class PartitionEstimate(NamedTuple):
    estimate: float
    std_error: float


def _clamped_many(raw: np.ndarray) -> np.ndarray:
    low = raw.min() if raw.size else 0.0
    if low < -NEGATIVE_TOLERANCE:
        raise ValueError(
            f"divergence evaluated to {low:.6g} < 0; the set function is not submodular"
        )
    return np.maximum(raw, 0.0)


def _divergences_to_ranking(fn: SetFunction, rows: np.ndarray, sigma) -> np.ndarray:
    """Divergence of every row to one ranking, vectorized."""
    h = fn.extreme_subgradient(sigma)
    return _clamped_many(fn.lovasz_extension_many(rows) - rows @ h)


@dataclass(frozen=True)
class MallowsModel:
    """Density ``p(x | sigma) ~ exp(-theta * d(x || sigma))`` on the unit cube.

    ``theta >= 0`` controls concentration around score vectors ordered by
    the central ranking; ``theta = 0`` is the uniform density.
    """

    fn: SetFunction
    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta) or theta < 0:
            raise ValueError(f"theta must be a nonnegative finite real, got {self.theta}")
        object.__setattr__(self, "theta", theta)

    @property
    def n(self) -> int:
        return self.fn.n

    def log_unnormalized(self, x, sigma) -> float:
        """Log of the unnormalized density; zero when ``sigma`` orders ``x``."""
        arr = as_scores(x, self.n)
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError("scores must lie in the unit cube [0, 1]^n")
        return -self.theta * _divergences_to_ranking(self.fn, arr[None, :], sigma)[0]

    def estimate_partition(
        self, sigma, num_samples: int = 100_000, seed: int = 0
    ) -> PartitionEstimate:
        """Monte Carlo estimate of the normalizing constant over the unit cube.

        Returns the sample mean of ``exp(-theta * d(x || sigma))`` under
        uniform ``x`` together with the standard error of the mean.
        Deterministic given the seed.
        """
        num_samples = operator.index(num_samples)
        if num_samples < 1000:
            raise ValueError(f"need at least 1000 samples, got {num_samples}")
        rng = np.random.default_rng(seed)
        draws = rng.random((num_samples, self.n))
        values = np.exp(-self.theta * _divergences_to_ranking(self.fn, draws, sigma))
        estimate = float(values.mean())
        std_error = float(values.std(ddof=1) / math.sqrt(num_samples))
        return PartitionEstimate(estimate, std_error)


def _normalized_pmf(log_weights: np.ndarray, rankings: list[tuple[int, ...]]):
    shifted = log_weights - log_weights.max()
    weights = np.exp(shifted)
    probabilities = weights / weights.sum()
    return {Permutation(r): float(p) for r, p in zip(rankings, probabilities)}


def extended_mallows_pmf(thetas, scores, fn: SetFunction) -> dict[Permutation, float]:
    """Distribution over all rankings given a collection of score vectors.

    ``p(sigma)`` is proportional to
    ``exp(-sum_i thetas[i] * d(scores[i] || sigma))``, normalized by exact
    enumeration; probabilities sum to one. Per-vector concentrations must
    be nonnegative.
    """
    x = as_score_matrix(scores)
    m, n = x.shape
    if n > MAX_ENUMERATION_ITEMS:
        raise ValueError(
            f"ground set too large for exact enumeration: n={n}, max {MAX_ENUMERATION_ITEMS}"
        )
    t = np.asarray(thetas, dtype=float)
    if t.ndim == 0:
        t = np.full(m, float(t))
    if t.shape != (m,):
        raise ValueError(f"expected {m} concentration values, got shape {t.shape}")
    if not np.all(np.isfinite(t)) or np.any(t < 0):
        raise ValueError("concentrations must be nonnegative finite reals")
    if fn.n != n:
        raise ValueError(f"set function over {fn.n} items, expected {n}")

    extensions = np.array([fn.lovasz_extension(row) for row in x])
    rankings = list(_all_permutations(range(n)))
    log_weights = np.empty(len(rankings))
    for idx, ranking in enumerate(rankings):
        h = fn._subgradient_for_forward(np.array(ranking, dtype=np.intp))
        divergences = _clamped_many(extensions - x @ h)
        log_weights[idx] = -float(t @ divergences)
    return _normalized_pmf(log_weights, rankings)


def conditional_ltr_pmf(features, weights, fn: SetFunction) -> dict[Permutation, float]:
    """Conditional ranking model ``p(sigma) ~ exp(sum_j weights[j] * d(col_j || sigma))``.

    ``features`` is documents x features; each column scores the documents
    under one feature. Nonpositive weights give a model concentrating near
    the weighted consensus: with ``weights = -thetas`` this is exactly
    ``extended_mallows_pmf(thetas, features.T, fn)``.
    """
    f = np.asarray(features, dtype=float)
    if f.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise ValueError("feature matrix contains non-finite entries")
    n, d = f.shape
    if n > MAX_ENUMERATION_ITEMS:
        raise ValueError(
            f"ground set too large for exact enumeration: n={n}, max {MAX_ENUMERATION_ITEMS}"
        )
    w = as_scores(weights)
    if w.size != d:
        raise ValueError(f"expected {d} weights, got {w.size}")
    if fn.n != n:
        raise ValueError(f"set function over {fn.n} items, expected {n}")

    columns = f.T
    extensions = np.array([fn.lovasz_extension(col) for col in columns])
    rankings = list(_all_permutations(range(n)))
    log_weights = np.empty(len(rankings))
    for idx, ranking in enumerate(rankings):
        h = fn._subgradient_for_forward(np.array(ranking, dtype=np.intp))
        divergences = _clamped_many(extensions - columns @ h)
        log_weights[idx] = float(w @ divergences)
    return _normalized_pmf(log_weights, rankings)
