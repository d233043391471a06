"""Divergences between a score vector and a ranking.

The central quantity is the Bregman-style distortion of the Lovász
extension,

    d(x || sigma) = fhat(x) - <x, h_sigma>,

which is nonnegative for submodular ``fn`` and vanishes when ``sigma``
orders ``x``. Closed forms for the cut and cardinality families are
implemented independently of the definitional route so each can check the
other.
"""

from __future__ import annotations

import operator

import numpy as np

from .permutations import as_forward, as_scores
from .submodular import GraphCut, SetFunction, is_monotone

__all__ = [
    "PartialOrder",
    "cardinality_divergence",
    "cut_divergence",
    "divergence_upper_bound",
    "lb_divergence",
    "partial_order_divergence",
    "top_m_divergence",
]

# Computed divergences this far below zero are rounding noise and clamp to
# exactly zero; anything lower signals a non-submodular function.
NEGATIVE_TOLERANCE = 1e-9


def _clamped(value: float) -> float:
    if value < 0.0:
        if value >= -NEGATIVE_TOLERANCE:
            return 0.0
        raise ValueError(
            f"divergence evaluated to {value:.6g} < 0; the set function is not submodular"
        )
    return value


def lb_divergence(fn: SetFunction, x, sigma) -> float:
    """Lovász-Bregman divergence ``fhat(x) - <x, h_sigma>``.

    Zero when ``sigma`` orders ``x`` decreasingly; independent of how ties
    in ``x`` are broken. Scores may be any finite reals: the value is
    positively homogeneous in ``x`` and invariant to adding a constant.
    """
    arr = as_scores(x, fn.n)
    h = fn.extreme_subgradient(sigma)
    return _clamped(fn.lovasz_extension(arr) - float(arr @ h))


def cut_divergence(weights, x, sigma) -> float:
    """Closed form of the divergence for a directed cut function.

    Each rank pair ``i < j`` contributes
    ``(weights[sigma[i], sigma[j]] + weights[sigma[j], sigma[i]])`` times the
    positive part of ``x[sigma[j]] - x[sigma[i]]``, so only pairs ranked
    against the data cost anything. Agrees with
    ``lb_divergence(GraphCut(weights), x, sigma)``.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights contain non-finite entries")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    if np.any(np.diag(w) != 0):
        raise ValueError("weights must have a zero diagonal")
    n = w.shape[0]
    arr = as_scores(x, n)
    fwd = as_forward(sigma, n)
    dp = w[np.ix_(fwd, fwd)]
    xs = arr[fwd]
    gaps = np.maximum(xs[None, :] - xs[:, None], 0.0)
    return float(np.triu((dp + dp.T) * gaps, k=1).sum())


def cardinality_divergence(increments, x, sigma) -> float:
    """Closed form for cardinality families: ``<sorted(x) - x[sigma], increments>``.

    ``increments`` must be nonincreasing. Agrees with
    ``lb_divergence(CardinalityConcave(increments), x, sigma)``.
    """
    inc = np.asarray(increments, dtype=float)
    if inc.ndim != 1 or inc.size == 0:
        raise ValueError("increments must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(inc)):
        raise ValueError("increments contain non-finite entries")
    if np.any(np.diff(inc) > 0):
        raise ValueError("increments must be nonincreasing")
    arr = as_scores(x, inc.size)
    fwd = as_forward(sigma, inc.size)
    ranked_best = -np.sort(-arr)
    return float((ranked_best - arr[fwd]) @ inc)


def top_m_divergence(increments, m: int, x, sigma) -> float:
    """Closed form for cardinality families truncated to the top ``m`` ranks.

    Only the first ``m`` increments matter. With unit increments this is the
    gap between the sum of the ``m`` largest scores and the sum of the first
    ``m`` scores under ``sigma``.
    """
    arr = as_scores(x)
    n = arr.size
    m = operator.index(m)
    if not 1 <= m <= n:
        raise ValueError(f"m must be in 1..{n}, got {m}")
    inc = np.asarray(increments, dtype=float)
    if inc.ndim != 1 or inc.size < m:
        raise ValueError(f"need at least {m} increments, got shape {inc.shape}")
    head = inc[:m]
    if not np.all(np.isfinite(head)):
        raise ValueError("increments contain non-finite entries")
    if np.any(np.diff(head) > 0):
        raise ValueError("increments must be nonincreasing up to the cutoff")
    if head[-1] < 0:
        raise ValueError("increment at the cutoff must be nonnegative")
    fwd = as_forward(sigma, n)
    ranked_best = -np.sort(-arr)
    return float((ranked_best[:m] - arr[fwd[:m]]) @ head)


class PartialOrder:
    """A weighted set of precedence constraints ``a must rank above b``."""

    def __init__(self, n: int, pairs, weights=None):
        n = operator.index(n)
        if n < 1:
            raise ValueError(f"ground set size must be positive, got {n}")
        cleaned: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for pair in pairs:
            a, b = pair
            a, b = operator.index(a), operator.index(b)
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a}, {b}) out of range for ground set of size {n}")
            if a == b:
                raise ValueError(f"pair ({a}, {b}) relates an item to itself")
            if (a, b) in seen:
                raise ValueError(f"duplicate pair ({a}, {b})")
            seen.add((a, b))
            cleaned.append((a, b))
        if weights is None:
            w = np.ones(len(cleaned))
        else:
            w = np.array(weights, dtype=float)
            if w.shape != (len(cleaned),):
                raise ValueError(f"expected {len(cleaned)} weights, got shape {w.shape}")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise ValueError("pair weights must be positive finite reals")
        self.n = n
        self.pairs = tuple(cleaned)
        self.weights = w
        self.weights.setflags(write=False)

    def as_graph_cut(self) -> GraphCut:
        """Directed cut whose extension charges each violated precedence."""
        w = np.zeros((self.n, self.n))
        for (a, b), weight in zip(self.pairs, self.weights):
            w[b, a] = weight
        return GraphCut(w)

    def __repr__(self) -> str:
        return f"PartialOrder(n={self.n}, pairs={list(self.pairs)})"


def partial_order_divergence(order: PartialOrder, x) -> float:
    """Total weighted violation of the precedence constraints by ``x``.

    Equals the sum over pairs ``(a, b)`` of ``weight * max(x[b] - x[a], 0)``,
    evaluated as the Lovász extension of the induced directed cut; zero
    exactly when ``x`` is consistent with the order.
    """
    arr = as_scores(x, order.n)
    return _clamped(order.as_graph_cut().lovasz_extension(arr))


def divergence_upper_bound(fn: SetFunction, x, check_monotone: bool = True) -> float:
    """Bound on the divergence to any ranking, for monotone ``fn``.

    Returns ``eps * n * (max_j f({j}) - min_j f(j | V - j))`` with ``eps``
    the score spread. Monotonicity is verified exhaustively unless
    ``check_monotone`` is False (required beyond the exhaustive limit).
    """
    arr = as_scores(x, fn.n)
    if check_monotone and not is_monotone(fn):
        raise ValueError("set function is not monotone; the bound does not apply")
    n = fn.n
    eps = float(arr.max() - arr.min())
    everything = tuple(range(n))
    full = fn._value(everything)
    singles = np.array([fn._value((j,)) for j in range(n)])
    last_gains = np.array(
        [full - fn._value(tuple(i for i in everything if i != j)) for j in range(n)]
    )
    return eps * n * float(singles.max() - last_gains.min())
