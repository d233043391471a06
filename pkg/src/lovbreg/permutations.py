"""Permutations, score orderings, and classical rank distance metrics.

A ranking of ``n`` items is a bijection from ranks to items: position ``i``
of the forward sequence holds the item placed at rank ``i`` (rank 0 is the
top). Items and ranks are 0-indexed throughout the Python API; the JSON
wire format used by the CLI is 1-indexed.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Permutation",
    "as_forward",
    "as_scores",
    "kendall_tau",
    "ordering_of",
    "rank_correlation",
    "relabel_scores",
    "spearman_footrule",
    "weighted_kendall_tau",
]


def as_scores(x, n: int | None = None) -> np.ndarray:
    """Validate a score vector: one-dimensional, finite, optionally of length ``n``."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"score vector must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("score vector is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("score vector contains non-finite entries")
    if n is not None and arr.size != n:
        raise ValueError(f"expected {n} scores, got {arr.size}")
    return arr


class Permutation:
    """An ordering of ``n`` items; ``forward[i]`` is the item at rank ``i``.

    Instances are immutable and hashable. The inverse (the rank of each
    item) is computed once and cached.
    """

    __slots__ = ("_forward", "_inverse")

    def __init__(self, forward: Iterable[int]):
        arr = np.array(forward if isinstance(forward, np.ndarray) else list(forward))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("permutation must be a non-empty sequence of item indices")
        if not np.issubdtype(arr.dtype, np.integer):
            cast = arr.astype(np.intp)
            if not np.array_equal(cast, arr):
                raise ValueError("permutation entries must be integers")
            arr = cast
        else:
            arr = arr.astype(np.intp)
        n = arr.size
        if arr.min() < 0 or arr.max() >= n or not np.all(np.bincount(arr, minlength=n) == 1):
            raise ValueError(f"not a bijection on 0..{n - 1}: {arr.tolist()}")
        arr.setflags(write=False)
        self._forward = arr
        self._inverse: Permutation | None = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @classmethod
    def from_one_based(cls, items: Iterable[int]) -> "Permutation":
        """Build from 1-indexed item ids in rank order (the external JSON format)."""
        return cls(np.array(list(items)) - 1)

    def to_one_based(self) -> list[int]:
        """1-indexed item ids in rank order, for JSON serialization."""
        return (self._forward + 1).tolist()

    @property
    def n(self) -> int:
        return int(self._forward.size)

    @property
    def forward(self) -> np.ndarray:
        """Read-only array; entry ``i`` is the item at rank ``i``."""
        return self._forward

    @property
    def inverse(self) -> "Permutation":
        """The inverse permutation: entry ``j`` is the rank of item ``j``."""
        if self._inverse is None:
            inv = np.empty_like(self._forward)
            inv[self._forward] = np.arange(self._forward.size)
            inv.setflags(write=False)
            other = object.__new__(Permutation)
            other._forward = inv
            other._inverse = self
            self._inverse = other
        return self._inverse

    @property
    def ranks(self) -> np.ndarray:
        """Read-only array of ranks by item (alias for ``inverse.forward``)."""
        return self.inverse._forward

    def compose(self, other: "Permutation") -> "Permutation":
        """Composition: ``self.compose(other)`` maps rank ``i`` to ``self(other(i))``."""
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return Permutation(self._forward[other._forward])

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self._forward.tolist())

    def __getitem__(self, rank: int) -> int:
        return int(self._forward[rank])

    def __eq__(self, other) -> bool:
        if isinstance(other, Permutation):
            return np.array_equal(self._forward, other._forward)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._forward.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self._forward.tolist()})"


def as_forward(sigma, n: int) -> np.ndarray:
    """Validated forward array of a ranking given as a Permutation or item sequence."""
    perm = sigma if isinstance(sigma, Permutation) else Permutation(sigma)
    if perm.n != n:
        raise ValueError(f"permutation over {perm.n} items, expected {n}")
    return perm.forward


def ordering_of(x) -> Permutation:
    """The ranking that sorts scores into decreasing order.

    Ties are broken by ascending item index, so the result is deterministic.
    Raises ValueError on non-finite scores.
    """
    arr = as_scores(x)
    return Permutation(np.argsort(-arr, kind="stable"))


def relabel_scores(tau: Permutation, x) -> np.ndarray:
    """Relabel scores by ``tau``: output ``i`` is ``x[tau.inverse[i]]``.

    For tie-free ``x`` this commutes with sorting:
    ``ordering_of(relabel_scores(tau, x)) == tau.compose(ordering_of(x))``.
    """
    arr = as_scores(x, tau.n)
    out = np.empty_like(arr)
    out[tau.forward] = arr
    return out


def _composition_ranks(sigma: Permutation, pi: Permutation) -> np.ndarray:
    if sigma.n != pi.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {pi.n}")
    return sigma.ranks[pi.forward]


def kendall_tau(sigma: Permutation, pi: Permutation) -> int:
    """Number of discordant pairs between two rankings (swap distance)."""
    r = _composition_ranks(sigma, pi)
    return int(np.sum(np.triu(r[:, None] > r[None, :], k=1)))


def weighted_kendall_tau(sigma: Permutation, pi: Permutation, weights) -> float:
    """Sum of ``weights[i, j]`` over discordant position pairs ``i < j``.

    ``weights`` is an ``n x n`` matrix of nonnegative pair weights; only the
    strict upper triangle is consulted. With unit weights this equals
    ``kendall_tau``.
    """
    w = np.asarray(weights, dtype=float)
    if w.shape != (sigma.n, sigma.n):
        raise ValueError(f"weights must have shape ({sigma.n}, {sigma.n}), got {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights contain non-finite entries")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    r = _composition_ranks(sigma, pi)
    discordant = np.triu(r[:, None] > r[None, :], k=1)
    return float((w * discordant).sum())


def spearman_footrule(sigma: Permutation, pi: Permutation) -> int:
    """Sum of absolute rank displacements between two rankings."""
    if sigma.n != pi.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {pi.n}")
    return int(np.abs(sigma.ranks - pi.ranks).sum())


def rank_correlation(sigma: Permutation, pi: Permutation) -> int:
    """Sum of squared rank displacements between two rankings."""
    if sigma.n != pi.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {pi.n}")
    d = sigma.ranks - pi.ranks
    return int((d * d).sum())
