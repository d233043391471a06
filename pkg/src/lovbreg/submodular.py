"""Submodular set functions, extreme subgradients, and the Lovász extension.

Every function here is normalized, ``f(empty) = 0``, and lives on the ground
set ``{0, ..., n-1}``. The central primitive is the greedy extreme
subgradient of the Lovász extension: for a ranking ``sigma``,

    h[sigma[j]] = f({sigma[0..j]}) - f({sigma[0..j-1]})

and the extension itself evaluates as ``fhat(x) = <x, h_{ordering_of(x)}>``.
"""

from __future__ import annotations

import operator
from typing import Callable, Iterable, Sequence

import numpy as np

from .permutations import as_forward, as_scores

__all__ = [
    "CardinalityConcave",
    "GenericOracle",
    "GraphCut",
    "Modular",
    "SetFunction",
    "SumFunction",
    "TruncatedCardinality",
    "default_set_function",
    "function_from_spec",
    "is_monotone",
    "is_submodular",
]

# Exhaustive checkers walk all 2^n subsets; beyond this they refuse.
MAX_EXHAUSTIVE_GROUND_SET = 14

_BATCH_ROWS = 4096


class SetFunction:
    """Base class for normalized set functions over ``{0, ..., n-1}``."""

    def __init__(self, n: int):
        n = operator.index(n)
        if n < 1:
            raise ValueError(f"ground set size must be positive, got {n}")
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    def _item_tuple(self, items) -> tuple[int, ...]:
        out = set()
        for raw in items:
            j = operator.index(raw)
            if not 0 <= j < self._n:
                raise ValueError(f"item {j} out of range for ground set of size {self._n}")
            out.add(j)
        return tuple(sorted(out))

    def value(self, items: Iterable[int]) -> float:
        """Evaluate ``f(S)`` for a set of items."""
        return self._value(self._item_tuple(items))

    __call__ = value

    def _value(self, items: tuple[int, ...]) -> float:
        raise NotImplementedError

    def marginal(self, j: int, items: Iterable[int]) -> float:
        """The gain ``f(S + j) - f(S)``; ``j`` must not already be in ``S``."""
        base = self._item_tuple(items)
        j = operator.index(j)
        if not 0 <= j < self._n:
            raise ValueError(f"item {j} out of range for ground set of size {self._n}")
        if j in base:
            raise ValueError(f"item {j} is already in the set")
        with_j = tuple(sorted(base + (j,)))
        return self._value(with_j) - self._value(base)

    def extreme_subgradient(self, sigma) -> np.ndarray:
        """Greedy extreme point of the Lovász subdifferential for ``sigma``.

        Entries telescope: they sum to ``f(V)`` for every ranking.
        """
        return self._subgradient_for_forward(as_forward(sigma, self._n))

    def _subgradient_for_forward(self, forward: np.ndarray) -> np.ndarray:
        # Generic telescoping along the chain of prefixes of the ranking.
        h = np.empty(self._n)
        prefix: list[int] = []
        prev = 0.0
        for item in forward:
            prefix.append(int(item))
            cur = self._value(tuple(sorted(prefix)))
            h[item] = cur - prev
            prev = cur
        return h

    def lovasz_extension(self, x) -> float:
        """Evaluate the Lovász extension at a finite score vector.

        The value does not depend on how ties in ``x`` are broken.
        """
        arr = as_scores(x, self._n)
        order = np.argsort(-arr, kind="stable")
        return float(arr @ self._subgradient_for_forward(order))

    def _check_rows(self, rows) -> np.ndarray:
        arr = np.asarray(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != self._n:
            raise ValueError(f"expected a 2-D array with {self._n} columns, got shape {arr.shape}")
        return arr

    def lovasz_extension_many(self, rows) -> np.ndarray:
        """Vectorized ``lovasz_extension`` over the rows of a 2-D array."""
        return np.array([self.lovasz_extension(row) for row in self._check_rows(rows)])

    def __add__(self, other):
        if isinstance(other, SetFunction):
            return SumFunction([self, other])
        return NotImplemented

    def to_spec(self) -> dict:
        """Tagged JSON-serializable description (family name plus parameters)."""
        raise TypeError(f"{type(self).__name__} is not serializable")


class GraphCut(SetFunction):
    """Directed cut function: ``f(S)`` sums ``weights[i, j]`` over ``i`` in ``S``, ``j`` outside.

    Weights must be nonnegative with a zero diagonal; symmetry is not
    required (directed weights carry partial-order penalties).
    """

    def __init__(self, weights):
        w = np.array(weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights contain non-finite entries")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diag(w) != 0):
            raise ValueError("weights must have a zero diagonal")
        super().__init__(w.shape[0])
        self.weights = w
        self.weights.setflags(write=False)

    def _value(self, items: tuple[int, ...]) -> float:
        if not items or len(items) == self._n:
            return 0.0
        inside = np.fromiter(items, dtype=np.intp)
        mask = np.zeros(self._n, dtype=bool)
        mask[inside] = True
        outside = np.flatnonzero(~mask)
        return float(self.weights[np.ix_(inside, outside)].sum())

    def _subgradient_for_forward(self, forward: np.ndarray) -> np.ndarray:
        dp = self.weights[np.ix_(forward, forward)]
        upper = np.triu(dp, k=1)
        h = np.empty(self._n)
        h[forward] = upper.sum(axis=1) - upper.sum(axis=0)
        return h

    def lovasz_extension_many(self, rows) -> np.ndarray:
        arr = self._check_rows(rows)
        out = np.empty(arr.shape[0])
        for start in range(0, arr.shape[0], _BATCH_ROWS):
            block = arr[start : start + _BATCH_ROWS]
            diffs = np.maximum(block[:, :, None] - block[:, None, :], 0.0)
            out[start : start + block.shape[0]] = np.einsum("rij,ij->r", diffs, self.weights)
        return out

    def to_spec(self) -> dict:
        return {"family": "graph_cut", "weights": self.weights.tolist()}


class CardinalityConcave(SetFunction):
    """Cardinality-based function ``f(S) = g(|S|)`` stored via its increments.

    ``increments[i]`` is ``g(i + 1) - g(i)`` and the sequence must be
    nonincreasing (concavity of ``g``), which makes ``f`` submodular.
    """

    def __init__(self, increments):
        inc = np.array(increments, dtype=float)
        if inc.ndim != 1 or inc.size == 0:
            raise ValueError("increments must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(inc)):
            raise ValueError("increments contain non-finite entries")
        if np.any(np.diff(inc) > 0):
            raise ValueError("increments must be nonincreasing")
        super().__init__(inc.size)
        self.increments = inc
        self.increments.setflags(write=False)
        self._cumulative = np.concatenate([[0.0], np.cumsum(inc)])

    @property
    def strictly_decreasing(self) -> bool:
        """True when increments strictly decrease.

        Sufficient for the divergence to vanish only at the ordering of the
        scores (every ranking then induces a distinct extreme subgradient).
        """
        return bool(np.all(np.diff(self.increments) < 0))

    def _value(self, items: tuple[int, ...]) -> float:
        return float(self._cumulative[len(items)])

    def _subgradient_for_forward(self, forward: np.ndarray) -> np.ndarray:
        h = np.empty(self._n)
        h[forward] = self.increments
        return h

    def lovasz_extension_many(self, rows) -> np.ndarray:
        return -np.sort(-self._check_rows(rows), axis=1) @ self.increments

    def to_spec(self) -> dict:
        return {"family": "cardinality_concave", "increments": self.increments.tolist()}


class TruncatedCardinality(CardinalityConcave):
    """Cardinality function restricted to the top ``cutoff`` ranks.

    Increments past the cutoff are zeroed, realizing
    ``f(S) = min(g(|S|), g(cutoff))``.
    """

    def __init__(self, increments, cutoff: int):
        base = np.array(increments, dtype=float)
        if base.ndim != 1 or base.size == 0:
            raise ValueError("increments must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(base)):
            raise ValueError("increments contain non-finite entries")
        cutoff = operator.index(cutoff)
        if not 1 <= cutoff <= base.size:
            raise ValueError(f"cutoff must be in 1..{base.size}, got {cutoff}")
        head = base[:cutoff]
        if np.any(np.diff(head) > 0):
            raise ValueError("increments must be nonincreasing up to the cutoff")
        if head[-1] < 0:
            raise ValueError("increment at the cutoff must be nonnegative")
        effective = np.zeros(base.size)
        effective[:cutoff] = head
        super().__init__(effective)
        self.base_increments = base
        self.base_increments.setflags(write=False)
        self.cutoff = cutoff

    def to_spec(self) -> dict:
        return {
            "family": "truncated_cardinality",
            "increments": self.base_increments.tolist(),
            "cutoff": self.cutoff,
        }


class Modular(SetFunction):
    """Additive function ``f(S) = sum of weights over S`` (any sign)."""

    def __init__(self, weights):
        w = np.array(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights contain non-finite entries")
        super().__init__(w.size)
        self.weights = w
        self.weights.setflags(write=False)

    def _value(self, items: tuple[int, ...]) -> float:
        if not items:
            return 0.0
        return float(self.weights[list(items)].sum())

    def _subgradient_for_forward(self, forward: np.ndarray) -> np.ndarray:
        return self.weights.copy()

    def lovasz_extension_many(self, rows) -> np.ndarray:
        return self._check_rows(rows) @ self.weights

    def to_spec(self) -> dict:
        return {"family": "modular", "weights": self.weights.tolist()}


class SumFunction(SetFunction):
    """Pointwise sum of set functions over the same ground set."""

    def __init__(self, members: Sequence[SetFunction]):
        members = tuple(members)
        if not members:
            raise ValueError("sum needs at least one member")
        sizes = {m.n for m in members}
        if len(sizes) != 1:
            raise ValueError(f"members disagree on ground set size: {sorted(sizes)}")
        super().__init__(members[0].n)
        flat: list[SetFunction] = []
        for m in members:
            flat.extend(m.members if isinstance(m, SumFunction) else [m])
        self.members = tuple(flat)

    def _value(self, items: tuple[int, ...]) -> float:
        return float(sum(m._value(items) for m in self.members))

    def _subgradient_for_forward(self, forward: np.ndarray) -> np.ndarray:
        h = self.members[0]._subgradient_for_forward(forward)
        for m in self.members[1:]:
            h = h + m._subgradient_for_forward(forward)
        return h

    def lovasz_extension_many(self, rows) -> np.ndarray:
        out = self.members[0].lovasz_extension_many(rows)
        for m in self.members[1:]:
            out = out + m.lovasz_extension_many(rows)
        return out

    def to_spec(self) -> dict:
        return {"family": "sum", "members": [m.to_spec() for m in self.members]}


class GenericOracle(SetFunction):
    """Set function defined by a callback, shifted so that ``f(empty) = 0``.

    The callback receives a frozenset of 0-indexed items and must be pure;
    that contract is documented, not enforced. Intended for tests and
    oracles, so it is not serializable.
    """

    def __init__(self, n: int, fn: Callable[[frozenset], float]):
        super().__init__(n)
        self.fn = fn
        self._offset = float(fn(frozenset()))

    def _value(self, items: tuple[int, ...]) -> float:
        return float(self.fn(frozenset(items))) - self._offset


def _value_table(fn: SetFunction) -> np.ndarray:
    """Values of ``fn`` over all subsets, indexed by bitmask."""
    n = fn.n
    if n > MAX_EXHAUSTIVE_GROUND_SET:
        raise ValueError(
            f"ground set too large for exhaustive check: n={n}, max {MAX_EXHAUSTIVE_GROUND_SET}"
        )
    table = np.empty(1 << n)
    for mask in range(1 << n):
        items = tuple(j for j in range(n) if mask >> j & 1)
        table[mask] = fn._value(items)
    return table


def is_submodular(fn: SetFunction, tol: float = 1e-9) -> bool:
    """Exhaustively test diminishing returns on every subset, pair by pair.

    Checks ``f(S+j) + f(S+k) >= f(S+j+k) + f(S)`` for all ``S`` and distinct
    ``j, k`` outside ``S``, which is equivalent to submodularity. Raises
    ValueError when the ground set exceeds the exhaustive-check limit.
    """
    table = _value_table(fn)
    n = fn.n
    masks = np.arange(1 << n)
    for j in range(n):
        bj = 1 << j
        for k in range(j + 1, n):
            bk = 1 << k
            s = masks[(masks & bj == 0) & (masks & bk == 0)]
            if np.any(table[s | bj] + table[s | bk] < table[s | bj | bk] + table[s] - tol):
                return False
    return True


def is_monotone(fn: SetFunction, tol: float = 1e-9) -> bool:
    """Exhaustively test that every singleton gain is nonnegative."""
    table = _value_table(fn)
    n = fn.n
    masks = np.arange(1 << n)
    for j in range(n):
        bj = 1 << j
        s = masks[masks & bj == 0]
        if np.any(table[s | bj] < table[s] - tol):
            return False
    return True


def default_set_function(n: int) -> CardinalityConcave:
    """Strictly concave cardinality function with increments ``n, n-1, ..., 1``."""
    return CardinalityConcave(np.arange(n, 0, -1, dtype=float))


_FAMILY_KEYS = {
    "graph_cut": {"weights"},
    "cardinality_concave": {"increments"},
    "truncated_cardinality": {"increments", "cutoff"},
    "modular": {"weights"},
    "sum": {"members"},
}


def function_from_spec(spec: dict, n: int | None = None) -> SetFunction:
    """Build a set function from its tagged JSON description.

    ``n``, when given, is checked against the ground set size implied by the
    parameters.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"function spec must be a JSON object, got {type(spec).__name__}")
    family = spec.get("family")
    if family not in _FAMILY_KEYS:
        raise ValueError(f"unknown set function family: {family!r}")
    extra = set(spec) - _FAMILY_KEYS[family] - {"family"}
    if extra:
        raise ValueError(f"unexpected keys for family {family!r}: {sorted(extra)}")
    missing = _FAMILY_KEYS[family] - set(spec)
    if missing:
        raise ValueError(f"missing keys for family {family!r}: {sorted(missing)}")

    if family == "graph_cut":
        fn: SetFunction = GraphCut(spec["weights"])
    elif family == "cardinality_concave":
        fn = CardinalityConcave(spec["increments"])
    elif family == "truncated_cardinality":
        fn = TruncatedCardinality(spec["increments"], spec["cutoff"])
    elif family == "modular":
        fn = Modular(spec["weights"])
    else:
        fn = SumFunction([function_from_spec(m, n) for m in spec["members"]])
    if n is not None and fn.n != n:
        raise ValueError(f"function spec is over {fn.n} items, expected {n}")
    return fn
