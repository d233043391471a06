"""Shared generators and brute-force utilities for the test suite."""

from __future__ import annotations

import time
from itertools import permutations as all_permutations

import numpy as np

from lovbreg import (
    CardinalityConcave,
    GenericOracle,
    GraphCut,
    Modular,
    SetFunction,
    TruncatedCardinality,
    lb_divergence,
)

SUITE_START = time.perf_counter()


def suite_elapsed() -> float:
    return time.perf_counter() - SUITE_START


def all_rankings(n: int) -> list[tuple[int, ...]]:
    """Every ranking of ``n`` items in lexicographic order."""
    return list(all_permutations(range(n)))


def divergences_to_all_rankings(fn: SetFunction, x) -> np.ndarray:
    """Divergence of ``x`` to every ranking, in lexicographic order."""
    arr = np.asarray(x, dtype=float)
    extension = fn.lovasz_extension(arr)
    values = []
    for ranking in all_rankings(fn.n):
        h = fn.extreme_subgradient(ranking)
        values.append(max(extension - float(arr @ h), 0.0))
    return np.array(values)


def random_scores(rng: np.random.Generator, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    return rng.uniform(low, high, size=n)


def strictly_ordered_scores(rng: np.random.Generator, n: int, min_gap: float = 0.05) -> np.ndarray:
    """Scores with all pairwise gaps at least ``min_gap``, in random item order."""
    gaps = rng.uniform(min_gap, 1.0, size=n)
    values = np.cumsum(gaps)
    return values[rng.permutation(n)]


def random_ranking(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    return tuple(int(i) for i in rng.permutation(n))


def random_cardinality(
    rng: np.random.Generator,
    n: int,
    strict: bool = False,
    monotone: bool = False,
) -> CardinalityConcave:
    low = 0.0 if monotone else -0.5
    inc = np.sort(rng.uniform(low, 1.0, size=n))[::-1]
    if strict:
        inc = inc + np.arange(n, 0, -1) * 1e-3
    return CardinalityConcave(inc)


def random_graph_cut(rng: np.random.Generator, n: int, symmetric: bool = False) -> GraphCut:
    w = rng.uniform(0.0, 1.0, size=(n, n))
    if symmetric:
        w = (w + w.T) / 2
    np.fill_diagonal(w, 0.0)
    return GraphCut(w)


def random_truncated(rng: np.random.Generator, n: int) -> TruncatedCardinality:
    inc = np.sort(rng.uniform(0.0, 1.0, size=n))[::-1]
    cutoff = int(rng.integers(1, n + 1))
    return TruncatedCardinality(inc, cutoff)


def random_modular(rng: np.random.Generator, n: int, nonnegative: bool = False) -> Modular:
    low = 0.0 if nonnegative else -1.0
    return Modular(rng.uniform(low, 1.0, size=n))


def random_coverage_oracle(rng: np.random.Generator, n: int, universe: int = 12) -> GenericOracle:
    """Random weighted coverage function: monotone submodular, exercised via callback."""
    element_weights = rng.uniform(0.1, 1.0, size=universe)
    covers = [frozenset(np.flatnonzero(rng.random(universe) < 0.45).tolist()) for _ in range(n)]

    def coverage(items: frozenset) -> float:
        covered: set[int] = set()
        for i in items:
            covered |= covers[i]
        return float(element_weights[sorted(covered)].sum()) if covered else 0.0

    return GenericOracle(n, coverage)


def tie_break_variants(x, limit: int = 6) -> list[tuple[int, ...]]:
    """Several rankings that all sort ``x`` decreasingly (tied blocks permuted)."""
    arr = np.asarray(x, dtype=float)
    base = np.argsort(-arr, kind="stable")
    variants = {tuple(int(i) for i in base)}
    blocks: list[list[int]] = []
    start = 0
    for pos in range(1, arr.size + 1):
        if pos == arr.size or arr[base[pos]] != arr[base[start]]:
            blocks.append([int(i) for i in base[start:pos]])
            start = pos
    for attempt in range(limit * 3):
        if len(variants) >= limit:
            break
        rng = np.random.default_rng(attempt)
        candidate: list[int] = []
        for block in blocks:
            candidate.extend(rng.permutation(block).tolist())
        variants.add(tuple(candidate))
    return sorted(variants)


def total_divergence(fn: SetFunction, rows, sigma) -> float:
    return float(sum(lb_divergence(fn, row, sigma) for row in np.asarray(rows, dtype=float)))
