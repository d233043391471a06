"""K-means-style clustering of score vectors with ranking representatives.

Each cluster is summarized by a permutation; the objective is the total
divergence of the member vectors to their cluster's ranking. The update
step is closed form (ordering of the cluster mean), so each iteration is
an assignment sweep plus a handful of sorts.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field

import numpy as np

from .aggregation import as_score_matrix
from .divergence import lb_divergence
from .permutations import Permutation, ordering_of
from .submodular import SetFunction

__all__ = ["ClusteringResult", "clustering_objective", "kmeans_cluster"]

CONVERGENCE_TOLERANCE = 1e-9


@dataclass
class ClusteringResult:
    """Outcome of a clustering run.

    ``assignments[i]`` is the cluster index of input vector ``i``;
    ``objective_trace`` holds the objective after each iteration and is
    nonincreasing.
    """

    assignments: np.ndarray
    representatives: list[Permutation]
    objective_trace: list[float] = field(default_factory=list)
    iterations: int = 0
    seed: int = 0

    @property
    def k(self) -> int:
        return len(self.representatives)

    def to_json_dict(self) -> dict:
        """JSON form: cluster ids stay 0-indexed, rankings are 1-indexed item lists."""
        return {
            "assignments": self.assignments.tolist(),
            "representatives": [rep.to_one_based() for rep in self.representatives],
            "objective_trace": self.objective_trace,
            "iterations": self.iterations,
            "seed": self.seed,
        }


def clustering_objective(scores, assignments, representatives, fn: SetFunction) -> float:
    """Total divergence of every vector to its assigned cluster's ranking."""
    x = as_score_matrix(scores)
    assign = np.asarray(assignments)
    if assign.shape != (x.shape[0],):
        raise ValueError(f"expected {x.shape[0]} assignments, got shape {assign.shape}")
    k = len(representatives)
    if assign.size and (assign.min() < 0 or assign.max() >= k):
        raise ValueError(f"assignments reference clusters outside 0..{k - 1}")
    return float(
        sum(lb_divergence(fn, x[i], representatives[int(assign[i])]) for i in range(x.shape[0]))
    )


def _divergence_matrix(x: np.ndarray, reps: list[Permutation], fn: SetFunction) -> np.ndarray:
    return np.array([[lb_divergence(fn, row, rep) for rep in reps] for row in x])


def kmeans_cluster(
    scores,
    k: int,
    fn: SetFunction,
    *,
    seed: int = 0,
    max_iter: int = 100,
) -> ClusteringResult:
    """Cluster score vectors under the divergence induced by ``fn``.

    Alternates assignment to the nearest ranking (ties to the lowest
    cluster index) with the closed-form update of each representative to
    the ordering of its cluster mean. An emptied cluster is reseeded with
    the ordering of the worst-fitting vector. Deterministic given
    ``(scores, k, fn, seed)``.
    """
    x = as_score_matrix(scores)
    m = x.shape[0]
    k = operator.index(k)
    if not 1 <= k <= m:
        raise ValueError(f"k must be in 1..{m}, got {k}")
    max_iter = operator.index(max_iter)
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if fn.n != x.shape[1]:
        raise ValueError(f"set function over {fn.n} items, expected {x.shape[1]}")

    rng = np.random.default_rng(seed)
    reps = [ordering_of(x[i]) for i in rng.choice(m, size=k, replace=False)]

    trace: list[float] = []
    previous: np.ndarray | None = None
    for _ in range(max_iter):
        divergences = _divergence_matrix(x, reps, fn)
        assign = divergences.argmin(axis=1)

        # Reseed empty clusters with the worst-fitting vector's ordering.
        for _repair in range(k):
            occupied = np.bincount(assign, minlength=k) > 0
            if occupied.all():
                break
            j = int(np.flatnonzero(~occupied)[0])
            current_cost = divergences[np.arange(m), assign]
            worst = int(np.argmax(current_cost))
            reps[j] = ordering_of(x[worst])
            divergences[:, j] = [lb_divergence(fn, row, reps[j]) for row in x]
            assign = divergences.argmin(axis=1)
            assign[worst] = j

        converged = previous is not None and np.array_equal(assign, previous)
        previous = assign
        if not converged:
            for j in range(k):
                members = x[assign == j]
                if members.shape[0]:
                    reps[j] = ordering_of(members.mean(axis=0))
        trace.append(clustering_objective(x, assign, reps, fn))
        if converged:
            break

    assert previous is not None
    return ClusteringResult(
        assignments=previous,
        representatives=reps,
        objective_trace=trace,
        iterations=len(trace),
        seed=int(seed),
    )
