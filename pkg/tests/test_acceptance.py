"""Acceptance gate: one test per criterion, each printing a pass/fail line.

This module runs last (see conftest) so the final runtime criterion covers
the whole suite. Every tolerance here is pinned; nothing is calibrated at
run time.
"""

import math
import time
from itertools import permutations as all_permutations

import numpy as np

from lovbreg import (
    CardinalityConcave,
    GoodBadSplit,
    GraphCut,
    MallowsModel,
    Permutation,
    auc_as_lb,
    auc_loss,
    brute_force_representative,
    cardinality_divergence,
    cut_divergence,
    divergence_upper_bound,
    extended_mallows_pmf,
    kendall_tau,
    kmeans_cluster,
    lb_divergence,
    ndcg_as_lb,
    ndcg_loss,
    ordering_of,
    relabel_scores,
    representative,
    top_m_divergence,
)

import helpers
from helpers import (
    random_cardinality,
    random_coverage_oracle,
    random_graph_cut,
    random_modular,
    random_ranking,
    random_scores,
    random_truncated,
    strictly_ordered_scores,
    tie_break_variants,
)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance] {criterion}: {status}{suffix}")
    assert ok, f"{criterion}{suffix}"


def unit_complete_cut(n):
    return GraphCut(np.ones((n, n)) - np.eye(n))


def value_table(fn):
    n = fn.n
    table = np.empty(1 << n)
    for mask in range(1 << n):
        table[mask] = fn.value(tuple(j for j in range(n) if mask >> j & 1))
    return table


def all_divergences(fn, x):
    """Divergence of x to every ranking via the definitional chain route."""
    n = fn.n
    x = np.asarray(x, dtype=float)
    perms = np.array(list(all_permutations(range(n))), dtype=np.int64)
    table = value_table(fn)
    masks = np.bitwise_or.accumulate(1 << perms, axis=1)
    prefix_values = table[masks]
    gains = np.diff(np.concatenate([np.zeros((len(perms), 1)), prefix_values], axis=1), axis=1)
    dots = (x[perms] * gains).sum(axis=1)
    return np.maximum(fn.lovasz_extension(x) - dots, 0.0), perms


def test_criterion_01_closed_forms_match_the_definition():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        x = random_scores(rng, n)
        sigma = random_ranking(rng, n)

        cut = random_graph_cut(rng, n)
        worst = max(worst, abs(cut_divergence(cut.weights, x, sigma) - lb_divergence(cut, x, sigma)))

        card = random_cardinality(rng, n)
        worst = max(
            worst,
            abs(cardinality_divergence(card.increments, x, sigma) - lb_divergence(card, x, sigma)),
        )

        trunc = random_truncated(rng, n)
        worst = max(
            worst,
            abs(
                top_m_divergence(trunc.base_increments, trunc.cutoff, x, sigma)
                - lb_divergence(trunc, x, sigma)
            ),
        )

        m = int(rng.integers(1, n + 1))
        flat = np.ones(n)
        worst = max(
            worst,
            abs(
                top_m_divergence(flat, m, x, sigma)
                - lb_divergence(CardinalityConcave(np.where(np.arange(n) < m, 1.0, 0.0)), x, sigma)
            ),
        )
    elapsed = time.perf_counter() - start
    report(
        "criterion 01 closed-form/oracle equivalence",
        worst < 1e-9 and elapsed < 10.0,
        f"max error {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_02_mean_ordering_is_the_exhaustive_argmin():
    rng = np.random.default_rng(102)
    start = time.perf_counter()
    worst_gap = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 8))
        m = int(rng.integers(1, 11))
        rows = rng.uniform(size=(m, n))
        for fn in (random_cardinality(rng, n, strict=True), unit_complete_cut(n)):
            _, best = brute_force_representative(rows, fn)
            fast = float(
                sum(lb_divergence(fn, row, representative(rows)) for row in rows)
            )
            worst_gap = max(worst_gap, fast - best)
    elapsed = time.perf_counter() - start
    report(
        "criterion 02 closed-form representative matches brute force",
        worst_gap <= 1e-9 and elapsed < 60.0,
        f"max objective gap {worst_gap:.2e}, {elapsed:.1f}s",
    )


def test_criterion_03_worked_micro_example():
    rows = np.array([[1.9, 2.0], [1.8, 2.0], [1.95, 2.0], [2.0, 1.0], [2.5, 1.2]])
    mean = rows.mean(axis=0)
    ok = bool(
        np.all(np.abs(mean - np.array([2.03, 1.64])) <= 1e-12)
        and representative(rows) == Permutation.from_one_based([1, 2])
    )
    report("criterion 03 worked two-item aggregation example", ok, f"mean {mean.tolist()}")


def test_criterion_04_kendall_tau_recovery():
    rng = np.random.default_rng(104)
    constants = []
    worst_var = 0.0
    for n in (2, 3, 4, 5, 6):
        x = strictly_ordered_scores(rng, n)
        w = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i != j:
                    w[i, j] = 1.0 / abs(x[i] - x[j])
        fn = GraphCut(w)
        sigma_x = ordering_of(x)
        ratios = []
        for ranking in all_permutations(range(n)):
            tau = kendall_tau(sigma_x, Permutation(ranking))
            value = lb_divergence(fn, x, ranking)
            if tau:
                ratios.append(value / tau)
            elif value > 1e-9:
                report("criterion 04 Kendall-tau recovery", False, "nonzero at zero tau")
        ratios = np.array(ratios)
        if ratios.size:
            worst_var = max(worst_var, float(ratios.var()))
            constants.append(float(ratios.mean()))
    constant = float(np.mean(constants))
    ok = worst_var < 1e-12 and abs(constant - 2.0) < 1e-9
    report(
        "criterion 04 Kendall-tau recovery",
        ok,
        f"constant c = {constant:.12g} (ordered-pair convention), ratio variance {worst_var:.2e}",
    )


def test_criterion_05_ndcg_and_auc_bridges():
    rng = np.random.default_rng(105)
    worst_ndcg = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 7))
        r = rng.uniform(0.0, 3.0, size=n)
        r[int(rng.integers(n))] += 0.5
        k = int(rng.integers(1, n + 1))
        fn, scale = ndcg_as_lb(r, k)
        for sigma in all_permutations(range(n)):
            gap = abs(lb_divergence(fn, r, sigma) / scale - ndcg_loss(r, sigma, k))
            worst_ndcg = max(worst_ndcg, gap)

    worst_auc = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 7))
        items = list(range(n))
        rng.shuffle(items)
        good_size = int(rng.integers(1, n))
        keep = int(rng.integers(good_size + 1, n + 1))
        split = GoodBadSplit(n, items[:good_size], items[good_size:keep])
        fn, x = auc_as_lb(split)
        pairs = [
            (lb_divergence(fn, x, sigma), auc_loss(sigma, split))
            for sigma in all_permutations(range(n))
        ]
        ratios = [lb / loss for lb, loss in pairs if loss > 0]
        zeros_ok = all(lb <= 1e-12 for lb, loss in pairs if loss == 0)
        spread = (max(ratios) - min(ratios)) if ratios else 0.0
        if not zeros_ok:
            worst_auc = np.inf
        worst_auc = max(worst_auc, spread)
    ok = worst_ndcg < 1e-9 and worst_auc < 1e-9
    report(
        "criterion 05 NDCG and AUC bridges",
        ok,
        f"ndcg max error {worst_ndcg:.2e}, auc ratio spread {worst_auc:.2e}",
    )


def test_criterion_06_spread_bound_for_monotone_functions():
    rng = np.random.default_rng(106)
    violations = 0
    for trial in range(100):
        n = int(rng.integers(2, 8))
        kind = trial % 3
        if kind == 0:
            fn = random_cardinality(rng, n, monotone=True)
        elif kind == 1:
            fn = random_cardinality(rng, n, monotone=True) + random_modular(
                rng, n, nonnegative=True
            )
        else:
            fn = random_coverage_oracle(rng, n)
        x = random_scores(rng, n)
        divergences, _ = all_divergences(fn, x)
        bound = divergence_upper_bound(fn, x)
        eps = float(x.max() - x.min())
        loose = eps * n * max(fn.value((j,)) for j in range(n))
        if divergences.max() > bound + 1e-9 or bound > loose + 1e-9:
            violations += 1
    report(
        "criterion 06 spread bound dominates every ranking",
        violations == 0,
        f"{violations} violations in 100 monotone instances",
    )


def test_criterion_07_left_invariance_for_cardinality_families():
    rng = np.random.default_rng(107)
    worst = 0.0
    for trial in range(500):
        n = int(rng.integers(2, 8))
        fn = random_cardinality(rng, n)
        if trial % 3 == 0:
            fn = fn + random_cardinality(rng, n)
        x = random_scores(rng, n)
        sigma = Permutation(random_ranking(rng, n))
        tau = Permutation(random_ranking(rng, n))
        lhs = lb_divergence(fn, x, sigma)
        rhs = lb_divergence(fn, relabel_scores(tau, x), tau.compose(sigma))
        worst = max(worst, abs(lhs - rhs))
    report(
        "criterion 07 left invariance for cardinality families",
        worst < 1e-12,
        f"max error {worst:.2e} over 500 triples",
    )


def test_criterion_08_rank_priority():
    ok = True
    detail = []
    for n in range(3, 9):
        for increments in (1.0 / np.arange(1, n + 1), 0.6 ** np.arange(1, n + 1)):
            fn = CardinalityConcave(increments)
            x = np.linspace(1.0, 0.0, n)
            fwd = ordering_of(x).forward
            costs = []
            for k in range(n - 1):
                swapped = fwd.copy()
                swapped[[k, k + 1]] = swapped[[k + 1, k]]
                costs.append(lb_divergence(fn, x, swapped))
            strictly_decreasing = all(
                costs[i] > costs[i + 1] for i in range(len(costs) - 1)
            )
            ok = ok and strictly_decreasing
            if not strictly_decreasing:
                detail.append(f"n={n}")
    report(
        "criterion 08 adjacent-swap cost decreases down the ranking",
        ok,
        "strict for 1/i and geometric increments, n = 3..8" if ok else ", ".join(detail),
    )


def test_criterion_09_structural_properties():
    rng = np.random.default_rng(109)
    failures = []

    def check(name, ok):
        if not ok:
            failures.append(name)

    # Non-negativity across families.
    nonneg = True
    for _ in range(200):
        n = int(rng.integers(2, 7))
        for fn in (random_cardinality(rng, n), random_graph_cut(rng, n), random_truncated(rng, n)):
            nonneg &= lb_divergence(fn, random_scores(rng, n), random_ranking(rng, n)) >= 0.0
    check("non-negativity", nonneg)

    # Zero iff the data ordering, for strictly decreasing increments.
    zero_iff = True
    for n in (2, 3, 4, 5):
        fn = random_cardinality(rng, n, strict=True)
        x = strictly_ordered_scores(rng, n)
        sigma_x = ordering_of(x)
        for ranking in all_permutations(range(n)):
            value = lb_divergence(fn, x, ranking)
            if Permutation(ranking) == sigma_x:
                zero_iff &= value == 0.0
            else:
                zero_iff &= value > 1e-9
    check("zero-iff-ordering", zero_iff)

    # Midpoint convexity, 1000 sampled pairs.
    convex = True
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        fn = random_cardinality(rng, n)
        sigma = random_ranking(rng, n)
        x, y = random_scores(rng, n), random_scores(rng, n)
        mid = lb_divergence(fn, (x + y) / 2, sigma)
        convex &= mid <= (lb_divergence(fn, x, sigma) + lb_divergence(fn, y, sigma)) / 2 + 1e-9
    check("midpoint convexity", convex)

    # Linearity in the function and modular-shift equivalence.
    linear = True
    modular_shift = True
    for _ in range(200):
        n = int(rng.integers(2, 7))
        f1 = random_cardinality(rng, n)
        f2 = random_graph_cut(rng, n)
        x = random_scores(rng, n)
        sigma = random_ranking(rng, n)
        combined = lb_divergence(f1 + f2, x, sigma)
        linear &= abs(combined - lb_divergence(f1, x, sigma) - lb_divergence(f2, x, sigma)) < 1e-9
        shifted = lb_divergence(f1 + random_modular(rng, n), x, sigma)
        modular_shift &= abs(shifted - lb_divergence(f1, x, sigma)) < 1e-9
    check("linearity in f", linear)
    check("modular-shift equivalence", modular_shift)

    # Positive homogeneity and shift invariance in the scores.
    homogeneous = True
    shift_invariant = True
    for _ in range(200):
        n = int(rng.integers(2, 7))
        fn = random_truncated(rng, n)
        x = random_scores(rng, n)
        sigma = random_ranking(rng, n)
        base = lb_divergence(fn, x, sigma)
        homogeneous &= abs(lb_divergence(fn, 2.5 * x, sigma) - 2.5 * base) < 1e-9
        shift_invariant &= abs(lb_divergence(fn, x + 3.0, sigma) - base) < 1e-9
    check("positive homogeneity", homogeneous)
    check("shift invariance", shift_invariant)

    # Tie-break independence of the extension value.
    ties_ok = True
    for _ in range(100):
        n = int(rng.integers(3, 7))
        x = rng.choice([0.2, 0.5, 0.9], size=n)
        fn = random_cardinality(rng, n)
        reference = fn.lovasz_extension(x)
        for variant in tie_break_variants(x, limit=4):
            ties_ok &= abs(float(x @ fn.extreme_subgradient(variant)) - reference) < 1e-9
    check("tie-break independence", ties_ok)

    report(
        "criterion 09 structural properties",
        not failures,
        "all eight hold at 1e-9" if not failures else "failed: " + ", ".join(failures),
    )


def test_criterion_10_clustering_behavior():
    rng = np.random.default_rng(110)
    fn3 = CardinalityConcave([3.0, 2.0, 1.0])

    monotone_ok = True
    for seed in range(100):
        rows = rng.uniform(size=(int(rng.integers(4, 10)), 3))
        result = kmeans_cluster(rows, 2, fn3, seed=seed)
        trace = result.objective_trace
        monotone_ok &= all(trace[i + 1] <= trace[i] + 1e-9 for i in range(len(trace) - 1))

    reduction_ok = True
    for seed in range(10):
        rows = rng.uniform(size=(6, 4))
        result = kmeans_cluster(rows, 1, CardinalityConcave([4.0, 3.0, 2.0, 1.0]), seed=seed)
        reduction_ok &= result.representatives[0] == representative(rows)

    recovered = 0
    for seed in range(100):
        noise_rng = np.random.default_rng(1000 + seed)
        group_a = np.array([1.0, 0.5, 0.0]) + noise_rng.uniform(-0.03, 0.03, size=(4, 3))
        group_b = np.array([0.0, 0.5, 1.0]) + noise_rng.uniform(-0.03, 0.03, size=(4, 3))
        rows = np.vstack([group_a, group_b])
        result = kmeans_cluster(rows, 2, fn3, seed=seed)
        labels = result.assignments
        if len(set(labels[:4].tolist())) == 1 and len(set(labels[4:].tolist())) == 1 and (
            labels[0] != labels[4]
        ):
            recovered += 1

    ok = monotone_ok and reduction_ok and recovered >= 95
    report(
        "criterion 10 clustering",
        ok,
        f"trace monotone on 100 runs, k=1 reduces, planted partition {recovered}/100",
    )


def test_criterion_11_mallows_models():
    fn = CardinalityConcave([1.5, 0.7, 0.2])

    z_zero = MallowsModel(fn, 0.0).estimate_partition((0, 1, 2), num_samples=1000, seed=0)
    zero_ok = z_zero.estimate == 1.0 and z_zero.std_error == 0.0

    agreement_ok = True
    for theta in (0.5, 1.0, 2.0):
        model = MallowsModel(fn, theta)
        estimates = [
            model.estimate_partition(sigma, num_samples=100_000, seed=23)
            for sigma in all_permutations(range(3))
        ]
        for i in range(len(estimates)):
            for j in range(i + 1, len(estimates)):
                gap = abs(estimates[i].estimate - estimates[j].estimate)
                combined = math.hypot(estimates[i].std_error, estimates[j].std_error)
                agreement_ok &= gap <= 3.0 * combined

    rng = np.random.default_rng(111)
    rows = rng.uniform(size=(5, 4))
    fn4 = CardinalityConcave([2.0, 1.3, 0.6, 0.1])
    pmf = extended_mallows_pmf(np.ones(5), rows, fn4)
    sums_ok = abs(sum(pmf.values()) - 1.0) < 1e-12
    winner, _ = brute_force_representative(rows, fn4)
    argmax_ok = max(pmf, key=pmf.get) == winner

    ok = zero_ok and agreement_ok and sums_ok and argmax_ok
    report(
        "criterion 11 Mallows models",
        ok,
        f"Z(0) exact, Z agreement within 3 SE, pmf sum error {abs(sum(pmf.values()) - 1.0):.1e}",
    )


def test_criterion_12_runtime_budget():
    elapsed = helpers.suite_elapsed()
    report(
        "criterion 12 whole-suite runtime budget",
        elapsed < 300.0,
        f"{elapsed:.1f}s since collection",
    )
