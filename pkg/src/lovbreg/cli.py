"""Command-line interface: batch commands reading score files, emitting JSON.

Every invocation writes a single JSON document
``{"command", "config", "result", "version"}`` (or ``{"command", "error",
"version"}`` with a nonzero exit status) so runs are reproducible from the
echoed configuration. Items in all external formats are 1-indexed; score
files are CSV (rows = voters / engines / features, columns = items) or a
JSON array of arrays.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .aggregation import confidence, representative
from .clustering import kmeans_cluster
from .divergence import lb_divergence
from .mallows import MallowsModel, extended_mallows_pmf
from .permutations import (
    Permutation,
    kendall_tau,
    rank_correlation,
    spearman_footrule,
)
from .ranking_measures import GoodBadSplit, auc_as_lb, auc_loss, ndcg_as_lb, ndcg_loss
from .submodular import SetFunction, default_set_function, function_from_spec, is_submodular

SEED_ENV_VAR = "LOVBREG_SEED"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc


def parse_scores(path: str, fmt: str | None = None, header: bool = False) -> np.ndarray:
    """Read a score matrix from CSV or JSON (rows = vectors, columns = items)."""
    text = Path(path).read_text(encoding="utf-8")
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "csv"
    if fmt == "json":
        data = json.loads(text)
        if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
            raise ValueError("JSON scores must be a non-empty array of arrays")
        rows = data
    elif fmt == "csv":
        lines = [line for line in text.splitlines() if line.strip()]
        if header:
            lines = lines[1:]
        if not lines:
            raise ValueError("no data rows in CSV input")
        rows = []
        for number, line in enumerate(lines, start=1):
            cells = [cell.strip() for cell in line.split(",")]
            row = []
            for column, cell in enumerate(cells, start=1):
                try:
                    row.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"row {number}, column {column}: not a number: {cell!r}"
                    ) from None
            rows.append(row)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'json'")

    width = len(rows[0])
    for number, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"row {number}: expected {width} values, got {len(row)}")
    arr = np.asarray(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("scores contain non-finite values")
    return arr


def _load_function(text: str | None, n: int) -> SetFunction:
    """Resolve --function: inline JSON, a file path, or the documented default."""
    if text is None:
        return default_set_function(n)
    stripped = text.strip()
    if stripped.startswith("{"):
        spec = json.loads(stripped)
    else:
        spec = json.loads(Path(stripped).read_text(encoding="utf-8"))
    return function_from_spec(spec, n)


def _parse_permutation(text: str, flag: str) -> Permutation:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{flag} must be a JSON array of 1-indexed items: {exc}") from None
    if not isinstance(items, list):
        raise ValueError(f"{flag} must be a JSON array of 1-indexed items")
    return Permutation.from_one_based(items)


def _parse_items(text: str, flag: str) -> list[int]:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{flag} must be a JSON array of 1-indexed items: {exc}") from None
    if not isinstance(items, list) or not all(isinstance(i, int) for i in items):
        raise ValueError(f"{flag} must be a JSON array of 1-indexed items")
    return [i - 1 for i in items]


def _single_row(matrix: np.ndarray, what: str) -> np.ndarray:
    if matrix.shape[0] != 1:
        raise ValueError(f"{what} expects exactly one row of scores, got {matrix.shape[0]}")
    return matrix[0]


# ---------------------------------------------------------------------------
# command handlers: each returns (result, config)


def _cmd_divergence(args) -> tuple[dict, dict]:
    matrix = parse_scores(args.input, args.format, args.header)
    x = _single_row(matrix, "divergence")
    sigma = _parse_permutation(args.sigma, "--sigma")
    fn = _load_function(args.function, x.size)
    value = lb_divergence(fn, x, sigma)
    config = {
        "input": args.input,
        "sigma": sigma.to_one_based(),
        "function": fn.to_spec(),
    }
    return {"divergence": value}, config


def _cmd_aggregate(args) -> tuple[dict, dict]:
    matrix = parse_scores(args.input, args.format, args.header)
    fn = _load_function(args.function, matrix.shape[1])
    rep = representative(matrix)
    objective = float(sum(lb_divergence(fn, row, rep) for row in matrix))
    result = {
        "mean": matrix.mean(axis=0).tolist(),
        "representative": rep.to_one_based(),
        "confidence": confidence(matrix),
        "objective": objective,
    }
    config = {"input": args.input, "function": fn.to_spec()}
    return result, config


def _cmd_cluster(args) -> tuple[dict, dict]:
    matrix = parse_scores(args.input, args.format, args.header)
    fn = _load_function(args.function, matrix.shape[1])
    outcome = kmeans_cluster(matrix, args.k, fn, seed=args.seed, max_iter=args.max_iter)
    config = {
        "input": args.input,
        "k": args.k,
        "seed": args.seed,
        "max_iter": args.max_iter,
        "function": fn.to_spec(),
    }
    return outcome.to_json_dict(), config


def _cmd_ndcg(args) -> tuple[dict, dict]:
    matrix = parse_scores(args.input, args.format, args.header)
    relevance = _single_row(matrix, "ndcg")
    sigma = _parse_permutation(args.sigma, "--sigma")
    discount = json.loads(args.discount) if args.discount else None
    k = args.k if args.k is not None else relevance.size
    loss = ndcg_loss(relevance, sigma, k, discount)
    fn, scale = ndcg_as_lb(relevance, k, discount)
    lb_value = lb_divergence(fn, relevance, sigma)
    config = {
        "input": args.input,
        "sigma": sigma.to_one_based(),
        "k": k,
        "discount": discount,
    }
    return {"loss": loss, "lb_value": lb_value, "scale": scale}, config


def _cmd_auc(args) -> tuple[dict, dict]:
    sigma = _parse_permutation(args.sigma, "--sigma")
    split = GoodBadSplit(
        sigma.n,
        _parse_items(args.good, "--good"),
        _parse_items(args.bad, "--bad"),
    )
    loss = auc_loss(sigma, split)
    fn, x = auc_as_lb(split)
    lb_value = lb_divergence(fn, x, sigma)
    config = {
        "sigma": sigma.to_one_based(),
        "good": sorted(g + 1 for g in split.good),
        "bad": sorted(b + 1 for b in split.bad),
    }
    return {"loss": loss, "lb_value": lb_value, "scale": 1.0}, config


def _cmd_mallows_z(args) -> tuple[dict, dict]:
    sigma = _parse_permutation(args.sigma, "--sigma")
    fn = _load_function(args.function, sigma.n)
    model = MallowsModel(fn, args.theta)
    estimate = model.estimate_partition(sigma, num_samples=args.samples, seed=args.seed)
    config = {
        "sigma": sigma.to_one_based(),
        "theta": args.theta,
        "samples": args.samples,
        "seed": args.seed,
        "function": fn.to_spec(),
    }
    result = {"estimate": estimate.estimate, "std_error": estimate.std_error}
    return result, config


def _cmd_mallows_pmf(args) -> tuple[dict, dict]:
    matrix = parse_scores(args.input, args.format, args.header)
    fn = _load_function(args.function, matrix.shape[1])
    thetas = json.loads(args.theta_list) if args.theta_list else 1.0
    pmf = extended_mallows_pmf(thetas, matrix, fn)
    rankings = [perm.to_one_based() for perm in pmf]
    probabilities = list(pmf.values())
    argmax = rankings[int(np.argmax(probabilities))]
    config = {
        "input": args.input,
        "theta_list": thetas if isinstance(thetas, list) else [thetas] * matrix.shape[0],
        "function": fn.to_spec(),
    }
    result = {"permutations": rankings, "probabilities": probabilities, "argmax": argmax}
    return result, config


def _cmd_check_submodular(args) -> tuple[dict, dict]:
    if args.function is None:
        raise ValueError("check-submodular requires --function")
    stripped = args.function.strip()
    spec = json.loads(stripped if stripped.startswith("{") else Path(stripped).read_text())
    fn = function_from_spec(spec)
    config = {"function": fn.to_spec()}
    return {"submodular": is_submodular(fn), "n": fn.n}, config


def _cmd_metrics(args) -> tuple[dict, dict]:
    sigma = _parse_permutation(args.sigma, "--sigma")
    pi = _parse_permutation(args.pi, "--pi")
    result = {
        "kendall_tau": kendall_tau(sigma, pi),
        "spearman_footrule": spearman_footrule(sigma, pi),
        "rank_correlation": rank_correlation(sigma, pi),
    }
    config = {"sigma": sigma.to_one_based(), "pi": pi.to_one_based()}
    return result, config


# ---------------------------------------------------------------------------


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="path to a score matrix (CSV or JSON array of arrays)")
    sub.add_argument("--format", choices=["csv", "json"], default=None,
                     help="input format; default is by file extension")
    sub.add_argument("--header", action="store_true", help="skip the first CSV row")


def _add_output_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--output", default=None,
                     help="write the JSON document here instead of stdout")


def _add_function_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--function",
        default=None,
        help="set function as inline JSON or a path to a JSON file; default is the "
        "strictly concave cardinality family with increments n, n-1, ..., 1",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lovbreg",
        description="Score-vs-ranking divergences: aggregation, clustering, "
        "ranking measures, and Mallows-style models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("divergence", help="divergence of one score vector to a ranking")
    _add_input_flags(sub)
    _add_function_flag(sub)
    sub.add_argument("--sigma", required=True, help="ranking as a JSON array of 1-indexed items")
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_divergence)

    sub = subparsers.add_parser("aggregate", help="mean, representative ranking, and confidence")
    _add_input_flags(sub)
    _add_function_flag(sub)
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_aggregate)

    sub = subparsers.add_parser("cluster", help="k-means clustering with ranking representatives")
    _add_input_flags(sub)
    _add_function_flag(sub)
    sub.add_argument("--k", type=int, required=True, help="number of clusters")
    sub.add_argument("--seed", type=int, default=None, help=f"PRNG seed (default ${SEED_ENV_VAR} or 0)")
    sub.add_argument("--max-iter", type=int, default=100)
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_cluster)

    sub = subparsers.add_parser("ndcg", help="NDCG loss and its divergence form")
    _add_input_flags(sub)
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--k", type=int, default=None, help="cutoff (default: all items)")
    sub.add_argument("--discount", default=None, help="JSON array of positive nonincreasing discounts")
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_ndcg)

    sub = subparsers.add_parser("auc", help="pairwise good/bad loss and its divergence form")
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--good", required=True, help="JSON array of 1-indexed good items")
    sub.add_argument("--bad", required=True, help="JSON array of 1-indexed bad items")
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_auc)

    sub = subparsers.add_parser("mallows-z", help="Monte Carlo partition function estimate")
    _add_function_flag(sub)
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--theta", type=float, required=True)
    sub.add_argument("--samples", type=int, default=100_000)
    sub.add_argument("--seed", type=int, default=None, help=f"PRNG seed (default ${SEED_ENV_VAR} or 0)")
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_mallows_z)

    sub = subparsers.add_parser("mallows-pmf", help="exact ranking distribution for a collection")
    _add_input_flags(sub)
    _add_function_flag(sub)
    sub.add_argument("--theta-list", default=None,
                     help="JSON array of per-vector concentrations, or a single number (default 1)")
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_mallows_pmf)

    sub = subparsers.add_parser("check-submodular", help="exhaustively verify a function spec")
    _add_function_flag(sub)
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_check_submodular)

    sub = subparsers.add_parser("metrics", help="classical distances between two rankings")
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--pi", required=True)
    _add_output_flag(sub)
    sub.set_defaults(handler=_cmd_metrics)

    return parser


def _emit(document: dict, output: str | None) -> None:
    text = json.dumps(document, indent=2, sort_keys=True)
    if output is None:
        print(text)
    else:
        Path(output).write_text(text + "\n", encoding="utf-8")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        try:
            args.seed = _default_seed()
        except ValueError as exc:
            _emit({"command": args.command, "error": {"type": type(exc).__name__,
                                                      "message": str(exc)},
                   "version": __version__}, args.output)
            return 1
    try:
        result, config = args.handler(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        document = {
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "version": __version__,
        }
        _emit(document, args.output)
        return 1
    document = {
        "command": args.command,
        "config": config,
        "result": result,
        "version": __version__,
    }
    _emit(document, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
