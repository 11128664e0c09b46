"""Command-line front end: solve single instances, run benchmark sweeps,
and summarize result files into best(avg) tables."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import click

from .graph import Graph, GraphInputError, load_graph
from .hyper import solve_bdcch
from .oracle import exact_max_kplex
from .search import SearchConfig, solve_bdcc

ALGORITHMS = ("bdcc", "bdcch", "bdcc-scc", "exact")

RECORD_FIELDS = (
    "instance",
    "k",
    "algo",
    "seed",
    "best",
    "time_to_best",
    "total_time",
    "iterations",
    "restarts",
    "optimal",
)


def run_instance(g: Graph, name: str, k: int, algo: str, seed: int, *,
                 cutoff: float = 1000.0, depth: int = 1000, alpha: float = 0.5,
                 epsilon: float = 0.2, temp0: float = 1000.0, gamma: float = 0.99,
                 max_restarts: int | None = None) -> dict:
    """Solve one (instance, k, algo, seed) cell and build its record."""
    if algo == "exact":
        t0 = time.perf_counter()
        result = exact_max_kplex(g, k)
        elapsed = time.perf_counter() - t0
        return _record(name, k, algo, seed, result.opt_size, elapsed, elapsed, 0, 0, True)
    config = SearchConfig(
        k=k,
        depth=depth,
        alpha=alpha,
        epsilon=epsilon,
        cutoff=cutoff,
        seed=seed,
        strategy="scc" if algo == "bdcc-scc" else "dtcc",
        temp0=temp0,
        gamma=gamma,
        max_restarts=max_restarts,
    )
    solver = solve_bdcch if algo == "bdcch" else solve_bdcc
    report = solver(g, config)
    return _record(
        name, k, algo, seed, report.best_size, report.time_to_best,
        report.total_time, report.iterations, report.restarts, report.proven_optimal,
    )


def _record(instance, k, algo, seed, best, ttb, total, iters, restarts, optimal) -> dict:
    return {
        "instance": instance,
        "k": k,
        "algo": algo,
        "seed": seed,
        "best": best,
        "time_to_best": round(ttb, 3),
        "total_time": round(total, 3),
        "iterations": iters,
        "restarts": restarts,
        "optimal": bool(optimal),
    }


def write_records(records: list[dict], path: str, fmt: str) -> None:
    with open(path, "w", newline="") as fh:
        _dump_records(records, fh, fmt)


def _dump_records(records: list[dict], fh, fmt: str) -> None:
    if fmt == "jsonl":
        for rec in records:
            fh.write(json.dumps({f: rec[f] for f in RECORD_FIELDS}) + "\n")
    else:
        writer = csv.DictWriter(fh, fieldnames=RECORD_FIELDS)
        writer.writeheader()
        for rec in records:
            writer.writerow({**rec, "optimal": "true" if rec["optimal"] else "false"})


def read_records(path: str) -> list[dict]:
    with open(path) as fh:
        text = fh.read()
    records = []
    if text.lstrip().startswith("{"):
        for line in text.splitlines():
            if line.strip():
                records.append(json.loads(line))
    else:
        for row in csv.DictReader(io.StringIO(text)):
            records.append(
                {
                    "instance": row["instance"],
                    "k": int(row["k"]),
                    "algo": row["algo"],
                    "seed": int(row["seed"]),
                    "best": int(row["best"]),
                    "time_to_best": float(row["time_to_best"]),
                    "total_time": float(row["total_time"]),
                    "iterations": int(row["iterations"]),
                    "restarts": int(row["restarts"]),
                    "optimal": row["optimal"].strip().lower() == "true",
                }
            )
    return records


def summarize_records(records: list[dict]) -> list[dict]:
    """Aggregate per (instance, k, algo): max best, mean best, mean time."""
    groups: dict[tuple, list[dict]] = {}
    for rec in records:
        groups.setdefault((rec["instance"], rec["k"], rec["algo"]), []).append(rec)
    rows = []
    for (instance, k, algo), recs in sorted(groups.items()):
        bests = [r["best"] for r in recs]
        rows.append(
            {
                "instance": instance,
                "k": k,
                "algo": algo,
                "runs": len(recs),
                "best_avg": f"{max(bests)}({sum(bests) / len(bests):.2f})",
                "mean_time_to_best": round(
                    sum(r["time_to_best"] for r in recs) / len(recs), 3
                ),
            }
        )
    return rows


def _print_table(rows: list[dict]) -> None:
    if not rows:
        return
    headers = list(rows[0])
    widths = [max(len(str(h)), max(len(str(r[h])) for r in rows)) for h in headers]
    click.echo("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for r in rows:
        click.echo("  ".join(str(r[h]).ljust(w) for h, w in zip(headers, widths)))


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _load(path: str) -> Graph:
    try:
        return load_graph(path)
    except (OSError, GraphInputError) as exc:
        _fail(str(exc))


def _parse_k_list(value: str) -> list[int]:
    try:
        ks = [int(tok) for tok in value.split(",") if tok.strip()]
    except ValueError:
        _fail(f"bad k list {value!r}")
    if not ks or any(k < 1 for k in ks):
        _fail(f"bad k list {value!r}")
    return ks


@click.group()
def main() -> None:
    """Maximum k-plex local-search solver."""


_shared = [
    click.option("--cutoff", type=float, default=1000.0, show_default=True,
                 help="wall-clock budget per run (seconds)"),
    click.option("--depth", type=int, default=1000, show_default=True,
                 help="search steps per restart"),
    click.option("--alpha", type=float, default=0.5, show_default=True,
                 help="reward stepsize"),
    click.option("--epsilon", type=float, default=0.2, show_default=True,
                 help="perturbation exploration rate"),
    click.option("--temp0", type=float, default=1000.0, show_default=True,
                 help="initial temperature (bdcch)"),
    click.option("--gamma", type=float, default=0.99, show_default=True,
                 help="cooling rate (bdcch)"),
    click.option("--seed", type=int, default=1, show_default=True),
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="write records to this file"),
    click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]),
                 default="csv", show_default=True),
]


def _with_shared(cmd):
    for opt in reversed(_shared):
        cmd = opt(cmd)
    return cmd


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False))
@click.option("--k", required=True, type=int)
@click.option("--algo", type=click.Choice(ALGORITHMS), default="bdcc", show_default=True)
@click.option("--exact", "exact_flag", is_flag=True,
              help="shorthand for --algo exact")
@click.option("--runs", type=int, default=1, show_default=True,
              help="independent runs with seeds seed..seed+runs-1")
@click.option("--max-restarts", type=int, default=None,
              help="stop after this many restarts (deterministic budget)")
@_with_shared
def solve(graph_path, k, algo, exact_flag, runs, max_restarts, cutoff, depth,
          alpha, epsilon, temp0, gamma, seed, out, fmt) -> None:
    """Solve one instance and print its run records."""
    if k < 1:
        _fail("k must be a positive integer")
    if runs < 1:
        _fail("runs must be at least 1")
    if cutoff <= 0:
        _fail("cutoff must be positive")
    if exact_flag:
        algo = "exact"
    g = _load(graph_path)
    name = os.path.basename(graph_path)
    records = []
    try:
        for i in range(runs):
            records.append(
                run_instance(
                    g, name, k, algo, seed + i, cutoff=cutoff, depth=depth,
                    alpha=alpha, epsilon=epsilon, temp0=temp0, gamma=gamma,
                    max_restarts=max_restarts,
                )
            )
    except ValueError as exc:
        _fail(str(exc))
    _print_table(records)
    if out:
        write_records(records, out, fmt)


def _bench_cell(args):
    path, name, k, algo, seed, opts = args
    g = load_graph(path)
    return run_instance(g, name, k, algo, seed, **opts)


@main.command()
@click.option("--list", "list_path", required=True, type=click.Path(dir_okay=False),
              help="file with one graph path per line")
@click.option("--k", "k_list", required=True, type=str,
              help="comma-separated k values, e.g. 2,3,4")
@click.option("--algo", type=click.Choice(ALGORITHMS), default="bdcc", show_default=True)
@click.option("--runs", type=int, default=1, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="parallel worker processes")
@_with_shared
def bench(list_path, k_list, algo, runs, jobs, cutoff, depth, alpha, epsilon,
          temp0, gamma, seed, out, fmt) -> None:
    """Run a benchmark sweep: every (instance, k, seed) cell."""
    ks = _parse_k_list(k_list)
    if runs < 1:
        _fail("runs must be at least 1")
    try:
        with open(list_path) as fh:
            paths = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        _fail(str(exc))
    if not paths:
        _fail("instance list is empty")
    for p in paths:
        if not os.path.exists(p):
            _fail(f"instance file not found: {p}")
    opts = dict(cutoff=cutoff, depth=depth, alpha=alpha, epsilon=epsilon,
                temp0=temp0, gamma=gamma)
    cells = [
        (p, os.path.basename(p), k, algo, seed + i, opts)
        for p in paths
        for k in ks
        for i in range(runs)
    ]
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                records = list(pool.map(_bench_cell, cells))
        else:
            records = [_bench_cell(c) for c in cells]
    except (GraphInputError, ValueError) as exc:
        _fail(str(exc))
    _print_table(records)
    if out:
        write_records(records, out, fmt)


@main.command()
@click.argument("records_path", type=click.Path(dir_okay=False))
def summarize(records_path) -> None:
    """Aggregate a records file into a per-instance best(avg) table."""
    try:
        records = read_records(records_path)
    except (OSError, ValueError, KeyError) as exc:
        _fail(f"cannot read records: {exc}")
    if not records:
        _fail("records file is empty")
    _print_table(summarize_records(records))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port) -> None:
    """Start the HTTP solver service."""
    import uvicorn

    uvicorn.run("kplexls.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
