"""HTTP solver service: submit a graph as text, get the best k-plex back.

Vertices in responses are 1-based, matching the DIMACS convention of the
input formats.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .graph import Graph, GraphInputError, parse_dimacs, parse_edgelist
from .hyper import solve_bdcch
from .oracle import exact_max_kplex
from .search import SearchConfig, solve_bdcc

app = FastAPI(title="kplexls", version=__version__)


class SolveRequest(BaseModel):
    graph: str = Field(description="graph file contents")
    format: Literal["dimacs", "edgelist"] = "dimacs"
    k: int = Field(ge=1)
    algo: Literal["bdcc", "bdcch", "bdcc-scc"] = "bdcc"
    cutoff: float = Field(default=10.0, gt=0, le=600,
                          description="wall-clock budget in seconds")
    depth: int = Field(default=1000, ge=1)
    alpha: float = Field(default=0.5, ge=0.0, le=1.0)
    epsilon: float = Field(default=0.2, ge=0.0, le=1.0)
    temp0: float = Field(default=1000.0, gt=0)
    gamma: float = Field(default=0.99, gt=0, lt=1)
    seed: int = 1


class TrajectoryPoint(BaseModel):
    elapsed: float
    size: int


class SolveResponse(BaseModel):
    best: list[int]
    best_size: int
    proven_optimal: bool
    iterations: int
    restarts: int
    time_to_best: float
    total_time: float
    size_trajectory: list[TrajectoryPoint]


class ExactRequest(BaseModel):
    graph: str
    format: Literal["dimacs", "edgelist"] = "dimacs"
    k: int = Field(ge=1)
    count_optima: bool = False


class ExactResponse(BaseModel):
    opt_size: int
    witness: list[int]
    count: Optional[int] = None


def _parse(text: str, fmt: str) -> Graph:
    try:
        return parse_dimacs(text) if fmt == "dimacs" else parse_edgelist(text)
    except GraphInputError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/solve", response_model=SolveResponse)
def solve(req: SolveRequest) -> SolveResponse:
    g = _parse(req.graph, req.format)
    config = SearchConfig(
        k=req.k,
        depth=req.depth,
        alpha=req.alpha,
        epsilon=req.epsilon,
        cutoff=req.cutoff,
        seed=req.seed,
        strategy="scc" if req.algo == "bdcc-scc" else "dtcc",
        temp0=req.temp0,
        gamma=req.gamma,
    )
    solver = solve_bdcch if req.algo == "bdcch" else solve_bdcc
    report = solver(g, config)
    return SolveResponse(
        best=sorted(v + 1 for v in report.best),
        best_size=report.best_size,
        proven_optimal=report.proven_optimal,
        iterations=report.iterations,
        restarts=report.restarts,
        time_to_best=round(report.time_to_best, 3),
        total_time=round(report.total_time, 3),
        size_trajectory=[
            TrajectoryPoint(elapsed=round(t, 3), size=s)
            for t, s in report.size_trajectory
        ],
    )


@app.post("/exact", response_model=ExactResponse)
def exact(req: ExactRequest) -> ExactResponse:
    g = _parse(req.graph, req.format)
    try:
        result = exact_max_kplex(g, req.k, count_optima=req.count_optima)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ExactResponse(
        opt_size=result.opt_size,
        witness=sorted(v + 1 for v in result.witness),
        count=result.count,
    )
