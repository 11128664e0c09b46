"""Inner search loop and the restart driver with peeling.

One restart builds a greedy initial k-plex biased toward rarely used
vertices, then runs up to `depth` steps of the three-operator local search:
grow through the add pool while possible, trade through the swap pool
otherwise, and perturb out of local optima with the bandit's pick. The
driver repeats restarts until the time budget runs out or peeling leaves
no room for a strictly larger k-plex, which proves optimality.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .bandit import BanditState
from .forbid import make_tracker
from .graph import Graph, peel
from .solution import Action, CandidateSolution, Move, _classify_masks, apply_action

HEURISTICS = ("max_nq", "max_q", "random")

_TIME_CHECK_STRIDE = 4096


@dataclass
class SearchConfig:
    k: int
    depth: int = 1000
    alpha: float = 0.5
    epsilon: float = 0.2
    cutoff: float = 1000.0
    seed: int = 1
    strategy: str = "dtcc"
    add_swap_heuristic: str = "max_nq"
    temp0: float = 1000.0
    gamma: float = 0.99
    max_restarts: int | None = None
    check_invariants: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if not 0.0 <= self.alpha <= 1.0 or not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("alpha and epsilon must lie in [0, 1]")
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if self.strategy not in ("dtcc", "scc", "none"):
            raise ValueError(f"unknown forbidding strategy {self.strategy!r}")
        if self.add_swap_heuristic not in HEURISTICS:
            raise ValueError(f"unknown add/swap heuristic {self.add_swap_heuristic!r}")


@dataclass
class SolveReport:
    best: frozenset[int]
    best_size: int
    iterations: int
    restarts: int
    time_to_best: float
    total_time: float
    size_trajectory: list[tuple[float, int]]
    proven_optimal: bool
    heuristic_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class SearchResult:
    best: frozenset[int]
    steps: int


def construct_init(
    g: Graph, k: int, op_times: np.ndarray, rng: np.random.Generator
) -> CandidateSolution:
    """Greedy initial k-plex: seed with the least-operated vertex of a random
    100-vertex sample, then exhaust the add pool by minimum operation count.

    Samples are drawn without replacement and capped at the live count. Ties
    break uniformly at random. The result is maximal for the add operator.
    """
    live = g.live_vertices()
    if live.size == 0:
        raise ValueError("graph has no live vertices")
    sample_size = min(100, live.size)
    sample = rng.choice(live, size=sample_size, replace=False)
    seed_v = _argmin_random(sample, op_times[sample], rng)

    sol = CandidateSolution(g, k)
    sol.add_vertex(seed_v)
    while True:
        cand = np.where(sol.boundary_mask())[0]
        if cand.size == 0:
            break
        add_mask, _ = _classify_masks(sol, cand)
        pool = cand[add_mask]
        if pool.size == 0:
            break
        sol.add_vertex(_argmin_random(pool, op_times[pool], rng))
    return sol


def _argmin_random(pool: np.ndarray, scores: np.ndarray, rng: np.random.Generator) -> int:
    best = np.where(scores == scores.min())[0]
    return int(pool[best[rng.integers(len(best))]])


def _argmax_random(pool: np.ndarray, scores: np.ndarray, rng: np.random.Generator) -> int:
    best = np.where(scores == scores.max())[0]
    return int(pool[best[rng.integers(len(best))]])


def _debug_verify(sol: CandidateSolution, g: Graph) -> None:
    sol.verify()
    boundary = np.where(sol.boundary_mask())[0]
    add_mask, swap_mask = _classify_masks(sol, boundary)
    if (add_mask & swap_mask).any():
        raise AssertionError("move pools overlap")
    pools = np.concatenate(
        [boundary[add_mask], boundary[swap_mask], boundary[~(add_mask | swap_mask)]]
    )
    if len(np.unique(pools)) != len(pools) or not np.array_equal(np.sort(pools), boundary):
        raise AssertionError("move pools do not partition N(S)")


def search(
    g: Graph,
    sol: CandidateSolution,
    tracker,
    bandit: BanditState,
    op_times: np.ndarray,
    depth: int,
    rng: np.random.Generator,
    heuristic: str = "max_nq",
    deadline: float | None = None,
    check_invariants: bool = False,
) -> SearchResult:
    """Run up to `depth` local-search steps from `sol`; return the best seen.

    The caller must reset the tracker's forbidding state beforehand. Each
    step restricts N(S) to vertices the tracker allows, classifies them,
    and applies the first available operator: add (greedy by the selected
    heuristic), swap (same heuristic), then perturb (epsilon-greedy by Q).
    Returns early when every candidate is forbidden or N(S) is empty.
    """
    bandit.discard_walk()
    best = sol.members_set()
    steps = 0
    for _ in range(depth):
        if (
            deadline is not None
            and steps % _TIME_CHECK_STRIDE == 0
            and time.perf_counter() >= deadline
        ):
            break
        cand = np.where(sol.boundary_mask() & tracker.allowed_mask())[0]
        if cand.size == 0:
            break
        add_mask, swap_mask = _classify_masks(sol, cand)
        add_pool = cand[add_mask]
        if add_pool.size > 0:
            v = _pick(add_pool, tracker.nq, bandit.q, heuristic, rng)
            op = Move.ADD
        else:
            swap_pool = cand[swap_mask]
            if swap_pool.size > 0:
                v = _pick(swap_pool, tracker.nq, bandit.q, heuristic, rng)
                op = Move.SWAP
            else:
                perturb_pool = cand[~(add_mask | swap_mask)]
                v = bandit.select_perturb(perturb_pool, rng)
                op = Move.PERTURB
        action = Action(op, v)
        removed = apply_action(sol, action, g, rng, nq=tracker.nq)
        op_times[v] += 1
        bandit.record(action)
        tracker.notify(action, removed, g)
        steps += 1
        if check_invariants:
            _debug_verify(sol, g)
        if sol.size > len(best):
            best = sol.members_set()
            bandit.reward_episode()
    return SearchResult(best=best, steps=steps)


def _pick(pool, nq, q, heuristic, rng) -> int:
    if heuristic == "max_nq":
        return _argmax_random(pool, nq[pool], rng)
    if heuristic == "max_q":
        return _argmax_random(pool, q[pool], rng)
    return int(pool[rng.integers(len(pool))])


class _FixedPolicy:
    """Restart policy that always runs the same add/swap heuristic."""

    def __init__(self, heuristic: str) -> None:
        self.heuristic = heuristic

    def select(self, rng: np.random.Generator) -> str:
        return self.heuristic

    def observe(self, heuristic: str, lbest_size: int) -> None:
        pass

    def after_restart(self) -> None:
        pass


def _baseline_members(g: Graph, k: int) -> frozenset[int]:
    """Any set of at most k vertices is a k-plex; take the k highest-degree
    live vertices as a free lower bound."""
    live = g.live_vertices()
    if live.size == 0:
        return frozenset()
    take = min(k, live.size)
    order = sorted((int(v) for v in live), key=lambda v: (-int(g.degree[v]), v))
    return frozenset(order[:take])


def drive(g: Graph, config: SearchConfig, policy) -> SolveReport:
    """Shared restart driver: construct, search, peel, repeat until the
    budget ends or the live graph cannot hold anything larger than the
    incumbent (which proves optimality). Operates on a private copy of
    `g`'s liveness state, so the caller's graph is untouched.
    """
    g = g.copy_for_solve()
    rng = np.random.default_rng(config.seed)
    tracker = make_tracker(config.strategy, g)
    bandit = BanditState(g.n, config.alpha, config.epsilon)
    op_times = np.zeros(g.n, dtype=np.int64)
    tracker.reset()

    start = time.perf_counter()
    deadline = start + config.cutoff
    trajectory: list[tuple[float, int]] = []
    heuristic_counts: dict[str, int] = {}
    iterations = 0
    restarts = 0
    time_to_best = 0.0
    proven = False

    best = _baseline_members(g, config.k)
    if best:
        time_to_best = time.perf_counter() - start
        trajectory.append((time_to_best, len(best)))
        peel(g, config.k, len(best))

    while True:
        if g.live_count <= len(best):
            proven = True
            break
        if time.perf_counter() >= deadline:
            break
        if config.max_restarts is not None and restarts >= config.max_restarts:
            break
        heuristic = policy.select(rng)
        heuristic_counts[heuristic] = heuristic_counts.get(heuristic, 0) + 1
        sol = construct_init(g, config.k, op_times, rng)
        tracker.begin_search()
        result = search(
            g,
            sol,
            tracker,
            bandit,
            op_times,
            config.depth,
            rng,
            heuristic=heuristic,
            deadline=deadline,
            check_invariants=config.check_invariants,
        )
        restarts += 1
        iterations += result.steps
        policy.observe(heuristic, len(result.best))
        if len(result.best) > len(best):
            best = result.best
            time_to_best = time.perf_counter() - start
            trajectory.append((time_to_best, len(best)))
            peel(g, config.k, len(best))
        if g.live_count <= len(best):
            proven = True
            break
        policy.after_restart()

    return SolveReport(
        best=best,
        best_size=len(best),
        iterations=iterations,
        restarts=restarts,
        time_to_best=time_to_best,
        total_time=time.perf_counter() - start,
        size_trajectory=trajectory,
        proven_optimal=proven,
        heuristic_counts=heuristic_counts,
    )


def solve_bdcc(g: Graph, config: SearchConfig) -> SolveReport:
    """Local search with a fixed add/swap heuristic (max NQ by default)."""
    return drive(g, config, _FixedPolicy(config.add_swap_heuristic))
