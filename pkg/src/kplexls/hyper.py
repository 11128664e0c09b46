"""Annealed hyperheuristic: pick the add/swap heuristic per restart.

Three low-level heuristics compete: greedy by neighbor quality, greedy by
the bandit's Q values, and uniform random. Each restart samples one with
probability proportional to exp(best_size_found_with_it / T); the
temperature decays geometrically toward a floor, shifting the controller
from uniform exploration to exploiting the historically best heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .search import HEURISTICS, SearchConfig, SolveReport, drive

TEMPERATURE_FLOOR = 0.01


@dataclass
class HyperState:
    temperature: float = 1000.0
    gamma: float = 0.99
    best_sizes: np.ndarray = field(default_factory=lambda: np.zeros(len(HEURISTICS)))

    def __post_init__(self) -> None:
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")


def selection_probabilities(state: HyperState) -> np.ndarray:
    """Boltzmann weights over heuristics, computed stably in log space.

    best_sizes / T can reach ~1e4 at the temperature floor, so the maximum
    is subtracted before exponentiation.
    """
    x = (state.best_sizes - state.best_sizes.max()) / state.temperature
    w = np.exp(x)
    return w / w.sum()


def select_heuristic(state: HyperState, rng: np.random.Generator) -> str:
    return HEURISTICS[int(rng.choice(len(HEURISTICS), p=selection_probabilities(state)))]


def observe(state: HyperState, heuristic: str, lbest_size: int) -> None:
    i = HEURISTICS.index(heuristic)
    if state.best_sizes[i] < lbest_size:
        state.best_sizes[i] = lbest_size


def cool(state: HyperState) -> None:
    """One geometric cooling step, guarded at the floor. The guard checks
    before multiplying, so the final temperature may land one factor of
    gamma below the floor and then stays put."""
    if state.temperature > TEMPERATURE_FLOOR:
        state.temperature *= state.gamma


class _AnnealedPolicy:
    def __init__(self, state: HyperState) -> None:
        self.state = state

    def select(self, rng: np.random.Generator) -> str:
        return select_heuristic(self.state, rng)

    def observe(self, heuristic: str, lbest_size: int) -> None:
        observe(self.state, heuristic, lbest_size)

    def after_restart(self) -> None:
        cool(self.state)


def solve_bdcch(g: Graph, config: SearchConfig) -> SolveReport:
    """Local search with the annealed heuristic controller per restart."""
    state = HyperState(temperature=config.temp0, gamma=config.gamma)
    return drive(g, config, _AnnealedPolicy(state))
