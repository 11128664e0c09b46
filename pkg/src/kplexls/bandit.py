"""Bandit-guided perturbation: per-vertex reward estimates over episodes.

Each vertex is an arm. The walk collects every applied action since the
last break-through (a strict improvement of the trajectory's best size).
When the next break-through arrives, every perturb action in the walk is
credited with reward 1 / (number of perturb actions in the walk), folded
into the vertex's Q value by an exponential recency-weighted average.
Perturbation vertices are then drawn epsilon-greedily by Q.
"""

from __future__ import annotations

import numpy as np

from .solution import Action, Move


class BanditState:
    def __init__(self, n: int, alpha: float = 0.5, epsilon: float = 0.2) -> None:
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        self.alpha = alpha
        self.epsilon = epsilon
        self.q = np.zeros(n, dtype=np.float64)
        self.walk: list[Action] = []

    def record(self, action: Action) -> None:
        self.walk.append(action)

    def discard_walk(self) -> None:
        """Drop an unfinished episode without rewarding it."""
        self.walk.clear()

    def reward_episode(self) -> list[int]:
        """Credit the walk's perturb actions and clear the walk.

        Each perturb occurrence gets its own sequential update, so a vertex
        perturbed twice in one episode is folded in twice.
        """
        perturbed = [a.vertex for a in self.walk if a.op is Move.PERTURB]
        self.walk.clear()
        if not perturbed:
            return []
        reward = 1.0 / len(perturbed)
        for v in perturbed:
            self.q[v] = (1.0 - self.alpha) * self.q[v] + self.alpha * reward
        return perturbed

    def select_perturb(self, candidates: np.ndarray, rng: np.random.Generator) -> int:
        """Epsilon-greedy draw: explore uniformly, else argmax Q (ties random)."""
        if len(candidates) == 0:
            raise ValueError("perturb candidate pool is empty")
        if rng.random() < self.epsilon:
            return int(candidates[rng.integers(len(candidates))])
        scores = self.q[candidates]
        best = np.where(scores == scores.max())[0]
        return int(candidates[best[rng.integers(len(best))]])
