"""Forbidding strategies: dynamic-threshold and strong configuration checking.

A tracker observes every applied action and answers, per vertex, whether
re-inserting it is currently allowed. All variants also maintain the
neighbor-quality score NQ(v): the running count of insertions minus
removals among v's neighbors, used by the greedy add/swap heuristic.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .solution import Action


class _BaseTracker:
    """Shared NQ bookkeeping; subclasses add their forbidding state."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.nq = np.zeros(g.n, dtype=np.int64)

    def reset(self) -> None:
        """Full reset to the fresh state, including NQ."""
        self.nq[:] = 0
        self.begin_search()

    def begin_search(self) -> None:
        """Per-search reset of the forbidding state; NQ persists."""
        raise NotImplementedError

    def notify(self, action: Action, removed, g: Graph) -> None:
        v = action.vertex
        self.nq[g.adj[v]] += 1
        self._on_insert(v, g)
        for u in removed:
            self.nq[g.adj[u]] -= 1
            self._on_remove(int(u), g)

    def _on_insert(self, v: int, g: Graph) -> None:
        raise NotImplementedError

    def _on_remove(self, u: int, g: Graph) -> None:
        raise NotImplementedError

    def allowed(self, v: int) -> bool:
        return bool(self.allowed_mask()[v])

    def allowed_mask(self) -> np.ndarray:
        raise NotImplementedError


class DtccTracker(_BaseTracker):
    """Dynamic-threshold configuration checking.

    A vertex may enter the solution only when confChange(v) >= threshold(v).
    Every insertion of v raises its threshold by one, so frequently used
    vertices need ever more neighborhood activity before they are allowed
    back in; thresholds therefore adapt the forbidding strength per vertex.
    """

    def __init__(self, g: Graph) -> None:
        super().__init__(g)
        self.conf_change = np.ones(g.n, dtype=np.int64)
        self.threshold = np.ones(g.n, dtype=np.int64)

    def begin_search(self) -> None:
        self.conf_change[:] = 1
        self.threshold[:] = 1

    def _on_insert(self, v: int, g: Graph) -> None:
        self.conf_change[v] = 0
        self.threshold[v] += 1
        self.conf_change[g.adj[v]] += 1

    def _on_remove(self, u: int, g: Graph) -> None:
        self.conf_change[u] = 0

    def allowed_mask(self) -> np.ndarray:
        return self.conf_change >= self.threshold


class SccTracker(_BaseTracker):
    """Strong configuration checking: a vertex is allowed once any neighbor
    has been inserted since the vertex last left the solution."""

    def __init__(self, g: Graph) -> None:
        super().__init__(g)
        self.conf_change = np.ones(g.n, dtype=bool)

    def begin_search(self) -> None:
        self.conf_change[:] = True

    def _on_insert(self, v: int, g: Graph) -> None:
        self.conf_change[g.adj[v]] = True

    def _on_remove(self, u: int, g: Graph) -> None:
        self.conf_change[u] = False

    def allowed_mask(self) -> np.ndarray:
        return self.conf_change.copy()


class OpenTracker(_BaseTracker):
    """No forbidding; still tracks NQ so the greedy heuristics work."""

    def begin_search(self) -> None:
        pass

    def _on_insert(self, v: int, g: Graph) -> None:
        pass

    def _on_remove(self, u: int, g: Graph) -> None:
        pass

    def allowed_mask(self) -> np.ndarray:
        return np.ones(self.g.n, dtype=bool)


_TRACKERS = {"dtcc": DtccTracker, "scc": SccTracker, "none": OpenTracker}


def make_tracker(strategy: str, g: Graph) -> _BaseTracker:
    try:
        return _TRACKERS[strategy](g)
    except KeyError:
        raise ValueError(f"unknown forbidding strategy {strategy!r}") from None
