"""Candidate k-plex state, move-set classification, and the three operators.

A set S is a k-plex when every member has at least |S| - k neighbors inside
S. Members with exactly |S| - k inside neighbors are *saturated*: they cannot
lose another inside neighbor. The boundary N(S) splits into three disjoint
pools by which operator can legally insert each vertex:

* add:     inside-degree > |S| - k and every saturated member is a neighbor;
           insertion keeps S feasible with no removal.
* swap:    insertion is feasible after removing exactly one member, either
           the unique saturated non-neighbor, or (when the entrant itself
           would be the only deficient vertex) any member outside its
           neighborhood.
* perturb: everything else; insertion forces two or more removals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .graph import Graph


class Move(enum.Enum):
    ADD = "add"
    SWAP = "swap"
    PERTURB = "perturb"


class Action(NamedTuple):
    op: Move
    vertex: int


@dataclass
class MoveSets:
    """Disjoint partition of N(S); `swap_forced` maps a swap vertex to its
    forced removal victim where one exists (None means the victim is free)."""

    add: np.ndarray
    swap: np.ndarray
    perturb: np.ndarray
    swap_forced: dict[int, Optional[int]]


def is_kplex(members, g: Graph, k: int) -> bool:
    """Definitional feasibility check, independent of any incremental state."""
    mem = set(int(v) for v in members)
    need = len(mem) - k
    if need <= 0:
        return True
    for v in mem:
        inside = sum(1 for u in g.adj[v] if int(u) in mem)
        if inside < need:
            return False
    return True


class CandidateSolution:
    """Current k-plex with incrementally maintained counters.

    Keeps, for every vertex (inside or outside S), the inside degree
    |N(v) & S| and the count of saturated members not adjacent to v. Both
    are exactly what classification needs, so one pass over the candidate
    pool classifies it without touching adjacency lists.
    """

    def __init__(self, g: Graph, k: int) -> None:
        if k < 1:
            raise ValueError("k must be a positive integer")
        self.g = g
        self.k = k
        self.size = 0
        self.in_s = np.zeros(g.n, dtype=bool)
        self.ins_deg = np.zeros(g.n, dtype=np.int64)
        self.sat_mask = np.zeros(g.n, dtype=bool)
        self.sat_ids = np.empty(0, dtype=np.int64)
        # sat_adj[v] = |N(v) & C[S]|; the classification count |C[S] \ N(v)|
        # is then len(sat_ids) - sat_adj[v].
        self.sat_adj = np.zeros(g.n, dtype=np.int64)

    @classmethod
    def from_members(cls, g: Graph, k: int, members) -> "CandidateSolution":
        sol = cls(g, k)
        for v in members:
            sol.in_s[int(v)] = True
            sol.ins_deg[g.adj[int(v)]] += 1
            sol.size += 1
        if not is_kplex(sol.members_set(), g, k):
            raise ValueError("initial members do not form a k-plex")
        sol._refresh_saturation()
        return sol

    # -- membership queries -------------------------------------------------

    def members_array(self) -> np.ndarray:
        return np.where(self.in_s)[0]

    def members_set(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.members_array())

    def sat_nonadj_count(self, v: int) -> int:
        return int(len(self.sat_ids) - self.sat_adj[v])

    def boundary_mask(self) -> np.ndarray:
        """Live vertices outside S with at least one neighbor inside."""
        return self.g.alive & ~self.in_s & (self.ins_deg > 0)

    # -- raw mutations ------------------------------------------------------

    def _insert(self, v: int) -> None:
        self.in_s[v] = True
        self.ins_deg[self.g.adj[v]] += 1
        self.size += 1

    def _eject(self, v: int) -> None:
        self.in_s[v] = False
        self.ins_deg[self.g.adj[v]] -= 1
        self.size -= 1

    def _refresh_saturation(self) -> None:
        new_mask = self.in_s & (self.ins_deg == self.size - self.k)
        flipped = np.where(new_mask != self.sat_mask)[0]
        for u in flipped:
            self.sat_adj[self.g.adj[u]] += 1 if new_mask[u] else -1
        self.sat_mask = new_mask
        self.sat_ids = np.where(new_mask)[0]

    def add_vertex(self, v: int) -> None:
        """Insert v with no removals (construction helper; v must be addable)."""
        self._insert(v)
        self._refresh_saturation()

    # -- debug verification ---------------------------------------------

    def verify(self) -> None:
        """Recompute every counter from adjacency and compare; raise on drift."""
        members = self.members_array()
        counts = np.zeros(self.g.n, dtype=np.int64)
        for u in members:
            counts[self.g.adj[u]] += 1
        if not np.array_equal(counts, self.ins_deg):
            raise AssertionError("inside-degree counters drifted")
        need = self.size - self.k
        if members.size and int(counts[members].min()) < need:
            raise AssertionError("candidate solution is not a k-plex")
        sat = self.in_s & (counts == need)
        if not np.array_equal(sat, self.sat_mask):
            raise AssertionError("saturated set drifted")
        sat_adj = np.zeros(self.g.n, dtype=np.int64)
        for u in np.where(sat)[0]:
            sat_adj[self.g.adj[u]] += 1
        if not np.array_equal(sat_adj, self.sat_adj):
            raise AssertionError("saturated-adjacency counters drifted")


def _classify_masks(sol: CandidateSolution, cand: np.ndarray):
    """Boolean add/swap masks over `cand`; perturb is the complement."""
    need = sol.size - sol.k
    d = sol.ins_deg[cand]
    miss = len(sol.sat_ids) - sol.sat_adj[cand]
    add = (d > need) & (miss == 0)
    swap = ((d >= need) & (miss == 1)) | ((d == need) & (miss == 0))
    swap &= ~add
    return add, swap


def classify(sol: CandidateSolution, g: Graph) -> MoveSets:
    """Split N(S) into the add / swap / perturb pools."""
    cand = np.where(sol.boundary_mask())[0]
    add_mask, swap_mask = _classify_masks(sol, cand)
    add = cand[add_mask]
    swap = cand[swap_mask]
    perturb = cand[~(add_mask | swap_mask)]
    forced: dict[int, Optional[int]] = {}
    for v in swap:
        v = int(v)
        victims = np.setdiff1d(sol.sat_ids, g.adj[v], assume_unique=True)
        forced[v] = int(victims[0]) if victims.size == 1 else None
    return MoveSets(add=add, swap=swap, perturb=perturb, swap_forced=forced)


def _member_nonneighbors(sol: CandidateSolution, v: int) -> list[int]:
    """Members of S outside N(v), i.e. the legal removal pool for v."""
    mask = sol.in_s.copy()
    mask[sol.g.adj[v]] = False
    mask[v] = False
    return [int(u) for u in np.where(mask)[0]]


def apply_action(
    sol: CandidateSolution,
    action: Action,
    g: Graph,
    rng: np.random.Generator,
    nq: Optional[np.ndarray] = None,
) -> list[int]:
    """Apply an action, keeping S a feasible k-plex; return removed vertices.

    Add removes nothing. Swap removes exactly one member: the unique
    saturated non-neighbor when one exists, otherwise the minimum-NQ member
    outside the entrant's neighborhood (ties broken at random; uniform
    random when no NQ scores are supplied). Perturb removes the saturated
    non-neighbors first, then random non-neighbors until the entrant is
    feasible. Raises if the action is illegal for the current state.
    """
    v = action.vertex
    if sol.in_s[v] or not g.alive[v] or sol.ins_deg[v] <= 0:
        raise ValueError(f"vertex {v} is not in N(S)")
    need = sol.size - sol.k
    d = int(sol.ins_deg[v])
    miss = sol.sat_nonadj_count(v)
    in_add = d > need and miss == 0
    in_swap = not in_add and ((d >= need and miss == 1) or (d == need and miss == 0))

    if action.op is Move.ADD:
        if not in_add:
            raise ValueError(f"vertex {v} is not addable")
        sol._insert(v)
        sol._refresh_saturation()
        return []

    if action.op is Move.SWAP:
        if not in_swap:
            raise ValueError(f"vertex {v} is not swappable")
        if miss == 1:
            victims = np.setdiff1d(sol.sat_ids, g.adj[v], assume_unique=True)
            victim = int(victims[0])
        else:
            pool = _member_nonneighbors(sol, v)
            if nq is not None:
                scores = nq[pool]
                best = np.where(scores == scores.min())[0]
                victim = pool[int(best[rng.integers(len(best))])]
            else:
                victim = pool[int(rng.integers(len(pool)))]
        sol._insert(v)
        sol._eject(victim)
        sol._refresh_saturation()
        return [victim]

    if action.op is Move.PERTURB:
        if in_add or in_swap:
            raise ValueError(f"vertex {v} is not in the perturb pool")
        forced = [int(u) for u in np.setdiff1d(sol.sat_ids, g.adj[v], assume_unique=True)]
        sol._insert(v)
        removed = list(forced)
        for u in forced:
            sol._eject(u)
        # Entrant may still be deficient when it arrived with a low inside
        # degree; shrink S among its non-neighbors until it is feasible.
        pool = _member_nonneighbors(sol, v)
        while sol.ins_deg[v] < sol.size - sol.k:
            u = pool.pop(int(rng.integers(len(pool))))
            sol._eject(u)
            removed.append(u)
        sol._refresh_saturation()
        return removed

    raise ValueError(f"unknown operator {action.op!r}")
