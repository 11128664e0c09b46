"""Exact maximum k-plex solver for small graphs, used as ground truth.

Depth-first extension over vertices in id order. Because every subset of a
k-plex is itself a k-plex, a partial set that is infeasible can never grow
into a feasible one, so infeasible branches are cut immediately; a size
bound prunes branches that cannot beat the incumbent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph

MAX_ORACLE_VERTICES = 24


@dataclass
class OracleResult:
    opt_size: int
    witness: frozenset[int]
    count: Optional[int] = None


def exact_max_kplex(g: Graph, k: int, count_optima: bool = False) -> OracleResult:
    """Exhaustively find a maximum k-plex among the live vertices.

    Refuses graphs with more than 24 vertices. With `count_optima` the
    search also counts the optimum-size k-plexes (weaker pruning).
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if g.n > MAX_ORACLE_VERTICES:
        raise ValueError(
            f"graph has {g.n} vertices; the exact solver is limited to "
            f"{MAX_ORACLE_VERTICES}"
        )
    verts = [int(v) for v in g.live_vertices()]
    n = len(verts)
    if n == 0:
        return OracleResult(0, frozenset(), 1 if count_optima else None)

    pos = {v: i for i, v in enumerate(verts)}
    adj_bits = [0] * n
    for i, v in enumerate(verts):
        for u in g.adj[v]:
            u = int(u)
            if g.alive[u]:
                adj_bits[i] |= 1 << pos[u]

    best_size = 0
    best_mask = 0
    n_best = 1  # the empty set, until something bigger shows up
    cur: list[int] = []
    cur_mask = 0
    ins_deg = [0] * n

    def feasible_with(j: int) -> bool:
        size = len(cur) + 1
        need = size - k
        if need <= 0:
            return True
        if (adj_bits[j] & cur_mask).bit_count() < need:
            return False
        bit_j = 1 << j
        for i in cur:
            if ins_deg[i] + (1 if adj_bits[i] & bit_j else 0) < need:
                return False
        return True

    def dfs(start: int) -> None:
        nonlocal best_size, best_mask, n_best, cur_mask
        size = len(cur)
        if size > best_size:
            best_size = size
            best_mask = cur_mask
            n_best = 1
        elif count_optima and size == best_size and size > 0:
            n_best += 1
        remaining = n - start
        if count_optima:
            if size + remaining < best_size:
                return
        elif size + remaining <= best_size:
            return
        for j in range(start, n):
            if not feasible_with(j):
                continue
            bit = 1 << j
            for i in cur:
                if adj_bits[i] & bit:
                    ins_deg[i] += 1
            ins_deg[j] = (adj_bits[j] & cur_mask).bit_count()
            cur.append(j)
            cur_mask |= bit
            dfs(j + 1)
            cur.pop()
            cur_mask &= ~bit
            for i in cur:
                if adj_bits[i] & bit:
                    ins_deg[i] -= 1
    dfs(0)

    witness = frozenset(verts[j] for j in range(n) if best_mask >> j & 1)
    return OracleResult(best_size, witness, n_best if count_optima else None)


def naive_max_kplex(g: Graph, k: int) -> int:
    """Plain 2^n sweep over live-vertex subsets; cross-check for the DFS."""
    verts = [int(v) for v in g.live_vertices()]
    n = len(verts)
    if n > 20:
        raise ValueError("naive enumeration is limited to 20 live vertices")
    pos = {v: i for i, v in enumerate(verts)}
    adj_bits = [0] * n
    for i, v in enumerate(verts):
        for u in g.adj[v]:
            u = int(u)
            if g.alive[u]:
                adj_bits[i] |= 1 << pos[u]
    best = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size <= best:
            continue
        need = size - k
        ok = True
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if (adj_bits[j] & mask).bit_count() < need:
                ok = False
                break
        if ok:
            best = size
    return best
