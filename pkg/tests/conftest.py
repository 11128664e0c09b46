"""Shared graph builders and independent brute-force oracles for the tests.

Everything here recomputes from first principles (definitions over plain
Python sets, full 2^n sweeps) so the incremental production code is always
checked against an implementation that shares none of its state.
"""

from __future__ import annotations

import numpy as np

from kplexls.graph import Graph


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Vertex 0 is the center."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def neighbor_sets(g: Graph) -> list[set[int]]:
    return [set(int(u) for u in g.adj[v]) for v in range(g.n)]


def definitional_movesets(members: set[int], g: Graph, k: int):
    """Classify N(S) straight from the definitions, with plain sets."""
    nbrs = neighbor_sets(g)
    boundary = set()
    for v in members:
        boundary |= nbrs[v]
    boundary -= members
    boundary = {v for v in boundary if g.alive[v]}
    need = len(members) - k
    saturated = {v for v in members if len(nbrs[v] & members) == need}
    add, swap, perturb = set(), set(), set()
    for v in boundary:
        d = len(nbrs[v] & members)
        missing = saturated - nbrs[v]
        if d > need and not missing:
            add.add(v)
        elif (d >= need and len(missing) == 1) or (d == need and not missing):
            swap.add(v)
        else:
            perturb.add(v)
    return add, swap, perturb


def is_kplex_sets(members: set[int], g: Graph, k: int) -> bool:
    nbrs = neighbor_sets(g)
    need = len(members) - k
    return all(len(nbrs[v] & members) >= need for v in members)


def all_kplexes(g: Graph, k: int, min_size: int = 1) -> list[frozenset[int]]:
    """Every k-plex of size >= min_size among live vertices, by 2^n sweep."""
    verts = [int(v) for v in g.live_vertices()]
    n = len(verts)
    assert n <= 16, "exhaustive sweep limited to 16 live vertices"
    pos = {v: i for i, v in enumerate(verts)}
    bits = [0] * n
    for i, v in enumerate(verts):
        for u in g.adj[v]:
            u = int(u)
            if g.alive[u]:
                bits[i] |= 1 << pos[u]
    found = []
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size < min_size:
            continue
        need = size - k
        ok = True
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if (bits[j] & mask).bit_count() < need:
                ok = False
                break
        if ok:
            found.append(frozenset(verts[j] for j in range(n) if mask >> j & 1))
    return found


def naive_peel(g: Graph, k: int, lb: int) -> set[int]:
    """Fixed-point peel recomputing every live degree from scratch each round."""
    nbrs = neighbor_sets(g)
    alive = {int(v) for v in g.live_vertices()}
    thresh = lb - k + 1
    while True:
        doomed = {v for v in alive if len(nbrs[v] & alive) < thresh}
        if not doomed:
            return alive
        alive -= doomed


def legal_actions(sol, g):
    """Full legal action set for the current state, via the definitional
    classifier."""
    from kplexls.solution import Action, Move

    add, swap, perturb = definitional_movesets(set(sol.members_set()), g, sol.k)
    return (
        [Action(Move.ADD, v) for v in sorted(add)]
        + [Action(Move.SWAP, v) for v in sorted(swap)]
        + [Action(Move.PERTURB, v) for v in sorted(perturb)]
    )
