"""Graph representation, DIMACS / edge-list parsing, and degree peeling."""

from __future__ import annotations

import os
from collections import deque

import numpy as np


class GraphInputError(ValueError):
    """Raised for malformed graph input (bad format, bad index, bad token)."""


class Graph:
    """Undirected simple graph with per-vertex liveness flags.

    Vertices are 0-based ints. The adjacency structure is fixed after
    construction; peeling only flips `alive` flags and decrements live
    degrees, so vertex ids stay valid for any per-vertex state kept by a
    solver. Neighbor arrays still list dead vertices; callers that need
    live vertices must mask with `alive`.
    """

    __slots__ = ("n", "m", "adj", "alive", "degree", "_live_count")

    def __init__(self, n: int, edges) -> None:
        if n < 0:
            raise GraphInputError("vertex count must be non-negative")
        self.n = n
        pairs = _clean_edges(n, edges)
        self.m = len(pairs)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in pairs:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = [np.array(sorted(a), dtype=np.int64) for a in nbrs]
        self.alive = np.ones(n, dtype=bool)
        self.degree = np.array([len(a) for a in self.adj], dtype=np.int64)
        self._live_count = n

    @property
    def live_count(self) -> int:
        return self._live_count

    def live_vertices(self) -> np.ndarray:
        return np.where(self.alive)[0]

    def neighbors(self, v: int) -> np.ndarray:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = np.searchsorted(a, v)
        return i < len(a) and a[i] == v

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, int(v)) for u in range(self.n) for v in self.adj[u] if u < v}

    def copy_for_solve(self) -> "Graph":
        """Copy sharing the immutable adjacency but with private liveness state."""
        g = Graph.__new__(Graph)
        g.n = self.n
        g.m = self.m
        g.adj = self.adj
        g.alive = self.alive.copy()
        g.degree = self.degree.copy()
        g._live_count = self._live_count
        return g

    def kill(self, v: int) -> None:
        """Mark v dead and decrement its live neighbors' degrees."""
        if not self.alive[v]:
            return
        self.alive[v] = False
        self._live_count -= 1
        nbrs = self.adj[v]
        live = nbrs[self.alive[nbrs]]
        self.degree[live] -= 1

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m}, live={self._live_count})"


def _clean_edges(n: int, edges) -> list[tuple[int, int]]:
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if u == v:
            continue
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"vertex index out of range: edge ({u}, {v}) with n={n}")
        seen.add((u, v) if u < v else (v, u))
    return sorted(seen)


def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError(f"line {lineno}: expected integer, got {tok!r}") from None


def parse_dimacs(text: str) -> Graph:
    """Parse the DIMACS ASCII clique format.

    Accepts `c` comment lines, exactly one `p edge <n> <m>` line, and
    `e <u> <v>` lines with 1-based endpoints. Duplicate edges and
    self-loops are dropped silently; any other line type is rejected.
    """
    n = -1
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tag = line.split(maxsplit=1)[0]
        if tag == "c":
            continue
        if tag == "p":
            if n >= 0:
                raise GraphInputError(f"line {lineno}: duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphInputError(f"line {lineno}: malformed problem line {line!r}")
            n = _int_token(parts[2], lineno)
            _int_token(parts[3], lineno)  # declared edge count, informational only
            if n < 0:
                raise GraphInputError(f"line {lineno}: negative vertex count")
        elif tag == "e":
            if n < 0:
                raise GraphInputError(f"line {lineno}: edge before problem line")
            parts = line.split()
            if len(parts) != 3:
                raise GraphInputError(f"line {lineno}: malformed edge line {line!r}")
            u = _int_token(parts[1], lineno)
            v = _int_token(parts[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(
                    f"line {lineno}: vertex index out of range [1, {n}]: {line!r}"
                )
            edges.append((u - 1, v - 1))
        else:
            raise GraphInputError(f"line {lineno}: unrecognized line type {tag!r}")
    if n < 0:
        raise GraphInputError("missing problem line")
    return Graph(n, edges)


def parse_edgelist(text: str) -> Graph:
    """Parse a plain edge list: first line `<n> <m>`, then `<u> <v>` (1-based).

    Blank lines and `#` comments are tolerated.
    """
    n = -1
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"line {lineno}: expected two integers, got {line!r}")
        a = _int_token(parts[0], lineno)
        b = _int_token(parts[1], lineno)
        if n < 0:
            n = a
            if n < 0:
                raise GraphInputError(f"line {lineno}: negative vertex count")
            continue
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphInputError(f"line {lineno}: vertex index out of range [1, {n}]")
        edges.append((a - 1, b - 1))
    if n < 0:
        raise GraphInputError("empty edge-list input")
    return Graph(n, edges)


def load_graph(path: str) -> Graph:
    """Load a graph file, choosing the parser by extension.

    `.clq` and `.dimacs` files use the DIMACS clique format; anything else
    is read as a plain edge list.
    """
    ext = os.path.splitext(path)[1].lower()
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        text = fh.read()
    if ext in (".clq", ".dimacs"):
        return parse_dimacs(text)
    return parse_edgelist(text)


def to_dimacs(g: Graph) -> str:
    """Serialize the full graph (ignoring liveness) in DIMACS clique format."""
    lines = [f"p edge {g.n} {g.m}"]
    for u in range(g.n):
        for v in g.adj[u]:
            if u < v:
                lines.append(f"e {u + 1} {int(v) + 1}")
    return "\n".join(lines) + "\n"


def peel(g: Graph, k: int, lb: int) -> Graph:
    """Recursively delete live vertices with live degree < lb - k + 1.

    Sound for any valid lower bound lb: every k-plex strictly larger than
    lb needs all members to keep at least lb + 1 - k neighbors inside it,
    so no member can fall below the threshold. Mutates `g` in place (kill
    flags only) and returns it. An empty survivor set is a valid outcome.
    """
    thresh = lb - k + 1
    if thresh <= 0:
        return g
    pending = deque(int(v) for v in np.where(g.alive & (g.degree < thresh))[0])
    queued = np.zeros(g.n, dtype=bool)
    queued[list(pending)] = True
    while pending:
        v = pending.popleft()
        if not g.alive[v]:
            continue
        g.kill(v)
        for u in g.adj[v]:
            u = int(u)
            if g.alive[u] and not queued[u] and g.degree[u] < thresh:
                queued[u] = True
                pending.append(u)
    return g
