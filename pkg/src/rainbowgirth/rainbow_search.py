"""Girth and rainbow girth.

``girth`` is the usual all-roots BFS, restricted to the branching vertices of
the 2-core.  ``rainbow_girth_exact`` is a bounded iterative-deepening search;
``brute_force_rainbow_girth`` enumerates every simple cycle and is meant as an
oracle for graphs with at most 14 vertices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph_core import Edge, EdgeColoredGraph, edge

BRUTE_FORCE_MAX_N = 14


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(edge(u, v) for u, v in self.edges)))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the minimum vertex and orient so that second < last."""
    vs = list(vertices)
    i = vs.index(min(vs))
    vs = vs[i:] + vs[:i]
    if len(vs) > 2 and vs[1] > vs[-1]:
        vs = [vs[0]] + vs[:0:-1]
    return tuple(vs)


@dataclass(frozen=True)
class RainbowCycle:
    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @classmethod
    def from_vertices(cls, g: EdgeColoredGraph, vertices: Sequence[int]) -> "RainbowCycle":
        vs = canonical_cycle(vertices)
        ec = g.edge_color
        colors = tuple(ec[edge(vs[i], vs[(i + 1) % len(vs)])] for i in range(len(vs)))
        return cls(vs, colors)


@dataclass(frozen=True)
class GirthResult:
    length: int | None
    witness: tuple[int, ...] | RainbowCycle | None
    exhausted_bound: int

    @property
    def found(self) -> bool:
        return self.length is not None


def default_max_len(n: int) -> int:
    return max(3, math.ceil(8 * math.log2(n))) if n > 1 else 3


# --- plain girth -------------------------------------------------------------

def _two_core(adj: list[list[int]]) -> list[set[int]]:
    core = [set(nb) for nb in adj]
    stack = [v for v in range(len(adj)) if len(core[v]) <= 1]
    while stack:
        v = stack.pop()
        for w in core[v]:
            core[w].discard(v)
            if len(core[w]) == 1:
                stack.append(w)
        core[v] = set()
    return core


def girth(g: SimpleGraph) -> GirthResult:
    """Exact girth with a canonical witness cycle; ``length`` is None for forests."""
    core = _two_core(g.adjacency())
    nbrs = [sorted(s) for s in core]
    best = math.inf
    witness: tuple[int, ...] | None = None

    # components of the core that are bare cycles contain no branching vertex
    seen = [False] * g.n
    for v in range(g.n):
        if not nbrs[v] or seen[v]:
            continue
        comp, queue = [], [v]
        seen[v] = True
        while queue:
            x = queue.pop()
            comp.append(x)
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        if all(len(nbrs[x]) == 2 for x in comp):
            start = min(comp)
            walk, prev, cur = [start], start, nbrs[start][0]
            while cur != start:
                walk.append(cur)
                prev, cur = cur, nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
            cyc = canonical_cycle(walk)
            if len(cyc) < best or (len(cyc) == best and cyc < witness):
                best, witness = len(cyc), cyc

    for r in range(g.n):
        if len(nbrs[r]) < 3:
            continue
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
                        witness = canonical_cycle(_join(parent, u, w))
    if witness is None:
        return GirthResult(None, None, g.n)
    return GirthResult(int(best), witness, int(best) - 1)


def _tree_path(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path[::-1]


def _join(parent: dict[int, int], u: int, w: int) -> list[int]:
    # root..u followed by w..(child of root)
    pu = _tree_path(parent, u)
    pw = _tree_path(parent, w)
    return pu + pw[:0:-1]


# --- rainbow search ------------------------------------------------------------

class RainbowSearcher:
    """Bounded shortest-rainbow-cycle search over a mutable copy of a graph.

    Cycles are reported in canonical form and, for each length, in
    lexicographic order of their vertex sequence, so the first hit at the
    smallest length is the canonical witness.  Removing a color can only
    destroy cycles, which lets callers resume a search where it stopped.
    """

    def __init__(self, g: EdgeColoredGraph):
        self.n = g.n
        self.adj = g.adjacency()
        self._sorted: list[list[int] | None] = [None] * g.n

    def remove_edges(self, edges: Iterable[Edge]) -> None:
        for u, v in edges:
            self.adj[u].pop(v, None)
            self.adj[v].pop(u, None)
            self._sorted[u] = None
            self._sorted[v] = None

    def _nbrs(self, v: int) -> list[int]:
        s = self._sorted[v]
        if s is None:
            s = self._sorted[v] = sorted(self.adj[v])
        return s

    def _near(self, s: int, radius: int) -> dict[int, int]:
        # BFS within vertices >= s, truncated at ``radius``
        dist = {s: 0}
        frontier = [s]
        for d in range(1, radius + 1):
            nxt = []
            for u in frontier:
                for w in self.adj[u]:
                    if w > s and w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def cycle_at(self, length: int, start: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Lexicographically first canonical rainbow cycle of ``length`` with minimum vertex ``start``."""
        adj = self.adj
        if len(adj[start]) < 2:
            return None
        dist = self._near(start, length // 2)
        path = [start]
        colors: list[int] = []
        on_path = {start}

        def extend(v: int) -> bool:
            depth = len(path) - 1
            if depth == length - 1:
                c = adj[v].get(start)
                if c is not None and c not in colors and path[1] < v:
                    colors.append(c)
                    return True
                return False
            budget = length - depth - 1
            for w in self._nbrs(v):
                if w <= start or w in on_path:
                    continue
                c = adj[v][w]
                if c in colors or dist.get(w, budget + 1) > budget:
                    continue
                path.append(w)
                colors.append(c)
                on_path.add(w)
                if extend(w):
                    return True
                path.pop()
                colors.pop()
                on_path.discard(w)
            return False

        if extend(start):
            return tuple(path), tuple(colors)
        return None

    def search(self, max_len: int, from_len: int = 3, from_start: int = 0) -> tuple[int, int, RainbowCycle] | None:
        """First hit in (length, start) order beginning at ``(from_len, from_start)``."""
        for length in range(from_len, max_len + 1):
            first = from_start if length == from_len else 0
            for s in range(first, self.n):
                hit = self.cycle_at(length, s)
                if hit is not None:
                    return length, s, RainbowCycle(*hit)
        return None


def rainbow_girth_exact(g: EdgeColoredGraph, max_len: int | None = None) -> GirthResult:
    """Shortest rainbow cycle of length at most ``max_len`` (default ``ceil(8 log2 n)``)."""
    if max_len is None:
        max_len = default_max_len(g.n)
    if max_len < 3:
        raise ValueError(f"max_len must be at least 3, got {max_len}")
    hit = RainbowSearcher(g).search(max_len)
    if hit is None:
        return GirthResult(None, None, max_len)
    length, _, cyc = hit
    assert verify_rainbow(g, cyc), cyc
    return GirthResult(length, cyc, length - 1)


def iter_simple_cycles(adj: list[list[int]]) -> Iterator[tuple[int, ...]]:
    """Every simple cycle exactly once, in canonical form."""
    n = len(adj)
    for s in range(n):
        path = [s]
        on_path = {s}

        def walk(v: int) -> Iterator[tuple[int, ...]]:
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from walk(w)
                    path.pop()
                    on_path.discard(w)

        yield from walk(s)


def brute_force_rainbow_girth(g: EdgeColoredGraph) -> GirthResult:
    """Exhaustive oracle: enumerate all simple cycles, keep the rainbow ones."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got n = {g.n}")
    ec = g.edge_color
    adj = SimpleGraph(g.n, g.edges).adjacency()
    best: tuple[int, tuple[int, ...]] | None = None
    for cyc in iter_simple_cycles(adj):
        cols = [ec[edge(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc))]
        if len(set(cols)) == len(cols):
            key = (len(cyc), cyc)
            if best is None or key < best:
                best = key
    if best is None:
        return GirthResult(None, None, g.n)
    cyc = RainbowCycle.from_vertices(g, best[1])
    return GirthResult(best[0], cyc, best[0] - 1)


def verify_rainbow(g: EdgeColoredGraph, c: RainbowCycle) -> bool:
    vs, cols = c.vertices, c.colors
    if len(vs) < 3 or len(cols) != len(vs):
        return False
    if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        return False
    if tuple(vs) != canonical_cycle(vs):
        return False
    ec = g.edge_color
    for i, e in enumerate(c.edges()):
        if ec.get(e) != cols[i]:
            return False
    return len(set(cols)) == len(cols)


def representative_subgraph(g: EdgeColoredGraph, h: Iterable[int]) -> tuple[SimpleGraph, dict[Edge, int]]:
    """Keep the least edge of each class that lies inside ``g[h]``."""
    inside = set(h)
    kept: dict[Edge, int] = {}
    for c in g.classes:
        for u, v in c.edges:
            if u in inside and v in inside:
                kept[(u, v)] = c.color
                break
    return SimpleGraph(g.n, tuple(kept)), kept
