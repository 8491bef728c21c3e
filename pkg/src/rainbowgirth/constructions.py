"""Graph families: extremal star colorings, the half barrier, the digraph
reduction, random mixed instances, and the random tuple construction that
keeps short rainbow cycles away.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

import numpy as np

from .graph_core import ColorClass, Edge, EdgeColoredGraph, Kind, edge
from .rainbow_search import RainbowSearcher

log = logging.getLogger(__name__)

LOWER_BOUND_DENSITY = 144


def star_extremal(k: int, r: int) -> EdgeColoredGraph:
    """Circulant coloring on kr+1 vertices: color i owns the edges i -> i+1..i+k."""
    if k < 1 or r < 2:
        raise ValueError(f"need k >= 1 and r >= 2, got k={k}, r={r}")
    n = k * r + 1
    if n <= 2 * k:
        raise ValueError(f"k={k}, r={r} produces repeated edges")
    classes = [ColorClass.of(i, [edge(i, (i + j) % n) for j in range(1, k + 1)]) for i in range(n)]
    return EdgeColoredGraph(n, tuple(classes))


def half_barrier(m: int) -> EdgeColoredGraph:
    """m gadgets of six vertices; two triangles, one 2-matching and three single edges each.

    Gadget i uses vertices 6i..6i+5 (``v_{i,j}`` is ``6i + j - 1``).  The last
    single edge joins gadget i to gadget i+1 (mod m).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    classes = []
    for i in range(m):
        v = [6 * i + j for j in range(6)]
        nxt = 6 * ((i + 1) % m)
        groups = [
            [(v[0], v[1]), (v[1], v[2]), (v[0], v[2])],
            [(v[3], v[4]), (v[4], v[5]), (v[3], v[5])],
            [(v[1], v[3]), (v[2], v[4])],
            [(v[1], v[4])],
            [(v[2], v[3])],
            [(v[5], nxt)],
        ]
        classes += [ColorClass.of(6 * i + c, es) for c, es in enumerate(groups)]
    return EdgeColoredGraph(6 * m, tuple(classes))


def half_barrier_claimed_girth(m: int) -> int:
    """The rainbow girth 2n/3 asserted in the literature for ``half_barrier(m)``."""
    return 4 * m


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arcs = tuple(sorted((int(a), int(b)) for a, b in self.arcs))
        if len(set(arcs)) != len(arcs):
            raise ValueError("repeated arc")
        for a, b in arcs:
            if a == b:
                raise ValueError(f"loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"arc {a}->{b} outside [0, {self.n})")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbours(self, v: int) -> list[int]:
        return [b for a, b in self.arcs if a == v]

    def min_out_degree(self) -> int:
        deg = [0] * self.n
        for a, _ in self.arcs:
            deg[a] += 1
        return min(deg, default=0)


def circulant_digraph(k: int, r: int) -> Digraph:
    n = k * r + 1
    return Digraph(n, tuple((i, (i + j) % n) for i in range(n) for j in range(1, k + 1)))


def digraph_to_edge_colored(d: Digraph) -> EdgeColoredGraph:
    """Forget arc directions; the out-arcs of each vertex v become color class v.

    Vertices without out-arcs contribute no class.  Digons are rejected since
    they would collapse to a repeated edge.
    """
    arcs = set(d.arcs)
    for a, b in d.arcs:
        if (b, a) in arcs:
            raise ValueError(f"digon between {min(a, b)} and {max(a, b)}")
    out: dict[int, list[Edge]] = defaultdict(list)
    for a, b in d.arcs:
        out[a].append(edge(a, b))
    return EdgeColoredGraph(d.n, tuple(ColorClass.of(v, es) for v, es in sorted(out.items())))


# --- random mixed instances ---------------------------------------------------

class PlacementError(RuntimeError):
    pass


def mixed_counts(n: int, alpha: float, matching_share: float = 0.5) -> dict[Kind, int]:
    """Split n classes: round(alpha n) of them 2-matchings/triangles, the rest single edges."""
    mt = round(alpha * n)
    m = round(matching_share * mt)
    return {Kind.MATCHING2: m, Kind.TRIANGLE: mt - m, Kind.SINGLE: n - mt}


def _distinct(rng: np.random.Generator, n: int, k: int) -> list[int]:
    while True:
        xs = rng.integers(0, n, size=k).tolist()
        if len(set(xs)) == k:
            return xs


def _random_support(rng: np.random.Generator, n: int, kind: Kind, star_size: int) -> list[Edge]:
    if kind is Kind.SINGLE:
        a, b = _distinct(rng, n, 2)
        return [edge(a, b)]
    if kind is Kind.MATCHING2:
        a, b, c, d = _distinct(rng, n, 4)
        return [edge(a, b), edge(c, d)]
    if kind is Kind.TRIANGLE:
        a, b, c = _distinct(rng, n, 3)
        return [edge(a, b), edge(b, c), edge(a, c)]
    if kind is Kind.STAR:
        centre, *leaves = _distinct(rng, n, star_size + 1)
        return [edge(centre, x) for x in leaves]
    raise ValueError(f"cannot generate {kind.value} classes")


def random_mixed(
    n: int,
    counts: Mapping[Kind | str, int],
    seed: int,
    *,
    star_size: int = 3,
    max_rounds: int = 1000,
) -> EdgeColoredGraph:
    """n classes of the requested kinds on uniformly random vertex supports.

    Classes are placed one at a time in a random order and redrawn whenever
    they would reuse an existing edge.
    """
    counts = {Kind(k): int(c) for k, c in counts.items()}
    if sum(counts.values()) != n:
        raise ValueError(f"class counts sum to {sum(counts.values())}, expected n = {n}")
    need = {Kind.SINGLE: 2, Kind.MATCHING2: 4, Kind.TRIANGLE: 3, Kind.STAR: star_size + 1}
    for kind, c in counts.items():
        if c and need.get(kind, math.inf) > n:
            raise PlacementError(f"{kind.value} classes need {need.get(kind)} vertices; n = {n}")
    rng = np.random.default_rng(seed)
    kinds = [k for k in Kind for _ in range(counts.get(k, 0))]
    order = rng.permutation(len(kinds))
    used: set[Edge] = set()
    classes = []
    for color, idx in enumerate(order.tolist()):
        kind = kinds[idx]
        for _ in range(max_rounds):
            es = _random_support(rng, n, kind, star_size)
            if not used.intersection(es):
                break
        else:
            raise PlacementError(
                f"could not place class {color} ({kind.value}) after {max_rounds} attempts; "
                f"{len(used)} of {n * (n - 1) // 2} edges already used"
            )
        used.update(es)
        classes.append(ColorClass(color, kind, tuple(es)))
    return EdgeColoredGraph(n, tuple(classes))


# --- random tuple families ------------------------------------------------------

class Stage(str, enum.Enum):
    RAW = "raw"
    OVERLAP_PRUNED = "overlap_pruned"
    CYCLE_PRUNED = "cycle_pruned"


VertexTuple = tuple[int, ...]


@dataclass(frozen=True)
class TupleFamily:
    n: int
    tuples: tuple[VertexTuple, ...]
    stage: Stage = Stage.RAW
    removed: int = 0

    def __post_init__(self):
        ts = tuple(sorted(tuple(t) for t in self.tuples))
        for t in ts:
            if len(t) not in (2, 3, 4) or any(a >= b for a, b in zip(t, t[1:])):
                raise ValueError(f"bad tuple {t}")
        if len(set(ts)) != len(ts):
            raise ValueError("repeated tuple")
        object.__setattr__(self, "tuples", ts)
        object.__setattr__(self, "stage", Stage(self.stage))

    def __len__(self):
        return len(self.tuples)

    def counts(self) -> dict[int, int]:
        out = {2: 0, 3: 0, 4: 0}
        for t in self.tuples:
            out[len(t)] += 1
        return out

    def max_overlap(self) -> int:
        """Largest number of vertices shared by two distinct tuples (0 if none share any)."""
        # tuples sharing two or more vertices necessarily share a vertex pair
        by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, t in enumerate(self.tuples):
            for pr in combinations(t, 2):
                by_pair[pr].append(i)
        best = 0
        for idx in by_pair.values():
            for i, j in combinations(idx, 2):
                best = max(best, len(set(self.tuples[i]) & set(self.tuples[j])))
        if best:
            return best
        seen: set[int] = set()
        for t in self.tuples:
            if seen.intersection(t):
                return 1
            seen.update(t)
        return 0


def lower_bound_density(n: int) -> float:
    return min(1.0, LOWER_BOUND_DENSITY / n**3)


def expected_family_size(n: int) -> float:
    return (math.comb(n, 2) + math.comb(n, 3) + math.comb(n, 4)) * lower_bound_density(n)


def _sample_subsets(rng: np.random.Generator, n: int, a: int, k: int) -> list[VertexTuple]:
    chosen: dict[VertexTuple, None] = {}
    while len(chosen) < k:
        batch = np.sort(rng.integers(0, n, size=(k - len(chosen) + 8, a)), axis=1)
        batch = batch[np.all(np.diff(batch, axis=1) > 0, axis=1)]
        for row in map(tuple, batch.tolist()):
            chosen.setdefault(row)
            if len(chosen) == k:
                break
    return list(chosen)


def lower_bound_family(n: int, seed: int) -> TupleFamily:
    """Keep each 2-, 3- and 4-subset of range(n) independently with probability 144/n^3.

    The number of kept subsets of each size is drawn from the binomial
    distribution and that many distinct subsets are then drawn uniformly,
    which has the same law as flipping a coin per subset.
    """
    if n < 10:
        raise ValueError("n must be at least 10")
    rng = np.random.default_rng(seed)
    p = lower_bound_density(n)
    tuples: list[VertexTuple] = []
    for a in (2, 3, 4):
        k = int(rng.binomial(math.comb(n, a), p))
        tuples += _sample_subsets(rng, n, a, k)
    return TupleFamily(n, tuple(tuples), Stage.RAW)


def prune_overlaps(f: TupleFamily) -> TupleFamily:
    """Drop the larger tuple of every pair sharing two or more vertices, pairs taken in order."""
    if f.stage is not Stage.RAW:
        raise ValueError(f"expected a raw family, got {f.stage.value}")
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, t in enumerate(f.tuples):
        for pr in combinations(t, 2):
            by_pair[pr].append(i)
    offending = sorted({(i, j) for idx in by_pair.values() for i, j in combinations(idx, 2)})
    dropped: set[int] = set()
    for i, j in offending:
        if i not in dropped and j not in dropped:
            dropped.add(j)
    kept = tuple(t for i, t in enumerate(f.tuples) if i not in dropped)
    return TupleFamily(f.n, kept, Stage.OVERLAP_PRUNED, removed=len(dropped))


def tuple_class(color: int, t: VertexTuple) -> ColorClass:
    if len(t) == 2:
        return ColorClass(color, Kind.SINGLE, (t,))
    if len(t) == 3:
        a, b, c = t
        return ColorClass(color, Kind.TRIANGLE, ((a, b), (b, c), (a, c)))
    a, b, c, d = t
    return ColorClass(color, Kind.MATCHING2, ((a, b), (c, d)))


def realize_tuples(f: TupleFamily) -> EdgeColoredGraph:
    """Color class i is tuple i: an edge, a triangle, or the 2-matching {ab, cd} of (a,b,c,d)."""
    if f.stage is Stage.RAW:
        raise ValueError("raw families may overlap; prune them before realizing")
    return EdgeColoredGraph(f.n, tuple(tuple_class(i, t) for i, t in enumerate(f.tuples)))


def prune_short_rainbow_cycles(f: TupleFamily, max_len: int) -> TupleFamily:
    """Remove tuples until the realized graph has no rainbow cycle of length <= ``max_len``.

    Each round finds the canonical shortest rainbow cycle and drops the tuple
    owning its least edge.  Removals only destroy cycles, so each search
    resumes at the length and start vertex where the previous one stopped.
    """
    if f.stage is not Stage.OVERLAP_PRUNED:
        raise ValueError(f"expected an overlap-pruned family, got {f.stage.value}")
    if max_len < 3:
        return TupleFamily(f.n, f.tuples, Stage.CYCLE_PRUNED, removed=0)
    g = realize_tuples(f)
    ec = g.edge_color
    searcher = RainbowSearcher(g)
    dropped: set[int] = set()
    length, start = 3, 0
    while True:
        hit = searcher.search(max_len, length, start)
        if hit is None:
            break
        length, start, cyc = hit
        color = ec[min(cyc.edges())]
        dropped.add(color)
        searcher.remove_edges(g.class_of[color].edges)
    if dropped:
        log.debug("cycle pruning removed %d tuples (max_len=%d)", len(dropped), max_len)
    kept = tuple(t for i, t in enumerate(f.tuples) if i not in dropped)
    return TupleFamily(f.n, kept, Stage.CYCLE_PRUNED, removed=len(dropped))
