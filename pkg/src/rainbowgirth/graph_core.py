"""Edge-colored graph model, class taxonomy, reduction, and the ECG text format.

Vertices are integers ``0..n-1`` and an edge is a canonical ``(u, v)`` tuple
with ``u < v``.  A graph is a list of color classes that partition its edge set;
every class carries a declared :class:`Kind`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


class Kind(str, enum.Enum):
    SINGLE = "single"
    MATCHING2 = "matching2"
    TRIANGLE = "triangle"
    STAR = "star"
    OTHER = "other"


REDUCED_KINDS = frozenset({Kind.SINGLE, Kind.MATCHING2, Kind.TRIANGLE})


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _check_edge_set(edges: Sequence[Edge]) -> list[Edge]:
    out = []
    seen = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        e = edge(u, v)
        if e in seen:
            raise ValueError(f"duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        out.append(e)
    return sorted(out)


def _common_vertices(edges: Sequence[Edge]) -> set[int]:
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
    return common


def classify_class(edges: Sequence[Edge]) -> Kind:
    """Return the most specific kind describing ``edges``.

    Raises ``ValueError`` on an empty set, loops or repeated edges.
    """
    es = _check_edge_set(edges)
    if not es:
        raise ValueError("empty color class")
    if len(es) == 1:
        return Kind.SINGLE
    verts = {x for e in es for x in e}
    if len(es) == 2 and len(verts) == 4:
        return Kind.MATCHING2
    if len(es) == 3 and len(verts) == 3:
        return Kind.TRIANGLE
    if _common_vertices(es):
        return Kind.STAR
    return Kind.OTHER


@dataclass(frozen=True)
class ColorClass:
    color: int
    kind: Kind
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "edges", tuple(sorted(edge(u, v) for u, v in self.edges)))

    @classmethod
    def of(cls, color: int, edges: Iterable[Edge]) -> "ColorClass":
        """Build a class whose kind is inferred with :func:`classify_class`."""
        edges = list(edges)
        return cls(color, classify_class(edges), tuple(edges))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in e)


@dataclass(frozen=True)
class Diagnostic:
    invariant: str
    message: str
    color: int | None = None
    edge: Edge | None = None

    def __str__(self):
        where = f"class {self.color}: " if self.color is not None else ""
        return f"{where}{self.invariant} ({self.message})"


def class_problems(kind: Kind, edges: Sequence[Edge]) -> list[tuple[str, str]]:
    """(invariant, message) pairs describing why ``edges`` is not a valid ``kind`` class."""
    problems = []
    canon = [edge(u, v) for u, v in edges]
    for u, v in canon:
        if u == v:
            problems.append(("no loops", f"loop at vertex {u}"))
    if len(set(canon)) != len(canon):
        dup = next(e for e in canon if canon.count(e) > 1)
        problems.append(("edges pairwise distinct", f"edge {dup[0]} {dup[1]} repeated"))
    if not canon:
        problems.append(("nonempty class", "class has no edges"))
    if problems:
        return problems

    verts = sorted({x for e in canon for x in e})
    if kind is Kind.SINGLE:
        if len(canon) != 1:
            problems.append(("single has exactly 1 edge", f"single class has {len(canon)} edges"))
    elif kind is Kind.MATCHING2:
        if len(canon) != 2:
            problems.append(("matching2 has exactly 2 edges", f"matching2 class has {len(canon)} edges"))
        else:
            shared = sorted(set(canon[0]) & set(canon[1]))
            if shared:
                problems.append(
                    ("edges not vertex-disjoint", f"matching2 edges share vertex {shared[0]}")
                )
    elif kind is Kind.TRIANGLE:
        if len(canon) != 3 or len(verts) != 3:
            problems.append(
                ("triangle is a 3-cycle", f"triangle class has {len(canon)} edges on {len(verts)} vertices")
            )
    elif kind is Kind.STAR:
        if len(canon) < 2:
            problems.append(("star has at least 2 edges", f"star class has {len(canon)} edge"))
        elif not _common_vertices(canon):
            problems.append(("star edges share a common vertex", "star edges have no common vertex"))
    else:
        actual = classify_class(canon)
        if actual is not Kind.OTHER:
            problems.append(("other only if nothing fits", f"edges form a {actual.value} class"))
    return problems


@dataclass(frozen=True)
class EdgeColoredGraph:
    n: int
    classes: tuple[ColorClass, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(sorted(self.classes, key=lambda c: c.color)))

    @cached_property
    def edge_color(self) -> dict[Edge, int]:
        return {e: c.color for c in self.classes for e in c.edges}

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(e for c in self.classes for e in c.edges))

    @cached_property
    def class_of(self) -> dict[int, ColorClass]:
        return {c.color: c for c in self.classes}

    def adjacency(self) -> list[dict[int, int]]:
        """Per-vertex map neighbour -> color of the joining edge."""
        adj: list[dict[int, int]] = [{} for _ in range(self.n)]
        for c in self.classes:
            for u, v in c.edges:
                adj[u][v] = c.color
                adj[v][u] = c.color
        return adj

    def validate(self) -> list[Diagnostic]:
        return validate(self)


def validate(g: EdgeColoredGraph) -> list[Diagnostic]:
    """Return every violated invariant of ``g``; an empty list means valid."""
    diags: list[Diagnostic] = []
    if g.n < 0:
        diags.append(Diagnostic("vertex count nonnegative", f"n = {g.n}"))
    owner: dict[Edge, int] = {}
    seen_colors: set[int] = set()
    for c in g.classes:
        if c.color in seen_colors:
            diags.append(Diagnostic("distinct colors", f"color {c.color} used twice", c.color))
        seen_colors.add(c.color)
        for inv, msg in class_problems(c.kind, c.edges):
            diags.append(Diagnostic(inv, msg, c.color))
        for e in c.edges:
            if not (0 <= e[0] < g.n and 0 <= e[1] < g.n):
                diags.append(Diagnostic("endpoints are valid vertices", f"edge {e[0]} {e[1]} outside [0, {g.n})", c.color, e))
            if e in owner and owner[e] != c.color:
                diags.append(
                    Diagnostic("not edge-disjoint", f"edge {e[0]} {e[1]} also in class {owner[e]}", c.color, e)
                )
            owner.setdefault(e, c.color)
    return diags


def reduce_class(c: ColorClass) -> ColorClass:
    """Shrink ``c`` to a single edge, a 2-matching or a triangle.

    Stars keep their least edge.  Any other non-triangle class keeps the
    lexicographically least vertex-disjoint pair of edges.
    """
    problems = class_problems(c.kind, c.edges)
    if problems:
        raise ValueError(f"invalid class {c.color}: {problems[0][1]}")
    if c.kind in (Kind.SINGLE, Kind.STAR):
        return ColorClass(c.color, Kind.SINGLE, c.edges[:1])
    if c.kind in (Kind.TRIANGLE, Kind.MATCHING2):
        return c
    for e, f in combinations(c.edges, 2):
        if not set(e) & set(f):
            return ColorClass(c.color, Kind.MATCHING2, (e, f))
    # every pairwise-intersecting edge set is a star or a triangle
    raise AssertionError(f"class {c.color} of kind other has no 2-matching")


def reduce_graph(g: EdgeColoredGraph) -> EdgeColoredGraph:
    return EdgeColoredGraph(g.n, tuple(reduce_class(c) for c in g.classes))


def is_reduced(g: EdgeColoredGraph) -> bool:
    return all(c.kind in REDUCED_KINDS for c in g.classes)


@dataclass(frozen=True)
class ClassCensus:
    n: int
    n_single: int = 0
    n_matching2: int = 0
    n_triangle: int = 0
    n_star: int = 0
    n_other: int = 0

    @property
    def total(self) -> int:
        return self.n_single + self.n_matching2 + self.n_triangle + self.n_star + self.n_other

    @property
    def alpha_effective(self) -> float:
        return (self.n_matching2 + self.n_triangle) / self.n if self.n else 0.0


def census(g: EdgeColoredGraph) -> ClassCensus:
    counts = {k: 0 for k in Kind}
    for c in g.classes:
        counts[c.kind] += 1
    return ClassCensus(
        g.n,
        n_single=counts[Kind.SINGLE],
        n_matching2=counts[Kind.MATCHING2],
        n_triangle=counts[Kind.TRIANGLE],
        n_star=counts[Kind.STAR],
        n_other=counts[Kind.OTHER],
    )


# --- ECG text format -------------------------------------------------------

class ECGParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def serialize(g: EdgeColoredGraph) -> str:
    lines = ["ecg 1", f"n {g.n}"]
    for c in g.classes:
        coords = " ".join(f"{u} {v}" for u, v in c.edges)
        lines.append(f"class {c.color} {c.kind.value} {coords}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> EdgeColoredGraph:
    """Parse ECG text; raises :class:`ECGParseError` naming the offending line."""
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(text.split("\n"))]
    rows = [(i, ln) for i, ln in rows if ln]
    if not rows or rows[0][1].split() != ["ecg", "1"]:
        raise ECGParseError(rows[0][0] if rows else 1, "expected header 'ecg 1'")
    if len(rows) < 2:
        raise ECGParseError(rows[0][0] + 1, "missing 'n <vertex_count>' line")
    lineno, ln = rows[1]
    toks = ln.split()
    if len(toks) != 2 or toks[0] != "n" or not toks[1].isdigit():
        raise ECGParseError(lineno, "expected 'n <vertex_count>'")
    n = int(toks[1])

    classes = []
    line_of: dict[int, int] = {}
    owner: dict[Edge, int] = {}
    for lineno, ln in rows[2:]:
        toks = ln.split()
        if toks[0] != "class" or len(toks) < 3:
            raise ECGParseError(lineno, "expected 'class <color> <kind> <u> <v> ...'")
        try:
            color = int(toks[1])
            coords = [int(t) for t in toks[3:]]
        except ValueError as exc:
            raise ECGParseError(lineno, f"non-integer token ({exc})") from None
        try:
            kind = Kind(toks[2])
        except ValueError:
            raise ECGParseError(lineno, f"unknown kind {toks[2]!r}") from None
        if len(coords) % 2 or not coords:
            raise ECGParseError(lineno, "edge list must hold an even, nonzero number of endpoints")
        edges = list(zip(coords[::2], coords[1::2]))
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ECGParseError(lineno, f"edge {u} {v} has endpoint outside [0, {n})")
        problems = class_problems(kind, edges)
        if problems:
            raise ECGParseError(lineno, problems[0][1])
        if color in line_of:
            raise ECGParseError(lineno, f"color {color} already defined on line {line_of[color]}")
        line_of[color] = lineno
        for u, v in edges:
            e = edge(u, v)
            if e in owner:
                raise ECGParseError(lineno, f"edge {e[0]} {e[1]} already in class {owner[e]}")
            owner[e] = color
        classes.append(ColorClass(color, kind, tuple(edges)))
    return EdgeColoredGraph(n, tuple(classes))
