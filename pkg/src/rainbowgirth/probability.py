"""Closed-form survival probabilities for random vertex subsets, and their oracle.

A vertex subset ``H`` keeps each vertex independently with probability ``p``.
A color class *survives* when at least one of its edges lies inside ``G[H]``.
Every closed form here has an exact counterpart in :func:`enumerate_survival`,
which sums over all inclusion patterns of a small vertex layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .graph_core import ClassCensus, Edge, Kind

MAX_ENUM_VERTICES = 8

DEFAULT_P_GRID = (0.999, 0.995, 0.99, 0.98, 0.97, 0.96, 0.95, 0.94, 0.93, 0.92, 0.91, 0.90)
DEFAULT_EPS_GRID = (0.001, 0.005, 0.01, 0.02)

KIND_LAYOUTS: dict[Kind, tuple[Edge, ...]] = {
    Kind.SINGLE: ((0, 1),),
    Kind.MATCHING2: ((0, 1), (2, 3)),
    Kind.TRIANGLE: ((0, 1), (1, 2), (0, 2)),
}


def survival_probability(kind: Kind, p: float) -> float:
    """P(at least one edge of a ``kind`` class lies in G[H])."""
    kind = Kind(kind)
    if kind is Kind.MATCHING2:
        return 2 * p**2 - p**4
    if kind is Kind.TRIANGLE:
        return 3 * p**2 - 2 * p**3
    if kind is Kind.SINGLE:
        return p**2
    raise ValueError(f"no survival formula for {kind.value} classes; reduce the graph first")


@dataclass(frozen=True)
class JointConfiguration:
    """Two color classes laid out on vertices ``0..v-1``.

    The joint event is that both classes survive.  ``kinds`` records the kind
    of each class; ``tag`` names the overlap pattern.
    """

    tag: str
    kinds: tuple[Kind, Kind]
    classes: tuple[tuple[Edge, ...], tuple[Edge, ...]]

    @property
    def v(self) -> int:
        return 1 + max(x for cls in self.classes for e in cls for x in e)


# x=0 y=1 u=2 v=3 z=4 s=5 t=6: {xy, uv} against {xz, st}
MM_CASE1 = JointConfiguration(
    "MM_case1", (Kind.MATCHING2, Kind.MATCHING2), (((0, 1), (2, 3)), ((0, 4), (5, 6)))
)
# {xy, uv} against {xz, us}
MM_CASE2 = JointConfiguration(
    "MM_case2", (Kind.MATCHING2, Kind.MATCHING2), (((0, 1), (2, 3)), ((0, 4), (2, 5)))
)
# triangles {0,1,2} and {0,3,4} meeting at vertex 0
TT_SHARED_VERTEX = JointConfiguration(
    "TT_shared_vertex", (Kind.TRIANGLE, Kind.TRIANGLE), (((0, 1), (1, 2), (0, 2)), ((0, 3), (3, 4), (0, 4)))
)


def disjoint(kind_a: Kind, kind_b: Kind) -> JointConfiguration:
    a = KIND_LAYOUTS[Kind(kind_a)]
    shift = 1 + max(x for e in a for x in e)
    b = tuple((u + shift, v + shift) for u, v in KIND_LAYOUTS[Kind(kind_b)])
    return JointConfiguration("disjoint", (Kind(kind_a), Kind(kind_b)), (a, b))


def _layout(target: Kind | JointConfiguration) -> tuple[int, Sequence[Sequence[Edge]]]:
    if isinstance(target, JointConfiguration):
        return target.v, target.classes
    edges = KIND_LAYOUTS.get(Kind(target))
    if edges is None:
        raise ValueError(f"no layout for {Kind(target).value} classes")
    return 1 + max(x for e in edges for x in e), (edges,)


def enumerate_survival(target: Kind | JointConfiguration, p: float) -> float:
    """Exact probability that every class of ``target`` survives, by summing over 2^v patterns."""
    v, classes = _layout(target)
    if v > MAX_ENUM_VERTICES:
        raise ValueError(f"layout has {v} vertices; enumeration is limited to {MAX_ENUM_VERTICES}")
    total = 0.0
    for keep in product((False, True), repeat=v):
        if all(any(keep[a] and keep[b] for a, b in cls) for cls in classes):
            k = sum(keep)
            total += p**k * (1 - p) ** (v - k)
    return total


def joint_survival_probability(cfg: JointConfiguration, p: float) -> float:
    """E[X_i X_j] for the overlap patterns that have a closed form."""
    if cfg.tag == "MM_case1":
        return p**3 + 3 * p**4 - 2 * p**5 - 2 * p**6 + p**7
    if cfg.tag == "MM_case2":
        return 2 * p**3 + 2 * p**4 - 4 * p**5 + p**6
    if cfg.tag == "TT_shared_vertex":
        return 5 * p**4 * (1 - p) + 4 * p**3 * (1 - p) ** 2 + p**5
    if cfg.tag == "disjoint":
        return survival_probability(cfg.kinds[0], p) * survival_probability(cfg.kinds[1], p)
    raise ValueError(f"no closed form for configuration {cfg.tag!r}")


def joint_covariance(cfg: JointConfiguration, p: float) -> float:
    return joint_survival_probability(cfg, p) - (
        survival_probability(cfg.kinds[0], p) * survival_probability(cfg.kinds[1], p)
    )


# --- expected number of surviving classes ----------------------------------------

def _check_reduced(census: ClassCensus) -> None:
    if census.n_star or census.n_other:
        raise ValueError("census contains star/other classes; reduce the graph first")


def expected_rainbow_edges(census: ClassCensus, p: float) -> float:
    """n * f(p): expected number of color classes surviving in G[H]."""
    _check_reduced(census)
    return (
        census.n_matching2 * survival_probability(Kind.MATCHING2, p)
        + census.n_triangle * survival_probability(Kind.TRIANGLE, p)
        + census.n_single * survival_probability(Kind.SINGLE, p)
    )


def f_prime(census: ClassCensus, p: float) -> float:
    _check_reduced(census)
    return (
        (4 * p - 4 * p**3) * census.n_matching2
        + (6 * p - 6 * p**2) * census.n_triangle
        + 2 * p * census.n_single
    ) / census.n


def derivative_condition(census: ClassCensus) -> float:
    """f'(1), which equals 2 |F_S| / n; sampling can only work when this is below 1."""
    return f_prime(census, 1.0)


@dataclass(frozen=True)
class SamplingParameters:
    p: float
    epsilon: float
    gamma: float

    @property
    def beta(self) -> float:
        return (1 + self.epsilon) * self.p


def inequality_margin(census: ClassCensus, p: float, epsilon: float) -> float:
    """(1-eps) f(p) - (1+eps) p; positive exactly when the sampling inequality holds."""
    return (1 - epsilon) * expected_rainbow_edges(census, p) / census.n - (1 + epsilon) * p


def find_sampling_parameters(
    census: ClassCensus,
    p_grid: Sequence[float] = DEFAULT_P_GRID,
    eps_grid: Sequence[float] = DEFAULT_EPS_GRID,
) -> SamplingParameters | None:
    """First ``(p, eps)`` in grid order (p outer) with a strictly positive margin."""
    _check_reduced(census)
    if census.n == 0:
        return None
    for p in p_grid:
        for eps in eps_grid:
            gamma = inequality_margin(census, p, eps)
            if gamma > 0:
                return SamplingParameters(p, eps, gamma)
    return None


def bs_bound(n: int, k: int) -> float:
    """Bollobas-Szemeredi girth bound for an n-vertex graph with n + k edges (logs base 2)."""
    if n < 4 or k < 2:
        raise ValueError(f"bound needs n >= 4 and k >= 2, got n={n}, k={k}")
    lk = math.log2(k)
    return 2 * (n + k) / (3 * k) * (lk + math.log2(lk) + 4)
