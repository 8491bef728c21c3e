"""Random vertex sampling that turns a dense rainbow edge set into a short rainbow cycle.

Each trial keeps every vertex with probability p and counts how many color
classes keep an edge.  When few vertices carry many surviving classes, one
edge per class already forms a graph whose girth is logarithmic, and every
cycle in it is rainbow.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph_core import EdgeColoredGraph, Kind, census, is_reduced, reduce_graph
from .probability import SamplingParameters, bs_bound, find_sampling_parameters
from .rainbow_search import RainbowCycle, girth, representative_subgraph, verify_rainbow

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def split_seed(master_seed: int, index: int) -> int:
    """Output ``index`` of a SplitMix64 generator seeded with ``master_seed``."""
    z = (master_seed + (index + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(split_seed(master_seed, index))


def sample_vertices(n: int, p: float, rng: np.random.Generator) -> frozenset[int]:
    """Each vertex independently with probability p."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return frozenset(np.flatnonzero(rng.random(n) < p).tolist())


@dataclass(frozen=True)
class SampleReport:
    trial_index: int
    h_size: int
    survivors: tuple[int, int, int]  # (matching2, triangle, single)
    rainbow_edge_count: int
    success: bool
    params: SamplingParameters
    n: int

    @property
    def size_slack(self) -> float:
        """beta n - |H|; nonnegative when the vertex-count condition holds."""
        return self.params.beta * self.n - self.h_size

    @property
    def edge_slack(self) -> float:
        """Surviving classes minus (beta + gamma) n."""
        return self.rainbow_edge_count - (self.params.beta + self.params.gamma) * self.n


def evaluate_sample(
    g: EdgeColoredGraph, h: Iterable[int], params: SamplingParameters, trial_index: int = 0
) -> SampleReport:
    if not is_reduced(g):
        raise ValueError("graph has star/other classes; reduce it first")
    h = frozenset(h)
    _, kept = representative_subgraph(g, h)
    surv = {Kind.MATCHING2: 0, Kind.TRIANGLE: 0, Kind.SINGLE: 0}
    for color in kept.values():
        surv[g.class_of[color].kind] += 1
    e = len(kept)
    ok = len(h) <= params.beta * g.n and e >= (params.beta + params.gamma) * g.n
    return SampleReport(
        trial_index,
        len(h),
        (surv[Kind.MATCHING2], surv[Kind.TRIANGLE], surv[Kind.SINGLE]),
        e,
        ok,
        params,
        g.n,
    )


@dataclass(frozen=True)
class CycleSearchResult:
    success: bool
    cycle: RainbowCycle | None
    report: SampleReport | None
    tries: int
    girth_bound: float | None = None
    reason: str = ""

    @property
    def length(self) -> int | None:
        return len(self.cycle) if self.cycle is not None else None


def find_short_rainbow_cycle(
    g: EdgeColoredGraph,
    params: SamplingParameters | None = None,
    max_tries: int = 100,
    master_seed: int = 0,
) -> CycleSearchResult:
    """Sample until a subset passes both conditions, then return a shortest cycle of its representative graph.

    Stars and other classes are reduced first.  Without explicit ``params``
    the default grid search is used; if no grid point works, no trial is run.
    On failure ``report`` holds the trial with the largest edge slack.
    """
    if max_tries < 1:
        raise ValueError("max_tries must be at least 1")
    work = g
    if not is_reduced(g):
        log.info("reducing star/other classes before sampling")
        work = reduce_graph(g)
    if params is None:
        params = find_sampling_parameters(census(work))
        if params is None:
            return CycleSearchResult(False, None, None, 0, reason="no sampling parameters satisfy the inequality")

    best: SampleReport | None = None
    for t in range(max_tries):
        h = sample_vertices(work.n, params.p, trial_rng(master_seed, t))
        report = evaluate_sample(work, h, params, trial_index=t)
        if not report.success:
            if best is None or report.edge_slack > best.edge_slack:
                best = report
            continue
        sub, _ = representative_subgraph(work, h)
        gr = girth(sub)
        if gr.length is None:  # cannot happen: e > |H| forces a cycle
            raise AssertionError("successful sample without a cycle")
        cyc = RainbowCycle.from_vertices(g, gr.witness)
        if not verify_rainbow(g, cyc):
            raise AssertionError(f"witness {cyc} is not rainbow in the input graph")
        k = report.rainbow_edge_count - report.h_size
        bound = bs_bound(report.h_size, k) if k >= 2 and report.h_size >= 4 else None
        return CycleSearchResult(True, cyc, report, t + 1, girth_bound=bound)
    return CycleSearchResult(False, None, best, max_tries, reason=f"no successful sample in {max_tries} tries")
