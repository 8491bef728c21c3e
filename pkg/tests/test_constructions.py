import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import directed_girth, random_digraph_arcs
from rainbowgirth.constructions import (
    Digraph,
    PlacementError,
    Stage,
    TupleFamily,
    circulant_digraph,
    digraph_to_edge_colored,
    expected_family_size,
    half_barrier,
    half_barrier_claimed_girth,
    lower_bound_density,
    lower_bound_family,
    mixed_counts,
    prune_overlaps,
    prune_short_rainbow_cycles,
    random_mixed,
    realize_tuples,
    star_extremal,
)
from rainbowgirth.graph_core import Kind, census, serialize, validate
from rainbowgirth.rainbow_search import brute_force_rainbow_girth, rainbow_girth_exact


# --- star extremal --------------------------------------------------------------------

def test_star_extremal_shape():
    g = star_extremal(2, 3)
    assert g.n == 7 and len(g.edges) == 14 and len(g.classes) == 7
    assert all(c.kind is Kind.STAR for c in g.classes)
    assert g.class_of[0].edges == ((0, 1), (0, 2))
    assert g.class_of[6].edges == ((0, 6), (1, 6))  # wraps mod 7
    assert validate(g) == []


def test_star_extremal_k1_is_cycle():
    g = star_extremal(1, 5)
    assert all(c.kind is Kind.SINGLE for c in g.classes)
    assert brute_force_rainbow_girth(g).length == 6


@pytest.mark.parametrize("k, r", [(2, 3), (3, 2), (1, 2), (2, 4)])
def test_star_extremal_girth(k, r):
    assert brute_force_rainbow_girth(star_extremal(k, r)).length == r + 1


@pytest.mark.parametrize("k, r", [(0, 3), (2, 1)])
def test_star_extremal_rejects(k, r):
    with pytest.raises(ValueError):
        star_extremal(k, r)


# --- half barrier ------------------------------------------------------------------------

def test_half_barrier_m1():
    g = half_barrier(1)
    # two triangles, one matching, three singles: 3 + 3 + 2 + 1 + 1 + 1 edges
    assert (g.n, len(g.classes), len(g.edges)) == (6, 6, 11)
    assert validate(g) == []
    kinds = [c.kind for c in g.classes]
    assert kinds == [Kind.TRIANGLE, Kind.TRIANGLE, Kind.MATCHING2, Kind.SINGLE, Kind.SINGLE, Kind.SINGLE]
    assert g.class_of[2].edges == ((1, 3), (2, 4))
    assert g.class_of[5].edges == ((0, 5),)


@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_half_barrier_census(m):
    c = census(half_barrier(m))
    assert (c.n_triangle, c.n_matching2, c.n_single) == (2 * m, m, 3 * m)
    assert c.n_triangle + c.n_matching2 == c.n_single


def test_half_barrier_girth_discrepancy():
    # the literature claims 2n/3; every gadget carries a rainbow triangle
    for m in (1, 2):
        assert brute_force_rainbow_girth(half_barrier(m)).length == 3 < half_barrier_claimed_girth(m)
    assert rainbow_girth_exact(half_barrier(6), 3).length == 3


# --- digraph reduction ------------------------------------------------------------------

def test_directed_triangle():
    g = digraph_to_edge_colored(Digraph(3, ((0, 1), (1, 2), (2, 0))))
    assert [c.kind for c in g.classes] == [Kind.SINGLE] * 3
    assert brute_force_rainbow_girth(g).length == 3


def test_directed_path():
    g = digraph_to_edge_colored(Digraph(3, ((0, 1), (1, 2))))
    assert len(g.classes) == 2
    assert brute_force_rainbow_girth(g).length is None


def test_digon_rejected():
    with pytest.raises(ValueError, match="digon"):
        digraph_to_edge_colored(Digraph(2, ((0, 1), (1, 0))))


@pytest.mark.parametrize("bad", [((0, 0),), ((0, 1), (0, 1)), ((0, 5),)])
def test_digraph_validation(bad):
    with pytest.raises(ValueError):
        Digraph(3, bad)


@pytest.mark.parametrize("k, r", [(1, 4), (2, 3), (3, 2), (3, 4)])
def test_star_extremal_is_circulant_reduction(k, r):
    assert digraph_to_edge_colored(circulant_digraph(k, r)) == star_extremal(k, r)


def test_stars_centered_at_distinct_vertices():
    rng = random.Random(5)
    d = Digraph(8, tuple(random_digraph_arcs(rng, 8, 0.6)))
    g = digraph_to_edge_colored(d)
    for c in g.classes:
        assert all(c.color in e for e in c.edges)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 8), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1))
def test_rainbow_iff_directed(n, density, seed):
    arcs = random_digraph_arcs(random.Random(seed), n, density)
    g = digraph_to_edge_colored(Digraph(n, tuple(arcs)))
    assert brute_force_rainbow_girth(g).length == directed_girth(n, arcs)


# --- random mixed --------------------------------------------------------------------------

def test_random_mixed_echoes_request():
    counts = {Kind.TRIANGLE: 6, Kind.SINGLE: 6}
    g = random_mixed(12, counts, seed=4)
    assert validate(g) == []
    c = census(g)
    assert (c.n_triangle, c.n_single, c.n_matching2) == (6, 6, 0)
    assert serialize(g) == serialize(random_mixed(12, counts, seed=4))
    assert serialize(g) != serialize(random_mixed(12, counts, seed=5))


def test_random_mixed_alpha():
    g = random_mixed(100, mixed_counts(100, 0.75), seed=1)
    assert validate(g) == []
    assert census(g).alpha_effective == 0.75


def test_random_mixed_stars():
    g = random_mixed(40, {"star": 10, "single": 30}, seed=2, star_size=4)
    assert census(g).n_star == 10 and validate(g) == []
    assert all(len(c.edges) == 4 for c in g.classes if c.kind is Kind.STAR)


def test_random_mixed_errors():
    with pytest.raises(ValueError):
        random_mixed(10, {Kind.SINGLE: 9}, seed=0)
    with pytest.raises(PlacementError, match="could not place"):
        random_mixed(4, {Kind.TRIANGLE: 4}, seed=0, max_rounds=200)
    with pytest.raises(PlacementError):
        random_mixed(3, {Kind.MATCHING2: 3}, seed=0)


# --- lower-bound tuple families -------------------------------------------------------------

def test_expected_family_size():
    parts = [math.comb(100, a) * 144 / 100**3 for a in (2, 3, 4)]
    assert parts == pytest.approx([0.7128, 23.2848, 564.6564], abs=1e-4)
    assert expected_family_size(100) == pytest.approx(588.654, abs=1e-3)
    for n in (10, 50, 200, 1000, 5000):
        assert expected_family_size(n) >= 4 * n
    assert lower_bound_density(6) < 1 and lower_bound_density(5) == 1


def test_lower_bound_family_mean_size():
    n, seeds = 60, 300
    sizes = np.array([len(lower_bound_family(n, s)) for s in range(seeds)])
    p = lower_bound_density(n)
    var = sum(math.comb(n, a) * p * (1 - p) for a in (2, 3, 4))
    se = math.sqrt(var / seeds)
    assert abs(sizes.mean() - expected_family_size(n)) < 5 * se


def test_lower_bound_family_arity_split():
    n = 80
    counts = np.array([[lower_bound_family(n, s).counts()[a] for a in (2, 3, 4)] for s in range(200)])
    p = lower_bound_density(n)
    for j, a in enumerate((2, 3, 4)):
        mu = math.comb(n, a) * p
        se = math.sqrt(mu * (1 - p) / 200)
        assert abs(counts[:, j].mean() - mu) < 5 * se


def test_lower_bound_family_deterministic():
    assert lower_bound_family(50, 9) == lower_bound_family(50, 9)
    assert lower_bound_family(50, 9).stage is Stage.RAW
    with pytest.raises(ValueError):
        lower_bound_family(9, 0)


def test_prune_overlaps_examples():
    f = prune_overlaps(TupleFamily(10, ((0, 1, 2), (0, 1, 3)), Stage.RAW))
    assert f.tuples == ((0, 1, 2),) and f.removed == 1 and f.stage is Stage.OVERLAP_PRUNED

    f = prune_overlaps(TupleFamily(10, ((0, 1), (0, 1, 2, 3)), Stage.RAW))
    assert f.tuples == ((0, 1),)

    clean = TupleFamily(10, ((0, 1, 2), (2, 3, 4), (4, 5), (6, 7, 8, 9)), Stage.RAW)
    f = prune_overlaps(clean)
    assert f.tuples == clean.tuples and f.removed == 0


def test_prune_overlaps_chain():
    # (0,1,2) kills (0,1,3); (0,1,3) is gone so (1,3,4) survives its pair with it
    raw = TupleFamily(10, ((0, 1, 2), (0, 1, 3), (1, 3, 4)), Stage.RAW)
    assert prune_overlaps(raw).tuples == ((0, 1, 2), (1, 3, 4))


@settings(max_examples=40, deadline=None)
@given(st.integers(10, 70), st.integers(0, 2**32 - 1))
def test_prune_overlaps_pairwise(n, seed):
    f = prune_overlaps(lower_bound_family(n, seed))
    ts = f.tuples
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            assert len(set(ts[i]) & set(ts[j])) <= 1
    assert f.max_overlap() <= 1
    assert validate(realize_tuples(f)) == []


def test_realize_examples():
    g = realize_tuples(TupleFamily(10, ((0, 1), (2, 3, 4)), Stage.OVERLAP_PRUNED))
    assert [c.kind for c in g.classes] == [Kind.SINGLE, Kind.TRIANGLE] and len(g.edges) == 4
    g = realize_tuples(TupleFamily(10, ((0, 1, 2, 3),), Stage.OVERLAP_PRUNED))
    assert g.classes[0].kind is Kind.MATCHING2 and g.classes[0].edges == ((0, 1), (2, 3))
    with pytest.raises(ValueError):
        realize_tuples(TupleFamily(10, ((0, 1),), Stage.RAW))


def test_prune_cycles_examples():
    tri = TupleFamily(10, ((0, 1), (0, 2), (1, 2)), Stage.OVERLAP_PRUNED)
    out = prune_short_rainbow_cycles(tri, 3)
    assert out.tuples == ((0, 2), (1, 2)) and out.removed == 1 and out.stage is Stage.CYCLE_PRUNED

    path = TupleFamily(10, ((0, 1), (1, 2), (2, 3), (0, 3)), Stage.OVERLAP_PRUNED)
    assert prune_short_rainbow_cycles(path, 3).tuples == path.tuples
    assert prune_short_rainbow_cycles(path, 4).removed == 1
    assert prune_short_rainbow_cycles(path, 2).tuples == path.tuples
    with pytest.raises(ValueError):
        prune_short_rainbow_cycles(TupleFamily(10, ((0, 1),), Stage.RAW), 3)


def test_prune_cycles_matches_restarting_search():
    # resuming the search must remove exactly what naive restarts remove
    f = prune_overlaps(lower_bound_family(40, 3))
    fast = prune_short_rainbow_cycles(f, 5)
    tuples = list(f.tuples)
    while True:
        g = realize_tuples(TupleFamily(40, tuple(tuples), Stage.OVERLAP_PRUNED))
        res = rainbow_girth_exact(g, 5)
        if res.length is None:
            break
        color = g.edge_color[min(res.witness.edges())]
        del tuples[color]
    assert fast.tuples == tuple(tuples)
    assert fast.removed > 0


@settings(max_examples=15, deadline=None)
@given(st.integers(30, 90), st.integers(4, 6), st.integers(0, 2**32 - 1))
def test_cycle_pruned_has_no_short_rainbow_cycle(n, max_len, seed):
    f = prune_short_rainbow_cycles(prune_overlaps(lower_bound_family(n, seed)), max_len)
    g = realize_tuples(f)
    assert validate(g) == []
    assert rainbow_girth_exact(g, max_len).length is None
