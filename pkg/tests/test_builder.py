from __future__ import annotations

import random
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from immersionkit.builder import (
    KvSystem,
    XYDecomposition,
    build_biclique_immersion,
    build_case1,
    build_case2,
    build_kv_family,
    construct_from_decomposition,
    decompose,
    extend_after_recursion,
    find_rich_pair,
    resolve_case21,
    resolve_case22,
    smallest_non_adjacent_pair,
)
from immersionkit.certificate import Biclique
from immersionkit.errors import PreconditionViolated
from immersionkit.formats import from_graph6
from immersionkit.generators import GeneratorSpec, generate
from immersionkit.graph import MultiGraph, SimpleGraph, common_neighbors, complement, edge_critical_reduce, petersen
from immersionkit.verify import ClaimRecorder, exhaustive_immersion_search, verify_certificate

from case2_fixtures import sample_case2
from oracles import brute_alpha
from strategies import alpha2_graphs


def assert_valid(g, cert, ell):
    assert cert.pattern == Biclique(ell, ceil(g.n / 2) - ell)
    rep = verify_certificate(g, cert)
    assert rep.valid, rep.failures


# -- worked examples ------------------------------------------------------------


def test_c5_l1():
    g = SimpleGraph.cycle(5)
    cert = build_biclique_immersion(g, 1)
    assert_valid(g, cert, 1)
    assert exhaustive_immersion_search(g, Biclique(1, 2)) is not None


def test_k6_is_a_direct_star():
    g = SimpleGraph.complete(6)
    cert = build_biclique_immersion(g, 1)
    assert_valid(g, cert, 1)
    assert all(len(w) == 2 for w in cert.paths)


def test_petersen_complement_l2():
    g = complement(petersen())
    assert brute_alpha(g) == 2
    assert_valid(g, build_biclique_immersion(g, 2), 2)


def test_disjoint_cliques_use_the_larger_clique():
    edges = [(u, w) for u in range(4) for w in range(u + 1, 4)]
    edges += [(u, w) for u in range(4, 7) for w in range(u + 1, 7)]
    g = SimpleGraph.from_edges(7, edges)
    cert = build_biclique_immersion(g, 2)
    assert_valid(g, cert, 2)
    assert set(cert.branch) == {0, 1, 2, 3}


def test_preconditions():
    with pytest.raises(PreconditionViolated):
        build_biclique_immersion(SimpleGraph.empty(5), 1)
    with pytest.raises(PreconditionViolated):
        build_biclique_immersion(SimpleGraph.cycle(5), 3)
    with pytest.raises(PreconditionViolated):
        build_biclique_immersion(SimpleGraph.cycle(5), 0)


@settings(max_examples=60, deadline=None)
@given(alpha2_graphs(max_n=12), st.data())
def test_random_hosts_all_l(g, data):
    half = ceil(g.n / 2)
    if half < 2:
        return
    ell = data.draw(st.integers(1, half - 1))
    rec = ClaimRecorder()
    assert_valid(g, build_biclique_immersion(g, ell, rec), ell)
    assert rec.total_violations == 0


def test_recursion_measure_recorded():
    rec = ClaimRecorder()
    for seed in range(10):
        g = generate(GeneratorSpec("split-cliques", 20, seed=seed))
        for ell in range(1, 10):
            build_biclique_immersion(g, ell, rec)
    assert rec.evaluated.get("recursion_measure_decreases", 0) > 0
    assert rec.total_violations == 0


# -- pivot search ---------------------------------------------------------------


def test_find_rich_pair():
    assert find_rich_pair(SimpleGraph.complete(4), 1) is None
    c5 = SimpleGraph.cycle(5)
    assert find_rich_pair(c5, 1) == (0, 2)
    assert find_rich_pair(c5, 2) == (0, 2)
    assert find_rich_pair(c5, 3) is None
    assert smallest_non_adjacent_pair(c5) == (0, 2)
    g = complement(petersen())
    u, v = find_rich_pair(g, 2)
    assert len(common_neighbors(g, u, v)) == 4


# -- attaching x or y after the recursive call -------------------------------------


@pytest.mark.parametrize(
    "g6, ell, attached, routed",
    [
        ("Dls", 1, "x", False),
        ("Dj[", 1, "y", False),
        ("Fpoqw", 2, "x", True),
        ("J~}zy^~|^f_", 3, "x", True),
        ("N~~~~~~~~~dbjfGV~ww", 4, "x", False),
    ],
)
def test_extension_branches(g6, ell, attached, routed):
    r = edge_critical_reduce(from_graph6(g6))
    x, y = find_rich_pair(r, ell)
    rec = ClaimRecorder()
    cert = extend_after_recursion(r, x, y, ell, rec)
    assert_valid(r, cert, ell)
    right = set(cert.branch[ell:])
    assert (x in right, y in right) == (attached == "x", attached == "y")
    assert any(len(w) == 4 for w in cert.paths) == routed
    if routed:
        assert rec.evaluated["extension_Oc_ge_Ly"] == 1


def test_extension_with_largest_l_takes_any_vertices():
    # l = ceil(n/2) - 1: the part of size 0 needs no recursive call
    g = SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    cert = extend_after_recursion(g, 0, 2, 1)
    assert_valid(g, cert, 1)


def test_extension_rejects_poor_pair():
    with pytest.raises(PreconditionViolated):
        extend_after_recursion(SimpleGraph.cycle(5), 0, 2, 3)


# -- common-neighbour routing ---------------------------------------------------


def case1_instance() -> tuple[SimpleGraph, XYDecomposition, int]:
    g = edge_critical_reduce(generate(GeneratorSpec("c5-blowup", 45, p=0.0, seed=0)))
    ell = 11
    assert find_rich_pair(g, ell) is None
    x, y = smallest_non_adjacent_pair(g)
    return g, decompose(g, ell, x, y), ell


def test_decompose_partitions_vertices():
    g, dec, ell = case1_instance()
    assert dec.C | dec.X | dec.Y == frozenset(range(g.n))
    assert not (dec.C & dec.X) and not (dec.C & dec.Y) and not (dec.X & dec.Y)
    assert dec.XC | dec.XC_bar == dec.X and dec.Xa | dec.Xa_bar == dec.X
    assert dec.YC | dec.YC_bar == dec.Y and dec.Ya | dec.Ya_bar == dec.Y
    assert dec.XC <= dec.Xa and dec.YC <= dec.Ya
    assert len(dec.C) == ell - 2
    assert dec.swapped().swapped() == dec


def test_build_case1():
    g, dec, ell = case1_instance()
    rec = ClaimRecorder()
    cert = build_case1(dec, ell, g.n, rec)
    assert_valid(g, cert, ell)
    assert any(len(w) == 3 and w[1] in dec.C for w in cert.paths)
    assert rec.evaluated["case1_C_covers_stars"] == 1
    assert_valid(g, construct_from_decomposition(dec, ell, ClaimRecorder()), ell)


def synthetic_case1(p: int, q: int, xc: int, yc: int, c: int) -> XYDecomposition:
    # X = Xa_bar + XC and Y = Ya_bar + YC are cliques, C sees exactly XC + YC,
    # Xa_bar sees all of Ya_bar
    ids = iter(range(p + q + xc + yc + c))
    take = lambda k: [next(ids) for _ in range(k)]  # noqa: E731
    xa_bar, xcs, ya_bar, ycs, cs = take(p), take(xc), take(q), take(yc), take(c)
    X, Y = xa_bar + xcs, ya_bar + ycs
    edges = {(u, w) for side in (X, Y) for u in side for w in side if u < w}
    edges |= {(u, w) for u in xa_bar for w in ya_bar}
    edges |= {(u, w) for w in cs for u in xcs + ycs}
    fs = frozenset
    return XYDecomposition(
        g=SimpleGraph.from_edges(p + q + xc + yc + c, sorted(edges)),
        x=xcs[0], y=ycs[0], a=cs[0], C=fs(cs), X=fs(X), Y=fs(Y),
        XC=fs(xcs), XC_bar=fs(xa_bar), YC=fs(ycs), YC_bar=fs(ya_bar),
        Xa=fs(xcs), Xa_bar=fs(xa_bar), Ya=fs(ycs), Ya_bar=fs(ya_bar),
    )


def test_case1_without_routing():
    dec = synthetic_case1(1, 2, 1, 2, 4)
    cert = build_case1(dec, 3, dec.g.n)
    assert_valid(dec.g, cert, 3)
    assert all(len(w) == 2 for w in cert.paths)


def test_case1_single_routed_path():
    dec = synthetic_case1(2, 1, 1, 1, 5)
    cert = build_case1(dec, 3, dec.g.n)
    assert_valid(dec.g, cert, 3)
    routed = [w for w in cert.paths if len(w) > 2]
    assert routed == [(dec.y, min(dec.C), dec.x)]


def test_decompose_requires_common_neighbour():
    g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionViolated):
        decompose(g, 1, 0, 2)


# -- clique routing on synthetic decompositions ----------------------------------


def _bare_decomposition(n: int, Y, YC=()) -> XYDecomposition:
    fs = frozenset
    e = fs()
    return XYDecomposition(
        g=SimpleGraph.empty(n), x=0, y=0, a=0, C=e, X=e, Y=fs(Y), XC=e, XC_bar=e,
        YC=fs(YC), YC_bar=e, Xa=e, Xa_bar=e, Ya=e, Ya_bar=e,
    )


def _union(systems):
    h = MultiGraph(15)
    for s in systems:
        for a, b in s.edges():
            h.add(a, b)
    return h


def test_resolve_case21_detours_a_doubled_pair():
    systems = [
        KvSystem(0, {10: (0, 11, 10), 11: (0, 12, 11)}),
        KvSystem(1, {11: (1, 10, 11), 10: (1, 13, 10)}),
    ]
    h = _union(systems)
    assert h.pairs_with_multiplicity(2) == [(10, 11)]
    rec = ClaimRecorder()
    routed = resolve_case21(_bare_decomposition(15, range(10, 15)), systems, h, rec)
    assert routed[(0, 10)] == (0, 11, 14, 10)
    assert routed[(1, 11)] == (1, 10, 11)
    assert h.is_simple()
    assert rec.evaluated["detour_pool_gt_qu+qw"] == 1


def test_resolve_case21_leaves_simple_union_alone():
    systems = [KvSystem(0, {10: (0, 12, 10), 11: (0, 11)})]
    h = _union(systems)
    routed = resolve_case21(_bare_decomposition(15, range(10, 15)), systems, h)
    assert routed == {(0, 10): (0, 12, 10), (0, 11): (0, 11)}


def _case22(paths):
    sys_ = KvSystem(0, dict(paths))
    dec = _bare_decomposition(22, range(1, 10), YC=(20, 21))
    return resolve_case22(dec, [sys_], 10, ClaimRecorder())


def test_resolve_case22_cycle_becomes_direct():
    routed = _case22({2: (0, 1, 2), 3: (0, 2, 3), 1: (0, 3, 1)})
    assert routed == {(0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3)}


def test_resolve_case22_path_keeps_one_lifted_edge():
    routed = _case22({2: (0, 1, 2), 3: (0, 2, 3), 1: (0, 8, 1)})
    assert routed == {(0, 1): (0, 8, 1), (0, 2): (0, 2), (0, 3): (0, 1, 20, 3)}


def test_resolve_case22_matching_is_only_lifted():
    routed = _case22({2: (0, 1, 2), 1: (0, 8, 1)})
    assert routed == {(0, 1): (0, 8, 1), (0, 2): (0, 1, 20, 2)}


def test_kv_family_single_source():
    rng = random.Random(3)
    dec, ell = sample_case2(rng, wide=True)
    x_star = sorted(dec.XC_bar - dec.Xa_bar)[:1]
    y_star = sorted(dec.Ya_bar)[: ceil(dec.g.n / 2) - len(dec.X)]
    rec = ClaimRecorder()
    (sys_,), h = build_kv_family(dec, x_star, y_star, rec)
    assert sorted(sys_.paths) == y_star
    assert h.is_simple()
    for tgt, w in sys_.paths.items():
        assert w[0] == x_star[0] and w[-1] == tgt and len(w) <= 3
        assert all(dec.g.has_edge(a, b) for a, b in zip(w, w[1:]))


@pytest.mark.parametrize("wide", [True, False])
def test_case2_end_to_end(wide):
    rng = random.Random(17 if wide else 18)
    lifted = 0
    for _ in range(150):
        dec, ell = sample_case2(rng, wide)
        rec = ClaimRecorder()
        cert = build_case2(dec, ell, rec)
        assert_valid(dec.g, cert, ell)
        assert rec.total_violations == 0
        lifted += sum(len(w) == 4 for w in cert.paths)
        assert ("detour_pool_gt_qu+qw" in rec.evaluated) <= wide
    assert lifted > 0


def test_case2_through_dispatcher_and_swap():
    rng = random.Random(5)
    for _ in range(40):
        dec, ell = sample_case2(rng, wide=True)
        if len(dec.XC_bar) < ell:
            # the dispatcher must flip the pivot roles itself
            assert_valid(dec.g, construct_from_decomposition(dec.swapped(), ell, ClaimRecorder()), ell)
