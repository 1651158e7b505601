from __future__ import annotations

import json
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from immersionkit.builder import XYDecomposition
from immersionkit.certificate import (
    Biclique,
    CompleteTripartite,
    ImmersionCertificate,
    biclique_certificate,
    pattern_from_json,
)
from immersionkit.errors import InternalAssertion, SizeLimit
from immersionkit.graph import SimpleGraph
from immersionkit.verify import (
    ClaimRecorder,
    assert_claim_inequalities,
    exhaustive_immersion_search,
    verify_certificate,
)

C5 = SimpleGraph.cycle(5)


def star_in_c5() -> ImmersionCertificate:
    # K_{1,2} with centre 0: direct edge 0-1 and routed 0-4
    return biclique_certificate(C5, [0], [1, 4], {(0, 1): (0, 1), (0, 4): (0, 4)})


def triangle_in_c5() -> ImmersionCertificate:
    return ImmersionCertificate(C5, CompleteTripartite(1, 1, 1), (0, 1, 4), ((0, 1), (0, 4), (1, 2, 3, 4)))


def test_valid_certificates():
    for cert in (star_in_c5(), triangle_in_c5()):
        rep = verify_certificate(C5, cert)
        assert rep.valid and rep.failures == []
    rep = verify_certificate(C5, triangle_in_c5())
    assert rep.stats == {"paths": 3, "max_path_length": 3, "host_edges_used": 5}


def test_single_edge_certificate():
    g = SimpleGraph.from_edges(2, [(0, 1)])
    cert = biclique_certificate(g, [0], [1], {(0, 1): (0, 1)})
    assert verify_certificate(g, cert).valid


@pytest.mark.parametrize(
    "mutate, rule",
    [
        (lambda c: replace(c, branch=(0, 1)), "branch-size"),
        (lambda c: replace(c, branch=(0, 1, 7)), "branch-range"),
        (lambda c: replace(c, branch=(0, 1, 1)), "branch-injective"),
        (lambda c: replace(c, paths=c.paths[:1]), "path-count"),
        (lambda c: replace(c, paths=c.paths[:1]), "missing-path"),
        (lambda c: replace(c, paths=((0,), c.paths[1])), "walk-length"),
        (lambda c: replace(c, paths=((0, 9), c.paths[1])), "walk-range"),
        (lambda c: replace(c, paths=((0, 1, 0, 1), c.paths[1])), "walk-simple"),
        (lambda c: replace(c, paths=((0, 2, 1), c.paths[1])), "walk-adjacency"),
        (lambda c: replace(c, paths=(c.paths[0], c.paths[0])), "extra-path"),
    ],
)
def test_each_rule_fires(mutate, rule):
    rep = verify_certificate(C5, mutate(star_in_c5()))
    assert not rep.valid
    assert rule in rep.rules()


def test_edge_reuse_detected():
    g = SimpleGraph.complete(4)
    # K_{1,2}: 0-1 direct, 0-2 routed through 0-1 again
    cert = biclique_certificate(g, [0], [1, 2], {(0, 1): (0, 1), (0, 2): (0, 1, 2)})
    rep = verify_certificate(g, cert)
    assert rep.rules() == {"edge-reuse"}


@given(st.randoms(use_true_random=False))
def test_verdict_ignores_path_order(rnd):
    for cert in (star_in_c5(), triangle_in_c5()):
        paths = list(cert.paths)
        rnd.shuffle(paths)
        assert verify_certificate(C5, replace(cert, paths=tuple(paths))).valid


def test_transpose_and_json_roundtrip():
    cert = star_in_c5()
    t = cert.transposed()
    assert t.pattern == Biclique(2, 1)
    assert verify_certificate(C5, t).valid
    assert t.transposed() == cert
    for fmt in ("edges", "graph6"):
        d = json.loads(json.dumps(cert.to_json(fmt)))
        assert ImmersionCertificate.from_json(d) == cert
    d = triangle_in_c5().to_json()
    assert d["pattern"] == {"kind": "complete_tripartite", "parts": [1, 1, 1]}
    assert ImmersionCertificate.from_json(d) == triangle_in_c5()
    assert pattern_from_json({"kind": "biclique", "left": 2, "right": 3}) == Biclique(2, 3)
    with pytest.raises(ValueError):
        pattern_from_json({"kind": "wheel"})


def test_certificate_json_layout():
    d = star_in_c5().to_json()
    assert d["host"] == {"n": 5, "edges": [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]}
    assert d["branch"] == {"left": [0], "right": [1, 4]}
    assert d["paths"] == [{"ends": [0, 1], "walk": [0, 1]}, {"ends": [0, 4], "walk": [0, 4]}]


def test_oracle_examples():
    w = exhaustive_immersion_search(C5, Biclique(1, 2))
    assert w is not None and verify_certificate(C5, w).valid
    two_edges = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    assert exhaustive_immersion_search(two_edges, Biclique(1, 2)) is None
    k4 = SimpleGraph.complete(4)
    w = exhaustive_immersion_search(k4, CompleteTripartite(1, 1, 2))
    assert w is not None and verify_certificate(k4, w).valid
    assert exhaustive_immersion_search(C5, CompleteTripartite(1, 1, 1)) is not None
    # C5 has no vertex of degree 3
    assert exhaustive_immersion_search(C5, Biclique(1, 3)) is None


def test_oracle_needs_long_paths():
    # 0 has degree 3; K_{2,2} has to use the long cycle 0-1-4-5-2-0
    g = SimpleGraph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (5, 2)])
    w = exhaustive_immersion_search(g, Biclique(1, 3))
    assert w is not None and verify_certificate(g, w).valid
    assert exhaustive_immersion_search(g, Biclique(2, 2)) is not None


def test_oracle_guard():
    with pytest.raises(SizeLimit):
        exhaustive_immersion_search(SimpleGraph.cycle(9), Biclique(1, 2))
    with pytest.raises(SizeLimit):
        exhaustive_immersion_search(C5, Biclique(1, 7))


def test_claim_recorder():
    rec = ClaimRecorder()
    rec.record("a", True)
    with pytest.raises(InternalAssertion):
        rec.record("b", False, "detail")
    other = ClaimRecorder()
    other.record("a", True)
    rec.merge(other)
    assert rec.evaluated == {"a": 2, "b": 1}
    assert rec.total_violations == 1


def _fake_decomposition(n: int, common: int) -> XYDecomposition:
    # two cliques X, Y with x = 0, y = 1 and `common` vertices seeing both
    x_side = [0] + list(range(2, 2 + (n - 2 - common) // 2))
    y_side = [1] + list(range(2 + len(x_side) - 1, n - common))
    c = list(range(n - common, n))
    edges = [(u, v) for s in (x_side, y_side) for u in s for v in s if u < v]
    edges += [(ci, v) for ci in c for v in (0, 1)]
    g = SimpleGraph.from_edges(n, edges)
    fs = frozenset
    return XYDecomposition(
        g=g, x=0, y=1, a=c[0] if c else -1, C=fs(c), X=fs(x_side), Y=fs(y_side),
        XC=fs(), XC_bar=fs(x_side), YC=fs(), YC_bar=fs(y_side),
        Xa=fs(), Xa_bar=fs(x_side), Ya=fs(), Ya_bar=fs(y_side),
    )


def test_inequality_harness_flags_small_n():
    ell = 3
    res = dict(assert_claim_inequalities(_fake_decomposition(4 * ell - 2, 1), ell, 4 * ell - 2))
    assert res["size_n_ge_4l-1"] is False


def test_inequality_harness_flags_too_many_common_neighbours():
    ell = 3
    res = dict(assert_claim_inequalities(_fake_decomposition(12, ell - 1), ell, 12))
    assert res["size_n_ge_4l-1"] is True
    assert res["common_le_l-2"] is False
    res = dict(assert_claim_inequalities(_fake_decomposition(12, ell - 2), ell, 12))
    assert res["common_le_l-2"] is True

