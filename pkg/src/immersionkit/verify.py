"""Independent checks: certificate verification, a brute-force immersion
search for tiny hosts, and literal evaluation of the size inequalities the
biclique construction relies on.

Nothing here imports the builders; the verifier only trusts the host graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import ceil
from typing import TYPE_CHECKING, Any

from .certificate import Biclique, ImmersionCertificate, Pattern
from .errors import InternalAssertion, SizeLimit
from .graph import SimpleGraph, norm

if TYPE_CHECKING:
    from .builder import XYDecomposition

ORACLE_MAX_VERTICES = 8
ORACLE_MAX_PATTERN_EDGES = 6


@dataclass
class VerificationReport:
    valid: bool
    failures: list[tuple[str, str]]
    stats: dict[str, int]

    def rules(self) -> set[str]:
        return {rule for rule, _ in self.failures}

    def to_json(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "failures": [{"rule": r, "detail": d} for r, d in self.failures],
            "stats": self.stats,
        }


def verify_certificate(g: SimpleGraph, cert: ImmersionCertificate) -> VerificationReport:
    """Check ``cert`` against host ``g``.

    Walks are matched to pattern edges by their end vertices, so the order
    of ``cert.paths`` does not matter.  Failures are collected, never raised.
    """
    failures: list[tuple[str, str]] = []
    pattern = cert.pattern
    branch = cert.branch

    def fail(rule: str, detail: str) -> None:
        failures.append((rule, detail))

    if len(branch) != pattern.order:
        fail("branch-size", f"{len(branch)} branch vertices for a pattern of order {pattern.order}")
        return VerificationReport(False, failures, {"paths": len(cert.paths), "max_path_length": 0, "host_edges_used": 0})
    for p, v in enumerate(branch):
        if not 0 <= v < g.n:
            fail("branch-range", f"pattern vertex {p} maps to {v}, outside [0, {g.n})")
    counts = Counter(branch)
    for v, c in sorted(counts.items()):
        if c > 1:
            fail("branch-injective", f"host vertex {v} is the image of {c} pattern vertices")

    required = Counter(norm(branch[p], branch[q]) for p, q in pattern.edges())
    if len(cert.paths) != len(required):
        fail("path-count", f"{len(cert.paths)} paths for {len(required)} pattern edges")

    used: dict[tuple[int, int], int] = {}
    covered: Counter[tuple[int, int]] = Counter()
    max_len = 0
    for idx, walk in enumerate(cert.paths):
        if len(walk) < 2:
            fail("walk-length", f"path {idx} has fewer than two vertices")
            continue
        covered[norm(walk[0], walk[-1])] += 1
        max_len = max(max_len, len(walk) - 1)
        if any(not 0 <= v < g.n for v in walk):
            fail("walk-range", f"path {idx} leaves [0, {g.n})")
            continue
        if len(set(walk)) != len(walk):
            fail("walk-simple", f"path {idx} repeats a vertex: {list(walk)}")
        for a, b in zip(walk, walk[1:]):
            if not g.has_edge(a, b):
                fail("walk-adjacency", f"path {idx} steps {a}-{b}, not a host edge")
                continue
            e = norm(a, b)
            if e in used and used[e] != idx:
                fail("edge-reuse", f"host edge {e} used by paths {used[e]} and {idx}")
            elif e in used:
                fail("walk-simple", f"path {idx} traverses {e} twice")
            else:
                used[e] = idx

    for pair in sorted(required):
        if covered[pair] < required[pair]:
            fail("missing-path", f"no path joins the branch vertices {pair}")
    for pair in sorted(covered):
        if covered[pair] > required[pair]:
            fail("extra-path", f"path ends {pair} do not correspond to an unserved pattern edge")

    stats = {"paths": len(cert.paths), "max_path_length": max_len, "host_edges_used": len(used)}
    return VerificationReport(not failures, failures, stats)


# -- exhaustive oracle ------------------------------------------------------


def _all_simple_paths(g: SimpleGraph, s: int, t: int, edge_id: dict) -> list[tuple[tuple[int, ...], int]]:
    out: list[tuple[tuple[int, ...], int]] = []
    stack = [(s, (s,), 0)]
    while stack:
        v, walk, emask = stack.pop()
        for w in g.neighbors(v):
            if w in walk:
                continue
            m = emask | (1 << edge_id[norm(v, w)])
            if w == t:
                out.append((walk + (w,), m))
            else:
                stack.append((w, walk + (w,), m))
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


def exhaustive_immersion_search(g: SimpleGraph, pattern: Pattern) -> ImmersionCertificate | None:
    """Backtracking search over injective branch maps and edge-disjoint
    simple paths; returns a witness or ``None`` once the space is exhausted.

    Guarded to hosts with at most 8 vertices and patterns with at most 6
    edges.
    """
    pedges = pattern.edges()
    if g.n > ORACLE_MAX_VERTICES or len(pedges) > ORACLE_MAX_PATTERN_EDGES:
        raise SizeLimit(
            f"oracle limited to n <= {ORACLE_MAX_VERTICES} and <= {ORACLE_MAX_PATTERN_EDGES} pattern edges"
        )
    order = pattern.order
    if order > g.n:
        return None
    edge_id = {e: i for i, e in enumerate(g.edges())}
    memo: dict[tuple[int, int], list] = {}

    def paths(s: int, t: int) -> list[tuple[tuple[int, ...], int]]:
        key = (s, t)
        if key not in memo:
            memo[key] = _all_simple_paths(g, s, t, edge_id)
        return memo[key]

    pdeg = Counter(v for e in pedges for v in e)
    # route each pattern edge as soon as its later endpoint is placed
    due: list[list[int]] = [[] for _ in range(order)]
    for idx, (p, q) in enumerate(pedges):
        due[max(p, q)].append(idx)
    branch = [-1] * order
    chosen: list[tuple[int, ...] | None] = [None] * len(pedges)

    def route(p: int, k: int, emask: int) -> bool:
        if k == len(due[p]):
            return place(p + 1, emask)
        idx = due[p][k]
        a, b = pedges[idx]
        for walk, m in paths(branch[a], branch[b]):
            if m & emask:
                continue
            chosen[idx] = walk
            if route(p, k + 1, emask | m):
                return True
        chosen[idx] = None
        return False

    def place(p: int, emask: int) -> bool:
        if p == order:
            return True
        taken = set(branch[:p])
        for v in range(g.n):
            if v in taken or g.degree(v) < pdeg[p]:
                continue
            branch[p] = v
            if route(p, 0, emask):
                return True
        branch[p] = -1
        return False

    if not place(0, 0):
        return None
    return ImmersionCertificate(g, pattern, tuple(branch), tuple(w for w in chosen if w is not None))


# -- inequality harness -----------------------------------------------------


@dataclass
class ClaimRecorder:
    """Tally of every inequality evaluated during a construction.

    ``record`` raises :class:`InternalAssertion` on a false claim (the
    construction is only correct if they all hold), after counting it.
    """

    evaluated: Counter = field(default_factory=Counter)
    violated: Counter = field(default_factory=Counter)

    def record(self, name: str, holds: bool, detail: str = "") -> None:
        self.evaluated[name] += 1
        if not holds:
            self.violated[name] += 1
            raise InternalAssertion(f"claim {name} failed{': ' + detail if detail else ''}")

    def record_all(self, results: list[tuple[str, bool]], detail: str = "") -> None:
        for name, holds in results:
            self.record(name, holds, detail)

    def merge(self, other: ClaimRecorder) -> None:
        self.evaluated.update(other.evaluated)
        self.violated.update(other.violated)

    @property
    def total_violations(self) -> int:
        return sum(self.violated.values())


def assert_claim_inequalities(dec: XYDecomposition, ell: int, n: int) -> list[tuple[str, bool]]:
    """Evaluate, literally, every size/structure fact the case analysis
    uses about an ``(x, y)`` decomposition.  Returns ``(name, holds)``.
    """
    g = dec.g
    half = ceil(n / 2)
    C, X, Y = dec.C, dec.X, dec.Y
    out: list[tuple[str, bool]] = []
    out.append(("size_n_ge_4l-1", n >= 4 * ell - 1))
    out.append(("common_le_l-2", len(C) <= ell - 2))
    out.append(("partition", not (C & X) and not (C & Y) and not (X & Y) and len(C | X | Y) == n))
    out.append(("x_in_X_y_in_Y", dec.x in X and dec.y in Y and not g.has_edge(dec.x, dec.y)))
    out.append(("X_clique", all(g.has_edge(u, v) for u in X for v in X if u < v)))
    out.append(("Y_clique", all(g.has_edge(u, v) for u in Y for v in Y if u < v)))
    nbr = {c: set(g.neighbors(c)) for c in C}
    out.append(("no_c_sees_all_X_or_Y", all(not X <= nbr[c] and not Y <= nbr[c] for c in C)))
    xc = frozenset.intersection(*(X & nbr[c] for c in C)) if C else X
    yc = frozenset.intersection(*(Y & nbr[c] for c in C)) if C else Y
    out.append(("XC_is_intersection", dec.XC == xc and dec.XC_bar == X - xc))
    out.append(("YC_is_intersection", dec.YC == yc and dec.YC_bar == Y - yc))
    out.append(("XC_le_Xa_le_l-2", len(dec.XC) <= len(dec.Xa) <= ell - 2))
    out.append(("YC_le_Ya_le_l-2", len(dec.YC) <= len(dec.Ya) <= ell - 2))
    out.append(("barXa_ge_half-Y+3", len(dec.Xa_bar) >= half - len(Y) + 3))
    out.append(("barYa_ge_half-X+3", len(dec.Ya_bar) >= half - len(X) + 3))
    out.append((
        "X_or_Y_minus_bar_big",
        len(X - dec.Xa_bar) >= 2 * (ell - len(dec.Ya_bar)) or len(Y - dec.Ya_bar) >= 2 * (ell - len(dec.Xa_bar)),
    ))
    out.append((
        "barXC_sees_many_barYC",
        all(len(set(g.neighbors(v)) & dec.YC_bar) > half - len(X) for v in dec.XC_bar),
    ))
    out.append((
        "barYC_sees_many_barXC",
        all(len(set(g.neighbors(w)) & dec.XC_bar) > half - len(Y) for w in dec.YC_bar),
    ))
    if len(dec.XC_bar) < ell:
        out.append((
            "small_barXC_big_XC",
            len(dec.XC) > half - ell - len(dec.Ya_bar) >= ell - len(dec.Ya_bar),
        ))
    if len(dec.YC_bar) < ell:
        out.append((
            "small_barYC_big_YC",
            len(dec.YC) > half - ell - len(dec.Xa_bar) >= ell - len(dec.Xa_bar),
        ))
    return out


def stars_inequality(x_star: int, y_star: int) -> tuple[str, bool]:
    return ("stars_X_le_Y", x_star <= y_star)


def detour_inequality(free: int, q_u: int, q_w: int) -> tuple[str, bool]:
    return ("detour_pool_gt_qu+qw", free > q_u + q_w)


def biclique_pattern(n: int, ell: int) -> Biclique:
    return Biclique(ell, ceil(n / 2) - ell)
