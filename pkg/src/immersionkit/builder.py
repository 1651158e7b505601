"""Constructive immersion of ``K_{l, ceil(n/2) - l}`` in hosts with
independence number at most 2.

The construction is recursive on ``n + l``.  Top-down, each call

1. answers complete hosts and ``n <= 4`` directly;
2. swaps to ``l' = ceil(n/2) - l`` when ``n <= 4l - 2`` and transposes;
3. passes to an edge-critical spanning subgraph;
4. if some non-adjacent ``x, y`` share ``>= l - 1`` neighbours, recurses on
   ``G - x - y`` and attaches ``x`` (or ``y``) to the small side;
5. otherwise splits ``V`` around a non-adjacent pair into common
   neighbours ``C`` and the two cliques ``X``, ``Y`` and builds the biclique
   from clique edges plus short routed paths (Case 1 through ``C``, Case 2
   through ``Y`` using disjoint representative matchings and local repair).

Every inequality the argument relies on is evaluated at its point of use by
a :class:`~immersionkit.verify.ClaimRecorder`; a false one raises
:class:`~immersionkit.errors.InternalAssertion`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import ceil

from .certificate import Biclique, ImmersionCertificate, biclique_certificate
from .errors import ensure, require
from .graph import (
    MultiGraph,
    SimpleGraph,
    alpha_at_most_2,
    bits,
    edge_critical_reduce,
    induced_delete,
    norm,
    reduce_after_deleting_pair,
)
from .matching import representative_partners
from .verify import ClaimRecorder, assert_claim_inequalities, detour_inequality, stars_inequality

Walk = tuple[int, ...]
Walks = dict[tuple[int, int], Walk]


@dataclass(frozen=True)
class XYDecomposition:
    """Vertex partition around a non-adjacent pivot pair ``x, y``.

    ``C`` common neighbours, ``X`` non-neighbours of ``y`` (holds ``x``),
    ``Y`` non-neighbours of ``x`` (holds ``y``).  ``XC`` are the members of
    ``X`` adjacent to all of ``C`` and ``Xa`` those adjacent to the fixed
    ``a in C``; the ``_bar`` sets are the complements inside ``X``.  Same
    for ``Y``.
    """

    g: SimpleGraph
    x: int
    y: int
    a: int
    C: frozenset[int]
    X: frozenset[int]
    Y: frozenset[int]
    XC: frozenset[int]
    XC_bar: frozenset[int]
    YC: frozenset[int]
    YC_bar: frozenset[int]
    Xa: frozenset[int]
    Xa_bar: frozenset[int]
    Ya: frozenset[int]
    Ya_bar: frozenset[int]

    def swapped(self) -> XYDecomposition:
        """The same decomposition with the roles of ``x`` and ``y`` exchanged."""
        return replace(
            self,
            x=self.y, y=self.x, X=self.Y, Y=self.X,
            XC=self.YC, XC_bar=self.YC_bar, YC=self.XC, YC_bar=self.XC_bar,
            Xa=self.Ya, Xa_bar=self.Ya_bar, Ya=self.Xa, Ya_bar=self.Xa_bar,
        )


@dataclass
class KvSystem:
    """Paths from one source ``v`` to every target in ``Y*``, keyed by target."""

    source: int
    paths: dict[int, Walk] = field(default_factory=dict)

    def edges(self) -> list[tuple[int, int]]:
        return [norm(a, b) for w in self.paths.values() for a, b in zip(w, w[1:])]


# -- small helpers ------------------------------------------------------------


def _sorted(s) -> list[int]:
    return sorted(s)


@dataclass
class _Partial:
    """A biclique under construction, in the labels of the top-level host.

    Walks are keyed by the ``norm`` of their two ends and may run in either
    direction, so transposing only swaps the parts.  Recursive levels add
    their few new walks in place instead of relabelling the whole system.
    """

    left: list[int]
    right: list[int]
    walks: dict[tuple[int, int], Walk]

    def transposed(self) -> _Partial:
        return _Partial(self.right, self.left, self.walks)

    def certificate(self, host: SimpleGraph) -> ImmersionCertificate:
        oriented: Walks = {}
        for w in self.walks.values():
            if w[0] in self._right_set:
                w = w[::-1]
            oriented[(w[0], w[-1])] = w
        return biclique_certificate(host, sorted(self.left), sorted(self.right), oriented)

    @property
    def _right_set(self) -> set[int]:
        return set(self.right)


def _partial_of(cert: ImmersionCertificate, labels: tuple[int, ...]) -> _Partial:
    pat = cert.pattern
    branch = [labels[v] for v in cert.branch]
    walks = {}
    for w in cert.paths:
        lw = tuple(labels[v] for v in w)
        walks[norm(lw[0], lw[-1])] = lw
    return _Partial(branch[: pat.left], branch[pat.left:], walks)


def assemble_certificate(
    parts: tuple[list[int], list[int]],
    direct_edges: list[tuple[int, int]],
    routed: Walks,
    host: SimpleGraph,
    *,
    inherited: Walks | None = None,
    fresh: frozenset[int] = frozenset(),
) -> ImmersionCertificate:
    """Merge direct host edges and routed walks into a biclique certificate.

    ``direct_edges`` and the keys of ``routed`` are ``(left, right)`` host
    pairs; routed walks run from the left vertex to the right one.  Checks
    one walk per pattern edge and edge-disjointness.

    ``inherited`` walks come from a certificate already checked in a
    subgraph avoiding ``fresh``; they are not re-walked, and instead every
    new edge must touch ``fresh``, which keeps the new walks off them.
    """
    left, right = parts
    walks: Walks = dict(inherited) if inherited else {}
    new: Walks = {}
    for l, r in direct_edges:
        new[(l, r)] = (l, r)
    for key, w in routed.items():
        ensure(key not in new, f"pair {key} both direct and routed")
        ensure(w[0] == key[0] and w[-1] == key[1], f"walk {w} does not join {key}")
        new[key] = w
    ensure(not (walks.keys() & new.keys()), "new walk duplicates an inherited pair")
    walks.update(new)
    lset, rset = set(left), set(right)
    ensure(len(lset | rset) == len(left) + len(right), "branch vertices not distinct")
    ensure(
        len(walks) == len(left) * len(right) and all(l in lset and r in rset for l, r in walks),
        "walks do not cover the biclique exactly",
    )
    used: set[tuple[int, int]] = set()
    for w in new.values():
        ensure(len(set(w)) == len(w), f"walk {w} is not a path")
        for a, b in zip(w, w[1:]):
            e = norm(a, b)
            ensure(host.has_edge(a, b), f"walk {w} uses non-edge {e}")
            ensure(e not in used, f"host edge {e} used twice")
            ensure(not inherited or a in fresh or b in fresh, f"new edge {e} avoids the fresh vertices")
            used.add(e)
    return biclique_certificate(host, sorted(left), sorted(right), walks)


def _direct(host: SimpleGraph, left: list[int], right: list[int]) -> ImmersionCertificate:
    return assemble_certificate((left, right), [(l, r) for l in left for r in right], {}, host)


# -- pivot search and decomposition ------------------------------------------


def find_rich_pair(g: SimpleGraph, ell: int) -> tuple[int, int] | None:
    """Lexicographically smallest non-adjacent pair with at least ``ell - 1``
    common neighbours, or ``None``."""
    need = ell - 1
    full = g.full_mask
    m = g.masks
    for u in range(g.n):
        non = full & ~(m[u] | (1 << u))
        for v in bits(non >> (u + 1) << (u + 1)):
            if (m[u] & m[v]).bit_count() >= need:
                return u, v
    return None


def smallest_non_adjacent_pair(g: SimpleGraph) -> tuple[int, int] | None:
    return find_rich_pair(g, 0)


def decompose(
    g: SimpleGraph,
    ell: int,
    x: int,
    y: int,
    claims: ClaimRecorder | None = None,
) -> XYDecomposition:
    """Partition around ``x, y`` and check every structural claim.

    ``g`` must be edge-critical, without non-adjacent pairs sharing
    ``ell - 1`` neighbours, and ``x, y`` must have a common neighbour.
    """
    claims = claims if claims is not None else ClaimRecorder()
    require(x != y and not g.has_edge(x, y), "pivot pair must be non-adjacent")
    full = g.full_mask
    cm = g.masks[x] & g.masks[y]
    require(cm != 0, "pivot pair has no common neighbour")
    xm = full & ~g.closed_mask(y)
    ym = full & ~g.closed_mask(x)
    a = (cm & -cm).bit_length() - 1
    all_c = xm | ym
    for c in bits(cm):
        all_c &= g.masks[c]
    am = g.masks[a]
    fs = lambda mask: frozenset(bits(mask))  # noqa: E731
    dec = XYDecomposition(
        g=g, x=x, y=y, a=a,
        C=fs(cm), X=fs(xm), Y=fs(ym),
        XC=fs(xm & all_c), XC_bar=fs(xm & ~all_c),
        YC=fs(ym & all_c), YC_bar=fs(ym & ~all_c),
        Xa=fs(xm & am), Xa_bar=fs(xm & ~am),
        Ya=fs(ym & am), Ya_bar=fs(ym & ~am),
    )
    claims.record_all(assert_claim_inequalities(dec, ell, g.n), f"pivot ({x}, {y}), l={ell}, n={g.n}")
    return dec


# -- Case 1 -------------------------------------------------------------------


def build_case1(dec: XYDecomposition, ell: int, n: int, claims: ClaimRecorder | None = None) -> ImmersionCertificate:
    """Both ``XC_bar`` and ``YC_bar`` smaller than ``ell``.

    Parts ``(Y* + Xa_bar, X* + Ya_bar)`` with ``X* <= XC`` and
    ``Y* <= YC``; all pairs are clique edges except ``X* x Y*``, which is
    routed ``y_j - c_{(i+j) mod |C|} - x_i`` through ``C``.
    """
    claims = claims if claims is not None else ClaimRecorder()
    half = ceil(n / 2)
    require(len(dec.XC_bar) < ell and len(dec.YC_bar) < ell, "Case 1 needs both bar sets small")
    nx_ = half - ell - len(dec.Ya_bar)
    ny_ = ell - len(dec.Xa_bar)
    ensure(0 <= nx_ <= len(dec.XC) and 0 <= ny_ <= len(dec.YC), "Case 1 star sets unavailable")
    x_star = _sorted(dec.XC)[:nx_]
    y_star = _sorted(dec.YC)[:ny_]
    cs = _sorted(dec.C)
    claims.record("case1_C_gt_half-l-barYa+3", len(cs) > half - ell - len(dec.Ya_bar) + 3)
    claims.record("case1_C_ge_half-l-barXa+3", len(cs) >= half - ell - len(dec.Xa_bar) + 3)
    claims.record("case1_C_covers_stars", len(cs) >= len(x_star) and len(cs) >= len(y_star))

    xa_bar = _sorted(dec.Xa_bar)
    ya_bar = _sorted(dec.Ya_bar)
    left = y_star + xa_bar
    right = x_star + ya_bar
    ensure(len(left) == ell and len(right) == half - ell, "Case 1 part sizes")
    direct = [(l, r) for l in xa_bar for r in ya_bar]
    direct += [(l, r) for l in xa_bar for r in x_star]
    direct += [(l, r) for l in y_star for r in ya_bar]
    routed: Walks = {}
    for i, xv in enumerate(x_star):
        for j, yv in enumerate(y_star):
            routed[(yv, xv)] = (yv, cs[(i + j) % len(cs)], xv)
    return assemble_certificate((left, right), direct, routed, dec.g)


# -- Case 2 -------------------------------------------------------------------


def build_kv_family(
    dec: XYDecomposition,
    x_star: list[int],
    y_star: list[int],
    claims: ClaimRecorder | None = None,
) -> tuple[list[KvSystem], MultiGraph]:
    """Per source ``v in X*`` a path system to all of ``Y*`` of length <= 2.

    Middles come from ``N(v) & YC_bar`` via disjoint representative
    matchings, so two systems only ever share edges inside ``Y*``, each at
    most twice.  Returns the systems and their union as a multigraph.
    """
    claims = claims if claims is not None else ClaimRecorder()
    g = dec.g
    ensure(len(x_star) <= len(y_star), "need |X*| <= |Y*|")
    ground = _sorted(dec.YC_bar)
    pos = {v: i for i, v in enumerate(ground)}
    k = len(y_star)
    sets = []
    for v in x_star:
        cand = [w for w in g.neighbors(v) if w in pos]
        claims.record("source_sees_many_barYC", len(cand) > k, f"source {v}")
        sets.append([pos[w] for w in cand[:k]])
    partners = representative_partners(len(ground), sets) if x_star else []

    ys = set(y_star)
    systems: list[KvSystem] = []
    for i, v in enumerate(x_star):
        sys_ = KvSystem(v)
        mid_of: dict[int, int] = {}
        for t, yt in enumerate(y_star):
            z = ground[partners[i][t]]
            sys_.paths[yt] = (v, yt) if z == yt else (v, z, yt)
            mid_of[yt] = z
        # a 2-cycle v-y_k-y_j / v-y_j-y_k shares edge y_j y_k: use both direct edges
        for yj in y_star:
            yk = mid_of[yj]
            if yk != yj and yk in ys and mid_of.get(yk) == yj and yj < yk:
                sys_.paths[yj] = (v, yj)
                sys_.paths[yk] = (v, yk)
        for yt, w in sys_.paths.items():
            claims.record("kv_path_len_le_2", len(w) <= 3)
            if len(w) == 3:
                claims.record("kv_middle_in_barYC", w[1] in dec.YC_bar)
        es = sys_.edges()
        ensure(len(es) == len(set(es)), f"system of {v} is not edge-disjoint")
        systems.append(sys_)

    h = MultiGraph(g.n)
    for s in systems:
        for a, b in s.edges():
            h.add(a, b)
    claims.record("H_multiplicity_le_2", h.max_multiplicity() <= 2)
    for u, w in h.pairs_with_multiplicity(2):
        claims.record("H_double_inside_Ystar", u in ys and w in ys)
        ends = sorted(
            p[-1] for s in systems for p in s.paths.values()
            if any(norm(a, b) == (u, w) for a, b in zip(p, p[1:]))
        )
        claims.record("H_double_opposite_ends", ends == [u, w])
    return systems, h


def resolve_case21(
    dec: XYDecomposition,
    systems: list[KvSystem],
    h: MultiGraph,
    claims: ClaimRecorder | None = None,
) -> Walks:
    """Remove doubled edges inside ``Y*`` by detours through ``Y - Y*``.

    For a doubled ``uw`` the first system holding it uses ``v u w``; that
    path becomes ``v u z w`` for the smallest ``z in Y - Y*`` not yet
    joined to ``u`` or ``w`` in ``h``.  Each step removes one doubled pair.
    """
    claims = claims if claims is not None else ClaimRecorder()
    y_star = {y for s in systems for y in s.paths} if systems else set()
    pool = _sorted(dec.Y - y_star)
    n_sources = len(systems)
    for _ in range(h.edge_count() + 1):
        doubles = h.pairs_with_multiplicity(2)
        if not doubles:
            break
        e = doubles[0]
        owner, target = None, None
        for s in systems:
            for tgt, p in s.paths.items():
                if len(p) == 3 and norm(p[1], p[2]) == e:
                    owner, target = s, tgt
                    break
            if owner is not None:
                break
        ensure(owner is not None, f"doubled pair {e} not found in any system")
        v, u, w = owner.paths[target]
        q_u = len(h.neighbors(u) & set(pool))
        q_w = len(h.neighbors(w) & set(pool))
        for t in (u, w):
            p_t = sum(h.multiplicity(t, o) - 1 for o in h.neighbors(t) if o in y_star)
            q_t = len(h.neighbors(t) & set(pool))
            claims.record("case21_load_le_Xstar", p_t + q_t <= n_sources, f"vertex {t}")
        claims.record(*detour_inequality(len(pool), q_u, q_w))
        blocked = h.neighbors(u) | h.neighbors(w)
        z = next((c for c in pool if c not in blocked), None)
        ensure(z is not None, f"no detour vertex for doubled pair {e}")
        owner.paths[target] = (v, u, z, w)
        h.remove(u, w)
        h.add(u, z)
        h.add(z, w)
    ensure(h.is_simple(), "Case 2.1 rerouting did not terminate with a simple H")
    return {(s.source, tgt): p for s in systems for tgt, p in s.paths.items()}


def _linearize_inside(sys_: KvSystem, y_star: set[int]) -> None:
    """Rewrite one system so its edges inside ``Y*`` form a matching."""
    v = sys_.source
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for tgt, p in sys_.paths.items():
        if len(p) == 3 and p[1] in y_star:
            ensure(p[1] not in succ and tgt not in pred, "inside-Y* degree exceeds 2")
            succ[p[1]] = tgt
            pred[tgt] = p[1]
    seen: set[int] = set()
    for start in sorted(set(succ) | set(pred)):
        if start in seen:
            continue
        # walk back to the head of a path component, or detect a cycle
        head = start
        while head in pred and pred[head] != start:
            head = pred[head]
        comp = [head]
        while comp[-1] in succ and succ[comp[-1]] != head:
            comp.append(succ[comp[-1]])
        seen.update(comp)
        if comp[-1] in succ:  # cycle t_1 .. t_s t_1
            for t in comp:
                nxt = succ[t]
                sys_.paths[nxt] = (v, nxt)
        elif len(comp) >= 3:  # path t_1 .. t_s
            for j in range(1, len(comp) - 1):
                sys_.paths[comp[j]] = (v, comp[j])
            sys_.paths[comp[-1]] = (v, comp[0], comp[-1])


def resolve_case22(
    dec: XYDecomposition,
    systems: list[KvSystem],
    ell: int,
    claims: ClaimRecorder | None = None,
) -> Walks:
    """``YC_bar`` small: straighten each system inside ``Y*`` to a matching,
    then lift every remaining inside edge ``u w`` to ``u f(v) w`` with an
    injective ``f: X* -> YC``."""
    claims = claims if claims is not None else ClaimRecorder()
    y_star = {y for s in systems for y in s.paths}
    for s in systems:
        deg: dict[int, int] = {}
        for p in s.paths.values():
            if len(p) == 3 and p[1] in y_star:
                deg[p[1]] = deg.get(p[1], 0) + 1
                deg[p[2]] = deg.get(p[2], 0) + 1
        claims.record("case22_Q_degree_le_2", max(deg.values(), default=0) <= 2)
        _linearize_inside(s, y_star)
        inside = [p[1:] for p in s.paths.values() if len(p) == 3 and p[1] in y_star]
        touched = [t for pair in inside for t in pair]
        ensure(len(touched) == len(set(touched)), f"system of {s.source} not a matching inside Y*")
    yc = _sorted(dec.YC)
    claims.record("case22_YC_gt_Xstar", len(yc) > len(systems))
    claims.record("case22_YC_gt_half-l-barXa", len(yc) > ceil(dec.g.n / 2) - ell - len(dec.Xa_bar))
    for s, f in zip(systems, yc):
        for tgt, p in list(s.paths.items()):
            if len(p) == 3 and p[1] in y_star:
                s.paths[tgt] = (p[0], p[1], f, p[2])
    return {(s.source, tgt): p for s in systems for tgt, p in s.paths.items()}


def build_case2(dec: XYDecomposition, ell: int, claims: ClaimRecorder | None = None) -> ImmersionCertificate:
    """``XC_bar`` has at least ``ell`` vertices.

    Parts ``(X* + Xa_bar, (Xa - X*) + Y*)`` with ``X* <= XC_bar - Xa_bar``
    and ``Y* <= Ya_bar``; ``X* x Y*`` is routed through ``Y`` and repaired
    by :func:`resolve_case21` or :func:`resolve_case22`.
    """
    claims = claims if claims is not None else ClaimRecorder()
    g = dec.g
    n = g.n
    half = ceil(n / 2)
    xa_bar = _sorted(dec.Xa_bar)
    if len(xa_bar) >= ell:
        # Xa_bar alone fills the l-side; the other side comes from the clique
        # X and from Ya_bar, which Xa_bar sees completely
        left = xa_bar[:ell]
        pool = _sorted((dec.X - set(left)) | dec.Ya_bar)
        ensure(len(pool) >= half - ell, "Case 2 shortcut: not enough clique vertices")
        return _direct(g, left, pool[: half - ell])
    n_x = ell - len(xa_bar)
    n_y = half - len(dec.X)
    cand_x = _sorted(dec.XC_bar - dec.Xa_bar)
    cand_y = _sorted(dec.Ya_bar)
    ensure(len(cand_x) >= n_x and 0 <= n_y <= len(cand_y), "Case 2 star sets unavailable")
    x_star = cand_x[:n_x]
    y_star = cand_y[:n_y]
    claims.record(*stars_inequality(len(x_star), len(y_star)))
    rest = _sorted(dec.Xa - set(x_star))
    left = x_star + xa_bar
    right = rest + y_star
    claims.record("case2_part_sizes", len(left) == ell and len(right) == half - ell)
    direct = [(l, r) for l in xa_bar for r in y_star]
    direct += [(l, r) for l in xa_bar for r in rest]
    direct += [(l, r) for l in x_star for r in rest]
    systems, h = build_kv_family(dec, x_star, y_star, claims)
    if len(dec.YC_bar) >= ell:
        routed = resolve_case21(dec, systems, h, claims)
    else:
        routed = resolve_case22(dec, systems, ell, claims)
    return assemble_certificate((left, right), direct, routed, g)


def construct_from_decomposition(dec: XYDecomposition, ell: int, claims: ClaimRecorder) -> ImmersionCertificate:
    """Pick the case and orientation, then build."""
    n = dec.g.n
    if len(dec.XC_bar) < ell and len(dec.YC_bar) < ell:
        return build_case1(dec, ell, n, claims)
    if len(dec.XC_bar) < ell:
        dec = dec.swapped()
    if len(dec.YC_bar) >= ell:
        if len(dec.Y - dec.Ya_bar) < 2 * (ell - len(dec.Xa_bar)):
            dec = dec.swapped()
            claims.record(
                "case21_orientation",
                len(dec.Y - dec.Ya_bar) >= 2 * (ell - len(dec.Xa_bar)),
            )
    return build_case2(dec, ell, claims)


# -- recursion ------------------------------------------------------------------


def extend_after_recursion(
    g: SimpleGraph,
    x: int,
    y: int,
    ell: int,
    claims: ClaimRecorder | None = None,
    *,
    critical: bool = False,
) -> ImmersionCertificate:
    """Build ``K_{l, ceil((n-2)/2) - l}`` in ``g - x - y`` (or take ``l``
    arbitrary vertices when ``l = ceil(n/2) - 1``) and attach ``x`` or ``y``
    to the small side.

    If neither dominates the ``l``-side ``L``, ``x`` reaches each
    ``y``-only neighbour in ``L`` by ``x o y l`` through a private common
    neighbour ``o`` outside ``L``.

    ``critical=True`` promises that ``g`` is edge-critical, which lets the
    recursive call reduce ``g - x - y`` incrementally.
    """
    claims = claims if claims is not None else ClaimRecorder()
    labels = tuple(range(g.n))
    return _extend(g, x, y, ell, claims, labels, critical).certificate(g)


def _extend(
    g: SimpleGraph,
    x: int,
    y: int,
    ell: int,
    claims: ClaimRecorder,
    labels: tuple[int, ...],
    critical: bool,
) -> _Partial:
    require(not g.has_edge(x, y) and x != y, "x, y must be non-adjacent")
    n = g.n
    half = ceil(n / 2)
    common = g.masks[x] & g.masks[y]
    require(common.bit_count() >= ell - 1, "x, y need at least l - 1 common neighbours")
    if critical:
        sub, reduced, old_of = reduce_after_deleting_pair(g, x, y)
    else:
        (sub, old_of), reduced = induced_delete(g, (x, y)), None
    if ell <= half - 2:
        part = _build(sub, ell, claims, n + ell, reduced, tuple(labels[v] for v in old_of))
    else:
        part = _Partial([labels[old_of[v]] for v in range(ell)], [], {})
    ensure(len(part.left) == ell and len(part.right) == half - 1 - ell, "recursive biclique has the wrong shape")

    here = {t: v for v, t in enumerate(labels)}
    left = [here[t] for t in part.left]
    lm = 0
    for v in left:
        lm |= 1 << v
    nx_, ny_ = g.masks[x], g.masks[y]
    if lm & ~nx_ == 0:
        return _attach(part, g, labels, left, x, y, [(l, x) for l in left])
    if lm & ~ny_ == 0:
        return _attach(part, g, labels, left, y, x, [(l, y) for l in left])
    l_y = _sorted(bits(lm & ny_ & ~nx_))
    l_xc = _sorted(bits(lm & nx_))
    o_c = _sorted(bits(common & ~lm))
    claims.record("extension_Oc_ge_Ly", len(o_c) >= len(l_y), f"|O_c|={len(o_c)}, |L_y|={len(l_y)}")
    ensure(len(l_y) + len(l_xc) == ell, "a vertex of L misses both x and y")
    new = [(l, x) for l in l_xc] + [(lv, y, o, x) for o, lv in zip(o_c, l_y)]
    return _attach(part, g, labels, left, x, y, new)


def _attach(
    part: _Partial,
    g: SimpleGraph,
    labels: tuple[int, ...],
    left: list[int],
    joined: int,
    other: int,
    new: list[Walk],
) -> _Partial:
    """Add ``joined`` to the right part with one new walk per left vertex.

    The inherited walks live in ``g - x - y``; every new edge touches
    ``x`` or ``y``, which keeps the new walks off them.
    """
    fresh = (joined, other)
    ensure(sorted(w[0] for w in new) == sorted(left), "new walks do not start once at each left vertex")
    used: set[tuple[int, int]] = set()
    for w in new:
        ensure(w[-1] == joined, f"walk {w} does not end at {joined}")
        ensure(len(set(w)) == len(w), f"walk {w} is not a path")
        for a, b in zip(w, w[1:]):
            e = norm(a, b)
            ensure(g.has_edge(a, b), f"walk {w} uses non-edge {e}")
            ensure(e not in used, f"host edge {e} used twice")
            ensure(a in fresh or b in fresh, f"new edge {e} avoids the fresh vertices")
            used.add(e)
    top = labels[joined]
    ensure(top not in part.left and top not in part.right, "attached vertex already a branch vertex")
    part.right.append(top)
    for w in new:
        lw = tuple(labels[v] for v in w)
        part.walks[norm(lw[0], lw[-1])] = lw
    ensure(len(part.walks) == len(part.left) * len(part.right), "walks do not cover the biclique exactly")
    return part


def _build(
    g: SimpleGraph,
    ell: int,
    claims: ClaimRecorder,
    parent_measure: int | None,
    reduced: SimpleGraph | None,
    labels: tuple[int, ...],
) -> _Partial:
    n = g.n
    half = ceil(n / 2)
    ensure(1 <= ell <= half - 1, f"l={ell} out of range for n={n}")
    if parent_measure is not None:
        claims.record("recursion_measure_decreases", n + ell < parent_measure)
    if g.is_complete():
        return _partial_of(_direct(g, list(range(ell)), list(range(ell, half))), labels)
    if n <= 4:
        u, v = g.edges()[0]
        return _partial_of(_direct(g, [u], [v]), labels)
    if n <= 4 * ell - 2:
        return _build(g, half - ell, claims, n + ell, reduced, labels).transposed()
    claims.record("size_n_ge_4l-1", n >= 4 * ell - 1)

    r = reduced if reduced is not None else edge_critical_reduce(g, check=False)
    pair = find_rich_pair(r, ell)
    if pair is not None:
        return _extend(r, pair[0], pair[1], ell, claims, labels, critical=True)

    x, y = smallest_non_adjacent_pair(r)
    if not (r.masks[x] & r.masks[y]):
        # no common neighbour: V splits into the cliques X and Y, and the
        # larger one has at least ceil(n/2) vertices
        xs = _sorted(bits(r.full_mask & ~r.closed_mask(y)))
        ys = _sorted(bits(r.full_mask & ~r.closed_mask(x)))
        ensure(len(xs) + len(ys) == n, "empty C but X, Y do not cover V")
        big = xs if len(xs) >= len(ys) else ys
        ensure(all(r.has_edge(a, b) for a in big for b in big if a < b), "fallback side is not a clique")
        return _partial_of(_direct(g, big[:ell], big[ell:half]), labels)
    dec = decompose(r, ell, x, y, claims)
    return _partial_of(construct_from_decomposition(dec, ell, claims), labels)


def build_biclique_immersion(
    g: SimpleGraph,
    ell: int,
    claims: ClaimRecorder | None = None,
) -> ImmersionCertificate:
    """Certificate for an immersion of ``K_{ell, ceil(n/2) - ell}`` in ``g``.

    Requires ``alpha(g) <= 2`` and ``1 <= ell <= ceil(n/2) - 1``.  The left
    part of the returned pattern always has size ``ell``.
    """
    require(alpha_at_most_2(g), "host must have independence number at most 2")
    require(1 <= ell <= ceil(g.n / 2) - 1, f"need 1 <= l <= ceil(n/2) - 1, got l={ell}, n={g.n}")
    claims = claims if claims is not None else ClaimRecorder()
    cert = _build(g, ell, claims, None, None, tuple(range(g.n))).certificate(g)
    ensure(cert.pattern == Biclique(ell, ceil(g.n / 2) - ell), "pattern shape mismatch")
    return cert
