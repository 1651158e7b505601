"""Bipartite edge colouring and the matching constructions built on it.

* :func:`bipartite_edge_coloring` -- König's line colouring, done
  constructively by inserting edges and flipping two-coloured alternating
  paths.
* :func:`disjoint_representative_matchings` -- pairwise edge-disjoint
  perfect matchings from a fixed ``k``-set ``A`` onto each of ``j <= k``
  target ``k``-sets.
* :func:`hall_disjoint_AB_matchings` -- edge-disjoint ``(A_i, B_i)``
  perfect matchings inside ``K_{2k}``, found one after another.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ensure, require
from .graph import Edge, MultiGraph, norm

EdgeInstance = tuple[int, int, int]


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint unordered pairs (stored as ``(min, max)``)."""

    pairs: frozenset[Edge]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v in self.pairs:
            require(u < v, f"pair {(u, v)} is not normalised")
            require(u not in seen and v not in seen, f"vertex reused in matching at {(u, v)}")
            seen.update((u, v))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> Matching:
        return cls(frozenset(norm(u, v) for u, v in pairs))

    def partner(self, v: int) -> int | None:
        for a, b in self.pairs:
            if a == v:
                return b
            if b == v:
                return a
        return None

    def vertices(self) -> set[int]:
        return {v for e in self.pairs for v in e}

    def sorted_pairs(self) -> list[Edge]:
        return sorted(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())


@dataclass
class EdgeColoring:
    """Colour (``1..k``) of every parallel edge instance ``(u, v, copy)``."""

    k: int
    assignment: dict[EdgeInstance, int]

    def color_class(self, c: int) -> list[EdgeInstance]:
        return sorted(e for e, col in self.assignment.items() if col == c)

    def is_proper(self, h: MultiGraph) -> bool:
        if set(self.assignment) != set(h.edge_instances()):
            return False
        seen: set[tuple[int, int]] = set()
        for (u, v, _), c in self.assignment.items():
            if not 1 <= c <= self.k:
                return False
            for end in (u, v):
                if (end, c) in seen:
                    return False
                seen.add((end, c))
        return True


class _Colorer:
    """Incremental proper edge colouring of a bipartite multigraph."""

    def __init__(self, n: int, k: int) -> None:
        self.k = k
        # at[v][c] = (edge instance, other end) for the edge of colour c at v
        self.at: list[dict[int, tuple[EdgeInstance, int]]] = [{} for _ in range(n)]
        self.color: dict[EdgeInstance, int] = {}

    def _free(self, v: int) -> int:
        used = self.at[v]
        for c in range(1, self.k + 1):
            if c not in used:
                return c
        raise AssertionError("unreachable: degree bound checked up front")

    def _set(self, e: EdgeInstance, u: int, w: int, c: int) -> None:
        self.color[e] = c
        self.at[u][c] = (e, w)
        self.at[w][c] = (e, u)

    def _check_local(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            for c, (e, other) in self.at[v].items():
                ensure(self.color[e] == c, f"colour table out of sync at vertex {v}")
                ensure(self.at[other].get(c, (None,))[0] == e, f"colour {c} clash near {v}")

    def insert(self, e: EdgeInstance) -> None:
        u, w, _ = e
        alpha = self._free(u)
        if alpha not in self.at[w]:
            self._set(e, u, w, alpha)
            return
        beta = self._free(w)
        # alternating alpha/beta path leaving w on its alpha edge; in a
        # bipartite graph it can never come back to u
        path: list[tuple[EdgeInstance, int, int]] = []
        cur, c = w, alpha
        while c in self.at[cur]:
            edge, nxt = self.at[cur][c]
            path.append((edge, cur, nxt))
            cur, c = nxt, (beta if c == alpha else alpha)
        touched = {w}
        for edge, a, b in path:
            old = self.color[edge]
            if self.at[a].get(old, (None,))[0] == edge:
                del self.at[a][old]
            if self.at[b].get(old, (None,))[0] == edge:
                del self.at[b][old]
            touched.update((a, b))
        for edge, a, b in path:
            self._set(edge, a, b, beta if self.color[edge] == alpha else alpha)
        ensure(u not in touched, "alternating path reached the inserting vertex")
        self._check_local(touched)
        ensure(alpha not in self.at[w] and alpha not in self.at[u], "flip did not free colour")
        self._set(e, u, w, alpha)


def bipartite_edge_coloring(h: MultiGraph, k: int, left: Iterable[int]) -> EdgeColoring:
    """Properly colour the edges of a bipartite multigraph with ``k`` colours.

    ``left`` is one side of the bipartition; every edge must have exactly one
    end in it.  Requires ``max_degree(h) <= k``.
    """
    side = set(left)
    instances = h.edge_instances()
    for u, v, _ in instances:
        require((u in side) != (v in side), f"edge {u}-{v} does not cross the bipartition")
    require(h.max_degree() <= k, f"max degree {h.max_degree()} exceeds {k} colours")
    col = _Colorer(h.n, k)
    for e in instances:
        col.insert(e)
    return EdgeColoring(k, dict(col.color))


def representative_partners(ground_n: int, sets: Sequence[Iterable[int]]) -> list[list[int]]:
    """Core of :func:`disjoint_representative_matchings`.

    Returns ``partners`` with ``partners[i][t]`` the element of ``C_i``
    matched to the ``t``-th member of ``A``.
    """
    raw = [list(c) for c in sets]
    require(all(len(set(c)) == len(c) for c in raw), "sets must not repeat elements")
    cs = [sorted(c) for c in raw]
    j = len(cs)
    if j == 0:
        return []
    k = len(cs[0])
    require(k >= 1, "sets must be non-empty")
    require(all(len(c) == k for c in cs), "all sets must have the same size k")
    require(j <= k, f"need j <= k, got j={j}, k={k}")
    require(all(0 <= x < ground_n for c in cs for x in c), "set element outside [ground_n]")

    # H: left vertices ground_n + i (one per set), right vertices = ground set
    h = MultiGraph(ground_n + j)
    for i, c in enumerate(cs):
        for x in c:
            h.add(ground_n + i, x)
    coloring = bipartite_edge_coloring(h, k, range(ground_n, ground_n + j))

    partners = [[-1] * k for _ in range(j)]
    for (a, b, _), c in coloring.assignment.items():
        i = b - ground_n  # a < b, so b is the set vertex
        partners[i][c - 1] = a
    for i in range(j):
        ensure(sorted(partners[i]) == cs[i], f"matching {i} does not cover its set")
    return partners


def disjoint_representative_matchings(ground_n: int, sets: Sequence[Iterable[int]]) -> list[Matching]:
    """Pairwise edge-disjoint perfect matchings between ``A`` and each set.

    ``A = {a_0, .., a_{k-1}}`` is represented by the vertex labels
    ``ground_n + t``.  Colour ``t + 1`` of the auxiliary colouring decides
    the partner of ``a_t``.
    """
    partners = representative_partners(ground_n, sets)
    out = [Matching.of((ground_n + t, w) for t, w in enumerate(row)) for row in partners]
    used: set[Edge] = set()
    for m in out:
        ensure(not (m.pairs & used), "matchings share a pair")
        used |= m.pairs
    return out


def max_bipartite_matching(
    left: Iterable[int],
    right: Iterable[int],
    allowed: Callable[[int, int], bool],
) -> Matching:
    """Maximum-cardinality matching between ``left`` and ``right`` (Kuhn's
    augmenting-path search, deterministic in vertex order)."""
    ls = sorted(set(left))
    rs = sorted(set(right))
    require(not set(ls) & set(rs), "left and right must be disjoint")
    adj = {u: [w for w in rs if allowed(u, w)] for u in ls}
    match_r: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_r or augment(match_r[w], seen):
                match_r[w] = u
                return True
        return False

    for u in ls:
        augment(u, set())
    return Matching.of((u, w) for w, u in match_r.items())


@dataclass(frozen=True)
class ABPairs:
    """Pairs ``(A_i, B_i)`` of disjoint vertex sets of ``K_{2k}``.

    Validated on construction: ``A_i`` and ``B_i`` disjoint, equal size at
    most ``k``, and ``|A_i| >= 2(i-1)`` for 1-based ``i``.  The lower bound
    and ``|A_i| <= k`` leave room for at most ``k // 2 + 1`` pairs.
    """

    k: int
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self) -> None:
        require(self.k >= 1, "k must be positive")
        require(len(self.pairs) <= self.k, "at most k pairs")
        for idx, (a, b) in enumerate(self.pairs):
            i = idx + 1
            require(all(0 <= v < 2 * self.k for v in a | b), f"pair {i}: vertex outside [0, 2k)")
            require(not a & b, f"pair {i}: A and B intersect")
            require(len(a) == len(b), f"pair {i}: |A| != |B|")
            require(len(a) <= self.k, f"pair {i}: |A| > k")
            require(len(a) >= 2 * (i - 1), f"pair {i}: |A| < 2(i-1)")

    @classmethod
    def of(cls, k: int, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> ABPairs:
        return cls(k, tuple((frozenset(a), frozenset(b)) for a, b in pairs))

    @classmethod
    def from_json(cls, d: dict) -> ABPairs:
        return cls.of(int(d["k"]), ((p["A"], p["B"]) for p in d["pairs"]))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "pairs": [{"A": sorted(a), "B": sorted(b)} for a, b in self.pairs],
        }


def hall_disjoint_AB_matchings(inp: ABPairs) -> list[Matching]:
    """Edge-disjoint matchings ``M_i`` of ``K_{2k}``, each perfect between
    ``A_i`` and ``B_i``.

    Greedy in pair order: each ``M_i`` is a maximum matching over the edges
    not used by ``M_1..M_{i-1}``.  Hall's condition is guaranteed by the
    size bounds, so a deficient matching raises ``InternalAssertion``.
    """
    used: set[Edge] = set()
    used_deg = [0] * (2 * inp.k)
    out: list[Matching] = []
    for idx, (a, b) in enumerate(inp.pairs):
        for u in a | b:
            ensure(used_deg[u] <= idx, f"used degree of {u} is {used_deg[u]} > {idx} at step {idx + 1}")
        m = max_bipartite_matching(a, b, lambda u, w: norm(u, w) not in used)
        ensure(len(m) == len(a), f"pair {idx + 1}: only {len(m)} of {len(a)} matched")
        for u, w in m.pairs:
            used.add((u, w))
            used_deg[u] += 1
            used_deg[w] += 1
        out.append(m)
    return out


def matchings_to_json(ms: Sequence[Matching]) -> list[list[list[int]]]:
    return [[list(p) for p in m.sorted_pairs()] for m in ms]
