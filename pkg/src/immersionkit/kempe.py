"""Exact colouring of small hosts and the Kempe-chain immersion of
``K_{1,1,chi-2}``.

Colours are ``1..k``.  With ``s = k - 2`` the construction works with the
top colour ``k`` (class of the apex ``v``) and the pivot colour ``k - 1``
(colour of the second apex ``w``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any

from .certificate import CompleteTripartite, ImmersionCertificate
from .errors import SizeLimit, ensure, require
from .graph import SimpleGraph, bits

EXACT_MAX_VERTICES = 32


@dataclass(frozen=True)
class ProperColoring:
    k: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        require(all(1 <= c <= self.k for c in self.colors), "colours must lie in 1..k")

    def is_proper(self, g: SimpleGraph) -> bool:
        return len(self.colors) == g.n and all(self.colors[u] != self.colors[v] for u, v in g.edges())

    def color_class(self, c: int) -> list[int]:
        return [v for v, col in enumerate(self.colors) if col == c]

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> ProperColoring:
        return cls(int(d["k"]), tuple(int(c) for c in d["colors"]))


# -- exact chromatic number -----------------------------------------------------


def _dsatur_greedy(g: SimpleGraph) -> list[int]:
    n = g.n
    col = [0] * n
    sat = [0] * n  # bitmask of colours seen among neighbours
    for _ in range(n):
        v = max(
            (u for u in range(n) if not col[u]),
            key=lambda u: (sat[u].bit_count(), g.degree(u), -u),
        )
        c = 1
        while (sat[v] >> c) & 1:
            c += 1
        col[v] = c
        for w in g.neighbors(v):
            sat[w] |= 1 << c
    return col


def _greedy_clique(g: SimpleGraph) -> list[int]:
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = g.masks[start]
        while cand:
            v = max(bits(cand), key=lambda u: ((g.masks[u] & cand).bit_count(), -u))
            clique.append(v)
            cand &= g.masks[v]
        if len(clique) > len(best):
            best = clique
    return best


def chromatic_number_exact(g: SimpleGraph) -> tuple[int, ProperColoring]:
    """Exact ``chi(g)`` with a witness colouring.

    DSATUR branch and bound: a greedy DSATUR colouring gives the upper
    bound, a greedy clique (coloured first) the lower bound.  Hosts are
    limited to 32 vertices.
    """
    n = g.n
    if n > EXACT_MAX_VERTICES:
        raise SizeLimit(f"exact colouring limited to n <= {EXACT_MAX_VERTICES}, got {n}")
    if n == 0:
        return 0, ProperColoring(0, ())
    best = _dsatur_greedy(g)
    ub = max(best)
    clique = _greedy_clique(g)
    lb = len(clique)
    if lb < ub:
        col = [0] * n
        sat = [0] * n
        for i, v in enumerate(clique):
            col[v] = i + 1
            for w in g.neighbors(v):
                sat[w] |= 1 << (i + 1)

        def search(colored: int, used: int) -> None:
            nonlocal best, ub
            if colored == n:
                best, ub = list(col), used
                return
            v = max(
                (u for u in range(n) if not col[u]),
                key=lambda u: (sat[u].bit_count(), g.degree(u), -u),
            )
            for c in range(1, min(used + 1, ub - 1) + 1):
                if (sat[v] >> c) & 1:
                    continue
                col[v] = c
                saved = [(w, sat[w]) for w in g.neighbors(v)]
                for w in g.neighbors(v):
                    sat[w] |= 1 << c
                search(colored + 1, max(used, c))
                for w, m in saved:
                    sat[w] = m
                col[v] = 0
                if ub == lb:
                    return

        search(lb, lb)
    coloring = ProperColoring(ub, tuple(best))
    ensure(coloring.is_proper(g), "branch and bound produced an improper colouring")
    return ub, coloring


# -- Kempe chains -----------------------------------------------------------------


def kempe_component(g: SimpleGraph, coloring: ProperColoring | list[int], w: int, i: int) -> set[int]:
    """Component containing ``w`` of the subgraph induced by colours ``i``
    and ``colour(w)``."""
    colors = coloring.colors if isinstance(coloring, ProperColoring) else coloring
    pair = {i, colors[w]}
    seen = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for x in g.neighbors(u):
            if x not in seen and colors[x] in pair:
                seen.add(x)
                queue.append(x)
    return seen


def _bfs_path(g: SimpleGraph, inside: set[int], s: int, t: int) -> tuple[int, ...]:
    prev = {s: s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for x in g.neighbors(u):
            if x in inside and x not in prev:
                prev[x] = u
                queue.append(x)
    ensure(t in prev, f"{t} not reachable from {s} inside its Kempe chain")
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


@dataclass(frozen=True)
class KempeRun:
    certificate: ImmersionCertificate
    coloring: ProperColoring
    iterations: int
    v: int
    w: int


def _normalise(coloring: ProperColoring) -> list[int]:
    # smallest class (lowest colour on ties) becomes the top colour k
    k = coloring.k
    sizes = {c: 0 for c in range(1, k + 1)}
    for c in coloring.colors:
        sizes[c] += 1
    small = min(range(1, k + 1), key=lambda c: (sizes[c], c))
    swap = {small: k, k: small}
    return [swap.get(c, c) for c in coloring.colors]


def run_kempe(g: SimpleGraph, coloring: ProperColoring | None = None) -> KempeRun:
    """Build the ``K_{1,1,chi-2}`` immersion and report the loop count.

    ``coloring`` must be an optimal colouring if given; otherwise one is
    computed exactly.  Two repairs run until neither applies: the apex
    ``v`` moves to a colour it does not see (shrinking the top class), and
    a Kempe chain ``K_{wi}`` without a ``v``-neighbour of colour ``i`` is
    swapped (reducing ``v``'s pivot-coloured neighbours).
    """
    if coloring is None:
        _, coloring = chromatic_number_exact(g)
    require(coloring.is_proper(g), "colouring is not proper")
    k = coloring.k
    require(k >= 3, f"need chromatic number at least 3, got {k}")
    n = g.n
    top, pivot = k, k - 1
    s = k - 2
    col = _normalise(coloring)
    require(all(col.count(c) for c in range(1, k + 1)), "colouring must use all k colours")

    iterations = 0
    while True:
        iterations += 1
        ensure(iterations <= n * n, f"Kempe repair exceeded {n * n} iterations")
        v = min(u for u in range(n) if col[u] == top)
        seen = {col[x] for x in g.neighbors(v)}
        missing = [c for c in range(1, top) if c not in seen]
        if missing:
            col[v] = missing[0]
            ensure(top in col, "top colour class emptied; colouring was not optimal")
            continue
        w = min(x for x in g.neighbors(v) if col[x] == pivot)
        before = sum(1 for x in g.neighbors(v) if col[x] == pivot)
        swapped = False
        for i in range(1, s + 1):
            chain = kempe_component(g, col, w, i)
            if not any(col[x] == i for x in g.neighbors(v) if x in chain):
                ensure(v not in chain, "apex inside a Kempe chain")
                for x in chain:
                    col[x] = i if col[x] == pivot else pivot
                ensure(all(col[a] != col[b] for a in chain for b in g.neighbors(a)), "chain swap broke properness")
                after = sum(1 for x in g.neighbors(v) if col[x] == pivot)
                ensure(after < before, "chain swap did not reduce pivot neighbours of v")
                swapped = True
                break
        if not swapped:
            break

    ends: list[int] = []
    paths: list[tuple[int, ...]] = []
    for i in range(1, s + 1):
        chain = kempe_component(g, col, w, i)
        wi = min(x for x in g.neighbors(v) if x in chain and col[x] == i)
        p = _bfs_path(g, chain, w, wi)
        ensure(v not in p, "Kempe path passes through the apex")
        ensure(all({col[a], col[b]} == {i, pivot} for a, b in zip(p, p[1:])), "path leaves its two colours")
        ends.append(wi)
        paths.append(p)
    branch = (v, w, *ends)
    walks = [(v, w)] + [(v, wi) for wi in ends] + paths
    cert = ImmersionCertificate(g, CompleteTripartite(1, 1, s), branch, tuple(walks))
    return KempeRun(cert, ProperColoring(k, tuple(col)), iterations, v, w)


def kempe_immersion(g: SimpleGraph, coloring: ProperColoring | None = None) -> ImmersionCertificate:
    """Certificate for an immersion of ``K_{1,1,chi(g)-2}`` in ``g``."""
    return run_kempe(g, coloring).certificate
