"""Host graphs on dense vertex indices.

Adjacency is held as one Python ``int`` bitmask per vertex: bit ``w`` of
``masks[v]`` is set iff ``vw`` is an edge.  That doubles as an O(1) pair
membership test and as a sorted neighbour set (bits iterate in increasing
order), and it makes neighbourhood unions/intersections single operations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import require

Edge = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected loopless graph on vertices ``0..n-1``; immutable."""

    n: int
    masks: tuple[int, ...]
    _nbrs: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        require(self.n >= 0, "vertex count must be non-negative")
        require(len(self.masks) == self.n, "one adjacency mask per vertex")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.masks):
            require(m & ~full == 0, f"vertex {v} has a neighbour outside [0, n)")
            require(not (m >> v) & 1, f"self-loop at {v}")
            for w in bits(m):
                require((self.masks[w] >> v) & 1, f"asymmetric adjacency {v}-{w}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def _trusted(cls, n: int, masks: tuple[int, ...]) -> SimpleGraph:
        """Skip validation; for masks derived from an already valid graph."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "masks", masks)
        object.__setattr__(g, "_nbrs", {})
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> SimpleGraph:
        masks = [0] * n
        for u, v in edges:
            require(0 <= u < n and 0 <= v < n, f"edge {u}-{v} out of range for n={n}")
            require(u != v, f"self-loop at {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    @classmethod
    def empty(cls, n: int) -> SimpleGraph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    # -- queries ------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def nbr_mask(self, v: int) -> int:
        return self.masks[v]

    def closed_mask(self, v: int) -> int:
        return self.masks[v] | (1 << v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbourhood N(v)."""
        cached = self._nbrs.get(v)
        if cached is None:
            cached = self._nbrs[v] = tuple(bits(self.masks[v]))
        return cached

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def max_degree(self) -> int:
        return max((m.bit_count() for m in self.masks), default=0)

    def edges(self) -> list[Edge]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.masks[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def is_complete(self) -> bool:
        return all(m.bit_count() == self.n - 1 for m in self.masks)

    def without_edge(self, u: int, v: int) -> SimpleGraph:
        masks = list(self.masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return SimpleGraph._trusted(self.n, tuple(masks))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def alpha_at_most_2(g: SimpleGraph) -> bool:
    """True iff no three vertices are pairwise non-adjacent.

    Equivalently the complement is triangle-free: for every non-adjacent
    pair, the two complement neighbourhoods must be disjoint.  O(n^2) mask
    operations.
    """
    full = g.full_mask
    co = [full & ~g.closed_mask(v) for v in range(g.n)]
    for u in range(g.n):
        cu = co[u]
        for v in bits(cu >> (u + 1) << (u + 1)):
            if cu & co[v]:
                return False
    return True


def complement(g: SimpleGraph) -> SimpleGraph:
    full = g.full_mask
    return SimpleGraph._trusted(g.n, tuple(full & ~g.closed_mask(v) for v in range(g.n)))


def common_neighbors(g: SimpleGraph, u: int, v: int) -> frozenset[int]:
    require(u != v, "common_neighbors needs two distinct vertices")
    return frozenset(bits(g.masks[u] & g.masks[v]))


def _drop_bit(m: int, d: int) -> int:
    """Remove bit ``d`` from ``m``, shifting the higher bits down by one."""
    return (m & ((1 << d) - 1)) | (m >> (d + 1) << d)


def induced_delete(g: SimpleGraph, drop: Iterable[int]) -> tuple[SimpleGraph, tuple[int, ...]]:
    """Delete ``drop`` and relabel densely.

    Returns the induced subgraph together with ``old_of``: ``old_of[i]`` is
    the index in ``g`` of vertex ``i`` of the result.
    """
    dropped = sorted(set(drop), reverse=True)
    require(all(0 <= v < g.n for v in dropped), "dropped vertex out of range")
    gone = mask_of(dropped)
    old_of = tuple(v for v in range(g.n) if not (gone >> v) & 1)
    masks = []
    for v in old_of:
        m = g.masks[v]
        for d in dropped:
            m = _drop_bit(m, d)
        masks.append(m)
    return SimpleGraph._trusted(len(old_of), tuple(masks)), old_of


def edge_critical_reduce(g: SimpleGraph, *, check: bool = True) -> SimpleGraph:
    """Delete edges until every remaining edge is needed to keep alpha <= 2.

    An edge ``uv`` is removable iff ``N[u] | N[v]`` is the whole vertex set
    (no third vertex misses both ends).  The contract is "scan edges in
    lexicographic order, delete the first removable one, restart".  Deleting
    edges only shrinks closed neighbourhoods, so an edge that is not
    removable never becomes removable later; the restarted scan therefore
    never deletes anything before the previous deletion point, and one
    ordered pass with a fresh test per edge yields the identical graph.

    ``check=False`` skips the alpha test for callers that already know it.
    """
    if check:
        require(alpha_at_most_2(g), "edge_critical_reduce needs alpha(g) <= 2")
    full = g.full_mask
    masks = list(g.masks)
    for u in range(g.n):
        bu = 1 << u
        for v in bits(g.masks[u] >> (u + 1) << (u + 1)):
            if (masks[u] | masks[v] | bu | (1 << v)) == full:
                masks[u] &= ~(1 << v)
                masks[v] &= ~bu
    return SimpleGraph._trusted(g.n, tuple(masks))


def reduce_after_deleting_pair(g: SimpleGraph, x: int, y: int) -> tuple[SimpleGraph, SimpleGraph, tuple[int, ...]]:
    """``edge_critical_reduce(g - x - y)`` for an edge-critical ``g``.

    Every edge of ``g`` has a witness, a vertex missing both ends.  After
    deleting ``x`` and ``y`` only edges whose witnesses were all among them
    can become removable, and those lie inside the non-neighbourhood of
    ``x`` or of ``y``.  Scanning just these candidates in lexicographic
    order gives the same graph as the full pass.

    Returns ``(g - x - y, its reduction, old_of)``.
    """
    sub, old_of = induced_delete(g, (x, y))
    hi, lo = max(x, y), min(x, y)
    squeeze = lambda m: _drop_bit(_drop_bit(m, hi), lo)  # noqa: E731
    # x and y have no common non-neighbour (alpha <= 2), so the two
    # non-neighbourhoods are disjoint cliques
    zone = [squeeze(g.full_mask & ~g.closed_mask(w)) for w in (x, y)]
    full = sub.full_mask
    masks = list(sub.masks)
    for u in range(sub.n):
        inside = zone[0] if (zone[0] >> u) & 1 else zone[1] if (zone[1] >> u) & 1 else 0
        for v in bits(inside & masks[u] >> (u + 1) << (u + 1)):
            if (masks[u] | masks[v] | (1 << u) | (1 << v)) == full:
                masks[u] &= ~(1 << v)
                masks[v] &= ~(1 << u)
    return sub, SimpleGraph._trusted(sub.n, tuple(masks)), old_of


def is_edge_critical(g: SimpleGraph) -> bool:
    full = g.full_mask
    return all(
        (g.closed_mask(u) | g.closed_mask(v)) != full for u, v in g.edges()
    )


class MultiGraph:
    """Loopless multigraph: a multiset of unordered vertex pairs.

    Unlike :class:`SimpleGraph` this is a working structure and is mutated in
    place by the rerouting steps that consume it.
    """

    def __init__(self, n: int, edges: Iterable[Edge] = ()) -> None:
        self.n = n
        self._mult: Counter[Edge] = Counter()
        self._adj: list[Counter[int]] = [Counter() for _ in range(n)]
        for u, v in edges:
            self.add(u, v)

    def add(self, u: int, v: int) -> None:
        require(u != v, f"self-loop at {u}")
        require(0 <= u < self.n and 0 <= v < self.n, f"edge {u}-{v} out of range")
        self._mult[norm(u, v)] += 1
        self._adj[u][v] += 1
        self._adj[v][u] += 1

    def remove(self, u: int, v: int) -> None:
        e = norm(u, v)
        require(self._mult[e] > 0, f"no edge {u}-{v} to remove")
        self._mult[e] -= 1
        self._adj[u][v] -= 1
        self._adj[v][u] -= 1
        if not self._mult[e]:
            del self._mult[e]
            del self._adj[u][v]
            del self._adj[v][u]

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get(norm(u, v), 0)

    def pairs(self) -> list[Edge]:
        """Distinct pairs, sorted."""
        return sorted(self._mult)

    def edge_instances(self) -> list[tuple[int, int, int]]:
        """Every parallel copy as ``(u, v, copy_index)``, sorted."""
        return [(u, v, k) for (u, v) in self.pairs() for k in range(self._mult[(u, v)])]

    def neighbors(self, v: int) -> set[int]:
        return set(self._adj[v])

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values())

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def max_multiplicity(self) -> int:
        return max(self._mult.values(), default=0)

    def pairs_with_multiplicity(self, m: int) -> list[Edge]:
        return sorted(e for e, k in self._mult.items() if k == m)

    def edge_count(self) -> int:
        return sum(self._mult.values())

    def is_simple(self) -> bool:
        return self.max_multiplicity() <= 1

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, mult={dict(sorted(self._mult.items()))})"


def petersen() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)

