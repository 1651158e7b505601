"""Random hosts with independence number at most 2.

All randomness comes from :class:`random.Random` seeded with the integer
``seed`` (Mersenne Twister MT19937, seeded through ``init_by_array`` on the
32-bit words of ``|seed|``), consumed in the fixed order documented per
model, so the instances are reproducible across platforms and ports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import ceil

from .errors import ensure, require
from .graph import SimpleGraph, alpha_at_most_2, complement

MODELS = ("complement-trianglefree", "c5-blowup", "split-cliques", "complete-minus-star")

# density used by the batch suite when none is given
DEFAULT_P = {
    "complement-trianglefree": 0.75,
    "c5-blowup": 0.1,
    "split-cliques": 0.5,
    "complete-minus-star": 0.0,
}


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    p: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        require(self.model in MODELS, f"unknown model {self.model!r}; expected one of {MODELS}")
        require(self.n >= 1, "n must be at least 1")
        require(0.0 <= self.p <= 1.0, "p must lie in [0, 1]")
        require(-(2**63) <= self.seed < 2**64, "seed must fit in 64 bits")


def _trianglefree_complement(n: int, p: float, rng: random.Random) -> SimpleGraph:
    # triangle-free process over a shuffled pair list; each pair is offered
    # with probability p.  With p = 1 the result is maximal triangle-free,
    # so its complement is edge-critical.
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    adj = [0] * n
    for u, v in pairs:
        if rng.random() < p and not (adj[u] & adj[v]):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return complement(SimpleGraph(n, tuple(adj)))


def _c5_blowup(n: int, p: float, rng: random.Random) -> SimpleGraph:
    # blob i (sizes n//5 or n//5 + 1, lower blobs first) is a clique joined
    # to blobs i +- 1; every other pair becomes an edge with probability p
    sizes = [n // 5 + (i < n % 5) for i in range(5)]
    blob = [i for i, s in enumerate(sizes) for _ in range(s)]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if (blob[u] - blob[v]) % 5 in (0, 1, 4) or rng.random() < p:
                edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)


def _split_cliques(n: int, p: float, rng: random.Random) -> SimpleGraph:
    # cliques on [0, a) and [a, n) for a uniform in [1, n-1]; cross pairs
    # with probability p.  Any three vertices meet one clique twice.
    if n == 1:
        return SimpleGraph.empty(1)
    a = rng.randint(1, n - 1)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u < a) == (v < a) or rng.random() < p:
                edges.append((u, v))
    return SimpleGraph.from_edges(n, edges)


def _complete_minus_star(n: int, p: float, rng: random.Random) -> SimpleGraph:
    # complete graph on ceil(n/2) vertices minus floor(n/4) + 1 edges at
    # vertex 0 (capped at its degree), chosen by a seeded sample
    m = ceil(n / 2)
    drop = min(n // 4 + 1, m - 1)
    gone = set(rng.sample(range(1, m), drop)) if drop > 0 else set()
    edges = [(u, v) for u in range(m) for v in range(u + 1, m) if not (u == 0 and v in gone)]
    return SimpleGraph.from_edges(m, edges)


_BUILDERS = {
    "complement-trianglefree": _trianglefree_complement,
    "c5-blowup": _c5_blowup,
    "split-cliques": _split_cliques,
    "complete-minus-star": _complete_minus_star,
}


def generate(spec: GeneratorSpec) -> SimpleGraph:
    """Deterministic host for ``spec``; alpha <= 2 is checked, not assumed.

    ``complete-minus-star`` produces a host on ``ceil(n/2)`` vertices and
    ignores ``p``.
    """
    rng = random.Random(spec.seed)
    g = _BUILDERS[spec.model](spec.n, spec.p, rng)
    ensure(alpha_at_most_2(g), f"generator {spec.model} produced a host with alpha >= 3")
    return g
