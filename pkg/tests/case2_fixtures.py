"""Hand-built decompositions that drive the clique-routing branch.

Reduced hosts from the generators always land in the common-neighbour
branch, so these fixtures build an ``XYDecomposition`` directly: ``X`` and
``Y`` are cliques, ``C = {a, c}``, the sources in ``X*`` miss ``c`` and
see a random part of ``YC_bar``.  The sets are assigned by construction
rather than recomputed, so they double as an independent description of
what the decomposition should be.
"""

from __future__ import annotations

import random
from math import ceil

from immersionkit.builder import XYDecomposition
from immersionkit.graph import SimpleGraph


def synthetic_case2(rng: random.Random, wide: bool) -> tuple[XYDecomposition, int] | None:
    """Random instance with ``|YC_bar| >= l`` when ``wide``, else ``< l``.

    Returns ``None`` when the sampled sizes do not fit; callers retry.
    """
    p = rng.randint(1, 3) if wide else rng.randint(2, 4)  # |Xa_bar|
    t = rng.randint(1, 4)  # |X*|
    ell = p + t
    r = rng.randint(0, 2)  # members of Xa besides x and X*
    if wide:
        s = rng.randint(t, t + 3)  # |Y*|
        q = max(s + 1, ell) + rng.randint(0, 2)  # |Ya_bar| = |YC_bar|
        ya = 2 * t + rng.randint(0, 2)  # |Ya| = |YC|, holds y
    else:
        if t > ell - 2:
            return None
        s = rng.randint(t, ell - 2)
        q = rng.randint(s + 1, ell - 1)
        ya = max(t, 1 + r + s - p) + 1 + rng.randint(0, 2)
    nx_ = p + 1 + t + r
    # n is pinned by ceil(n/2) = |X| + |Y*|; everything must fit in it
    n = 2 * (nx_ + s) - rng.randint(0, 1)
    if nx_ + ya + q + 2 != n:
        return None

    labels = list(range(n))
    rng.shuffle(labels)
    it = iter(labels)
    take = lambda k: [next(it) for _ in range(k)]  # noqa: E731
    xa_bar, (x,), x_star, extra = take(p), take(1), take(t), take(r)
    (y,), ya_rest, ya_bar = take(1), take(ya - 1), take(q)
    a, c = take(2)
    X = xa_bar + [x] + x_star + extra
    Y = [y] + ya_rest + ya_bar

    edges = set()
    for side in (X, Y):
        edges |= {(u, w) for u in side for w in side if u < w}
    edges |= {(u, w) for u in xa_bar for w in ya_bar}
    edges |= {(a, w) for w in [x, y] + x_star + extra + ya_rest}
    edges |= {(c, w) for w in [x, y] + extra + ya_rest}
    for v in x_star:
        k = rng.randint(s + 1, q)
        edges |= {(v, w) for w in rng.sample(ya_bar, k)}
    g = SimpleGraph.from_edges(n, [(min(e), max(e)) for e in edges])

    fs = frozenset
    dec = XYDecomposition(
        g=g, x=x, y=y, a=a, C=fs((a, c)), X=fs(X), Y=fs(Y),
        XC=fs([x] + extra), XC_bar=fs(xa_bar + x_star),
        YC=fs([y] + ya_rest), YC_bar=fs(ya_bar),
        Xa=fs([x] + x_star + extra), Xa_bar=fs(xa_bar),
        Ya=fs([y] + ya_rest), Ya_bar=fs(ya_bar),
    )
    assert ceil(n / 2) == len(X) + s
    return dec, ell


def sample_case2(rng: random.Random, wide: bool) -> tuple[XYDecomposition, int]:
    while True:
        got = synthetic_case2(rng, wide)
        if got is not None:
            return got
