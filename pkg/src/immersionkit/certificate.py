"""Immersion certificates: pattern, branch map and one host path per
pattern edge.

Pattern vertices are numbered part by part (for a biclique: the left part
first).  ``pattern.edges()`` fixes the order in which ``paths`` are stored;
for a biclique that is sorted by (left index, right index).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Union

from .errors import require
from .formats import from_json_dict, to_graph6, to_json_dict
from .graph import SimpleGraph


@dataclass(frozen=True)
class Biclique:
    left: int
    right: int

    kind = "biclique"

    @property
    def order(self) -> int:
        return self.left + self.right

    def parts(self) -> list[range]:
        return [range(self.left), range(self.left, self.order)]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, self.left + j) for i in range(self.left) for j in range(self.right)]

    def transposed(self) -> Biclique:
        return Biclique(self.right, self.left)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "left": self.left, "right": self.right}


@dataclass(frozen=True)
class CompleteTripartite:
    a: int
    b: int
    c: int

    kind = "complete_tripartite"

    @property
    def order(self) -> int:
        return self.a + self.b + self.c

    def parts(self) -> list[range]:
        return [range(self.a), range(self.a, self.a + self.b), range(self.a + self.b, self.order)]

    def edges(self) -> list[tuple[int, int]]:
        part = {v: i for i, p in enumerate(self.parts()) for v in p}
        return [(u, v) for u, v in combinations(range(self.order), 2) if part[u] != part[v]]

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "parts": [self.a, self.b, self.c]}


Pattern = Union[Biclique, CompleteTripartite]


def pattern_from_json(d: dict[str, Any]) -> Pattern:
    if d.get("kind") == "biclique":
        return Biclique(int(d["left"]), int(d["right"]))
    if d.get("kind") == "complete_tripartite":
        a, b, c = (int(x) for x in d["parts"])
        return CompleteTripartite(a, b, c)
    raise ValueError(f"unknown pattern kind {d.get('kind')!r}")


@dataclass(frozen=True)
class ImmersionCertificate:
    """Witness that ``pattern`` immerses in ``host``.

    ``branch[p]`` is the host image of pattern vertex ``p``; ``paths[e]`` is
    the host walk for ``pattern.edges()[e]``, running from the image of the
    lower-numbered end to the image of the other.  Nothing is validated here:
    that is :func:`immersionkit.verify.verify_certificate`'s job, and it must
    be able to see malformed certificates.
    """

    host: SimpleGraph
    pattern: Pattern
    branch: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def path_for(self, p: int, q: int) -> tuple[int, ...]:
        return self.paths[self.pattern.edges().index((p, q))]

    def transposed(self) -> ImmersionCertificate:
        """Swap the two parts of a biclique certificate."""
        require(isinstance(self.pattern, Biclique), "only bicliques transpose")
        pat = self.pattern
        left = self.branch[: pat.left]
        right = self.branch[pat.left:]
        walks = dict(zip(pat.edges(), self.paths))
        new_pat = pat.transposed()
        new_paths = tuple(
            tuple(reversed(walks[(j - new_pat.left, pat.left + i)]))
            for i, j in new_pat.edges()
        )
        return ImmersionCertificate(self.host, new_pat, tuple(right) + tuple(left), new_paths)

    def with_host(self, host: SimpleGraph) -> ImmersionCertificate:
        return ImmersionCertificate(host, self.pattern, self.branch, self.paths)

    def to_json(self, host_format: str = "edges") -> dict[str, Any]:
        host = {"graph6": to_graph6(self.host)} if host_format == "graph6" else to_json_dict(self.host)
        parts = [[self.branch[p] for p in part] for part in self.pattern.parts()]
        if isinstance(self.pattern, Biclique):
            branch: dict[str, Any] = {"left": parts[0], "right": parts[1]}
        else:
            branch = {"parts": parts}
        paths = []
        for (p, q), walk in zip(self.pattern.edges(), self.paths):
            paths.append({"ends": [self.branch[p], self.branch[q]], "walk": list(walk)})
        return {"host": host, "pattern": self.pattern.to_json(), "branch": branch, "paths": paths}

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> ImmersionCertificate:
        host = from_json_dict(d["host"])
        pattern = pattern_from_json(d["pattern"])
        b = d["branch"]
        parts = [b["left"], b["right"]] if "left" in b else b["parts"]
        branch = tuple(int(v) for part in parts for v in part)
        paths = tuple(tuple(int(v) for v in entry["walk"]) for entry in d["paths"])
        return cls(host, pattern, branch, paths)


def biclique_certificate(
    host: SimpleGraph,
    left: list[int],
    right: list[int],
    walks: dict[tuple[int, int], tuple[int, ...]],
) -> ImmersionCertificate:
    """Package host-vertex parts plus a walk per (left, right) host pair."""
    pattern = Biclique(len(left), len(right))
    paths = tuple(walks[(left[i], right[j - len(left)])] for i, j in pattern.edges())
    return ImmersionCertificate(host, pattern, tuple(left) + tuple(right), paths)
