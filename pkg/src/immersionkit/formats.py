"""Graph serialisation: graph6 strings and the JSON edge-list form.

JSON form: ``{"n": int, "edges": [[u, v], ...]}`` with 0-based vertices,
``u < v``, sorted lexicographically.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import networkx as nx

from .errors import require
from .graph import SimpleGraph


def to_graph6(g: SimpleGraph) -> str:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise ValueError(f"bad graph6 string {text!r}: {exc}") from exc
    return SimpleGraph.from_edges(nxg.number_of_nodes(), nxg.edges())


def to_json_dict(g: SimpleGraph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json_dict(d: dict[str, Any]) -> SimpleGraph:
    if "graph6" in d:
        return from_graph6(d["graph6"])
    require("n" in d and "edges" in d, "graph JSON needs 'n' and 'edges'")
    edges = []
    for e in d["edges"]:
        require(len(e) == 2, f"edge entry {e!r} is not a pair")
        edges.append((int(e[0]), int(e[1])))
    return SimpleGraph.from_edges(int(d["n"]), edges)


def read_graph(path: str | Path) -> SimpleGraph:
    """Load a host from ``.g6`` (first line) or ``.json``."""
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        return from_json_dict(json.loads(text))
    return from_graph6(text.splitlines()[0])


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))
