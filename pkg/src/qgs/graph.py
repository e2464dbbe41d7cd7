"""Finite directed graphs (loops allowed, no multiple edges)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable


class GraphError(ValueError):
    """Invalid graph data; ``line`` is the 1-based input line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``1..n_vertices``.

    The order of ``edges`` is the canonical edge numbering: ``edges[j-1]``
    is the j-th edge.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n_vertices, int) or self.n_vertices < 1:
            raise GraphError(f"number of vertices must be a positive integer, got {self.n_vertices!r}")
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        seen = set()
        for s, t in edges:
            for v in (s, t):
                if not 1 <= v <= self.n_vertices:
                    raise GraphError(f"vertex {v} out of range 1..{self.n_vertices}")
            if (s, t) in seen:
                raise GraphError(f"duplicate edge ({s},{t})")
            seen.add((s, t))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_edge_set", frozenset(seen))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def incidence(self, j: int) -> tuple[int, int]:
        """Source and target of the j-th edge (1-based)."""
        if not 1 <= j <= len(self.edges):
            raise IndexError(f"edge index {j} out of range 1..{len(self.edges)}")
        return self.edges[j - 1]

    def has_edge(self, i: int, k: int) -> bool:
        return (i, k) in self._edge_set

    def non_edges(self) -> list[tuple[int, int]]:
        n = self.n_vertices
        return [(i, k) for i in range(1, n + 1) for k in range(1, n + 1)
                if (i, k) not in self._edge_set]

    def canonical_hash(self) -> str:
        """Hash of the vertex count and the edge *set* (edge order ignored)."""
        payload = json.dumps([self.n_vertices, sorted(self.edges)])
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_text(self) -> str:
        lines = [str(self.n_vertices)] + [f"{s} {t}" for s, t in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]})

    def summary(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges],
                "n_edges": self.n_edges, "hash": self.canonical_hash()}


# -- parsing ----------------------------------------------------------------

def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("JSON graph needs a 'vertices' field")
    n = data["vertices"]
    edges = data.get("edges", [])
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError("'vertices' must be an integer")
    if not isinstance(edges, list) or any(
            not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) for v in e)
            for e in edges):
        raise GraphError("'edges' must be a list of [source, target] integer pairs")
    return Graph(n, tuple(tuple(e) for e in edges))


def _parse_text(text: str) -> Graph:
    n = None
    n_line = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1 or not fields[0].isdigit():
                raise GraphError(f"expected vertex count, got {line!r}", lineno)
            n = int(fields[0])
            n_line = lineno
            if n < 1:
                raise GraphError("vertex count must be positive", lineno)
            continue
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise GraphError(f"expected 's t', got {line!r}", lineno)
        s, t = int(fields[0]), int(fields[1])
        for v in (s, t):
            if not 1 <= v <= n:
                raise GraphError(f"vertex {v} out of range 1..{n}", lineno)
        if (s, t) in seen:
            raise GraphError(f"duplicate edge ({s},{t}), first seen on line {seen[(s, t)]}", lineno)
        seen[(s, t)] = lineno
        edges.append((s, t))
    if n is None:
        raise GraphError("missing vertex count", n_line)
    return Graph(n, tuple(edges))


def parse_graph(text: str) -> Graph:
    """Parse the text format (``n`` then ``s t`` lines) or the JSON format."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# -- families ---------------------------------------------------------------

FAMILIES = ("empty", "loops", "complete", "cycle", "d4_paper")

D4_EDGES = ((1, 2), (2, 1), (3, 4), (4, 3))


def builtin_graph(family: str, n: int = 1, loops: bool = True) -> Graph:
    """Graph from one of the named families.

    ``complete`` is ``V x V`` including loops unless ``loops=False``.
    ``n`` is ignored for ``d4_paper``.
    """
    if family == "d4_paper":
        return Graph(4, D4_EDGES)
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"n must be a positive integer, got {n!r}")
    vs = range(1, n + 1)
    if family == "empty":
        edges: Iterable = ()
    elif family == "loops":
        edges = ((i, i) for i in vs)
    elif family == "complete":
        edges = ((i, k) for i in vs for k in vs if loops or i != k)
    else:
        edges = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    return Graph(n, tuple(edges))


def graph_from_spec(spec: str) -> Graph:
    """Resolve ``family:n`` (e.g. ``cycle:5``, ``d4_paper``) or a file path."""
    name, _, arg = spec.partition(":")
    if name in FAMILIES:
        return builtin_graph(name, int(arg) if arg else 1)
    if name == "complete-noloops":
        return builtin_graph("complete", int(arg), loops=False)
    return load_graph(spec)
