"""Edge-colored simple graphs, directed and undirected, and the G_n / H_n families.

Vertices and colors are the integers ``0 .. n_vertices-1`` and
``0 .. n_colors-1``.  For the families built here both sets are Z_n and
color ``m`` is the central element usually written Z_m.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = [
    "GraphError",
    "OddOrderError",
    "EdgeColoredGraph",
    "DirectedEdgeColoredGraph",
    "UniformityResult",
    "build_gn",
    "build_hn",
    "underlying_undirected",
    "is_uniform",
    "color_classes",
    "graph_to_dict",
    "graph_from_dict",
    "load_graph",
    "dumps_graph",
    "to_dot",
]


class GraphError(ValueError):
    """Raised when a graph violates one of its structural invariants."""


class OddOrderError(GraphError):
    def __init__(self, n):
        super().__init__(f"odd order required: n must be an odd integer >= 3, got {n!r}")
        self.n = n


def check_odd_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise OddOrderError(n)
    return n


def _check_counts(n_vertices, n_colors):
    for name, val in (("n_vertices", n_vertices), ("n_colors", n_colors)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise GraphError(f"{name} must be a positive integer, got {val!r}")


def _check_surjective(colors: Iterable[int], n_colors: int):
    missing = set(range(n_colors)) - set(colors)
    if missing:
        raise GraphError(f"coloring is not surjective: colors {sorted(missing)} unused")


@dataclass(frozen=True, eq=False)
class EdgeColoredGraph:
    """Undirected simple graph with a surjective edge coloring.

    ``coloring`` maps normalized edges ``(u, v)`` with ``u < v`` to colors.
    Use :meth:`from_edges` to build one from arbitrary-order pairs.
    """

    n_vertices: int
    n_colors: int
    coloring: Mapping[tuple[int, int], int]

    def __post_init__(self):
        _check_counts(self.n_vertices, self.n_colors)
        clean = {}
        for idx, ((u, v), color) in enumerate(self.coloring.items()):
            _check_edge(idx, u, v, color, self.n_vertices, self.n_colors)
            if u > v:
                raise GraphError(f"edge {idx}: undirected edges are stored as (min, max), got ({u}, {v})")
            clean[(u, v)] = color
        _check_surjective(clean.values(), self.n_colors)
        object.__setattr__(self, "coloring", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_edges(cls, n_vertices: int, n_colors: int, edges: Iterable[tuple[int, int, int]]):
        coloring: dict[tuple[int, int], int] = {}
        for idx, (u, v, color) in enumerate(edges):
            _check_edge(idx, u, v, color, n_vertices, n_colors)
            key = (min(u, v), max(u, v))
            if key in coloring:
                raise GraphError(f"edge {idx}: duplicate edge {{{u}, {v}}}")
            coloring[key] = color
        return cls(n_vertices, n_colors, coloring)

    directed = False

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.coloring)

    def color(self, u: int, v: int) -> int | None:
        """Color of edge {u, v}, or None if it is not an edge."""
        return self.coloring.get((u, v) if u < v else (v, u))

    def has_edge(self, u: int, v: int) -> bool:
        return self.color(u, v) is not None

    def color_matrix(self) -> list[int]:
        """Row-major n*n color table, -1 on non-edges and the diagonal."""
        n = self.n_vertices
        table = [-1] * (n * n)
        for (u, v), c in self.coloring.items():
            table[u * n + v] = c
            table[v * n + u] = c
        return table

    def __eq__(self, other):
        if not isinstance(other, EdgeColoredGraph):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and self.n_colors == other.n_colors
            and dict(self.coloring) == dict(other.coloring)
        )

    def __hash__(self):
        return hash((self.n_vertices, self.n_colors, tuple(self.coloring.items())))

    def __repr__(self):
        return f"EdgeColoredGraph(n_vertices={self.n_vertices}, n_colors={self.n_colors}, edges={len(self.coloring)})"


@dataclass(frozen=True, eq=False)
class DirectedEdgeColoredGraph:
    """Directed simple graph: each unordered pair is oriented at most once."""

    n_vertices: int
    n_colors: int
    coloring: Mapping[tuple[int, int], int]

    def __post_init__(self):
        _check_counts(self.n_vertices, self.n_colors)
        clean = {}
        seen = set()
        for idx, ((u, v), color) in enumerate(self.coloring.items()):
            _check_edge(idx, u, v, color, self.n_vertices, self.n_colors)
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise GraphError(f"edge {idx}: pair {{{u}, {v}}} is directed both ways")
            seen.add(pair)
            clean[(u, v)] = color
        _check_surjective(clean.values(), self.n_colors)
        object.__setattr__(self, "coloring", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_edges(cls, n_vertices: int, n_colors: int, edges: Iterable[tuple[int, int, int]]):
        coloring: dict[tuple[int, int], int] = {}
        for idx, (u, v, color) in enumerate(edges):
            _check_edge(idx, u, v, color, n_vertices, n_colors)
            if (u, v) in coloring or (v, u) in coloring:
                raise GraphError(f"edge {idx}: pair {{{u}, {v}}} appears more than once")
            coloring[(u, v)] = color
        return cls(n_vertices, n_colors, coloring)

    directed = True

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.coloring)

    def signed_color(self, u: int, v: int) -> tuple[int, int] | None:
        """``(color, +1)`` for an edge (u, v), ``(color, -1)`` for a reversed one."""
        c = self.coloring.get((u, v))
        if c is not None:
            return (c, 1)
        c = self.coloring.get((v, u))
        if c is not None:
            return (c, -1)
        return None

    def __eq__(self, other):
        if not isinstance(other, DirectedEdgeColoredGraph):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and self.n_colors == other.n_colors
            and dict(self.coloring) == dict(other.coloring)
        )

    def __hash__(self):
        return hash((self.n_vertices, self.n_colors, tuple(self.coloring.items())))

    def __repr__(self):
        return (
            f"DirectedEdgeColoredGraph(n_vertices={self.n_vertices}, "
            f"n_colors={self.n_colors}, edges={len(self.coloring)})"
        )


def _check_edge(idx, u, v, color, n_vertices, n_colors):
    for name, val, bound in (("u", u, n_vertices), ("v", v, n_vertices), ("color", color, n_colors)):
        if isinstance(val, bool) or not isinstance(val, int):
            raise GraphError(f"edge {idx}: {name} must be an integer, got {val!r}")
        if not 0 <= val < bound:
            raise GraphError(f"edge {idx}: {name}={val} out of range [0, {bound})")
    if u == v:
        raise GraphError(f"edge {idx}: loop at vertex {u}")


def build_gn(n: int) -> EdgeColoredGraph:
    """Complete graph on Z_n with edge {i, j} colored (i + j) mod n."""
    check_odd_order(n)
    coloring = {(i, j): (i + j) % n for i in range(n) for j in range(i + 1, n)}
    return EdgeColoredGraph(n, n, coloring)


def build_hn(n: int) -> DirectedEdgeColoredGraph:
    """Orientation of G_n with edges (m + i, m - i), 1 <= i <= (n-1)/2."""
    check_odd_order(n)
    coloring = {}
    for m in range(n):
        for i in range(1, (n - 1) // 2 + 1):
            a, b = (m + i) % n, (m - i) % n
            coloring[(a, b)] = (a + b) % n
    return DirectedEdgeColoredGraph(n, n, coloring)


def underlying_undirected(H: DirectedEdgeColoredGraph) -> EdgeColoredGraph:
    coloring = {(min(u, v), max(u, v)): c for (u, v), c in H.coloring.items()}
    return EdgeColoredGraph(H.n_vertices, H.n_colors, coloring)


@dataclass(frozen=True)
class UniformityResult:
    """Outcome of :func:`is_uniform`.

    On failure ``witness`` is either ``("incident", vertex, edge1, edge2, color)``
    or ``("multiplicity", color1, count1, color2, count2)``.
    """

    uniform: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.uniform


def is_uniform(G: EdgeColoredGraph) -> UniformityResult:
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for edge, c in G.coloring.items():
        for vertex in edge:
            prior = seen.setdefault((vertex, c), edge)
            if prior != edge:
                return UniformityResult(False, ("incident", vertex, prior, edge, c))
    counts = Counter(G.coloring.values())
    ordered = sorted(counts.items())
    first_color, first_count = ordered[0]
    for color, count in ordered[1:]:
        if count != first_count:
            return UniformityResult(False, ("multiplicity", first_color, first_count, color, count))
    return UniformityResult(True)


def color_classes(G: EdgeColoredGraph) -> dict[int, frozenset[tuple[int, int]]]:
    classes: dict[int, set] = {c: set() for c in range(G.n_colors)}
    for edge, c in G.coloring.items():
        classes[c].add(edge)
    return {c: frozenset(es) for c, es in classes.items()}


# -- serialization -----------------------------------------------------------

def graph_to_dict(G) -> dict:
    return {
        "directed": G.directed,
        "n_vertices": G.n_vertices,
        "n_colors": G.n_colors,
        "edges": [{"u": u, "v": v, "color": c} for (u, v), c in G.coloring.items()],
    }


def graph_from_dict(data) -> EdgeColoredGraph | DirectedEdgeColoredGraph:
    """Validate a decoded JSON graph; the first violation is reported."""
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    for key in ("directed", "n_vertices", "n_colors", "edges"):
        if key not in data:
            raise GraphError(f"missing key {key!r}")
    if not isinstance(data["directed"], bool):
        raise GraphError("'directed' must be a boolean")
    if not isinstance(data["edges"], list):
        raise GraphError("'edges' must be a list")
    _check_counts(data["n_vertices"], data["n_colors"])
    triples = []
    for idx, e in enumerate(data["edges"]):
        if not isinstance(e, dict) or not {"u", "v", "color"} <= e.keys():
            raise GraphError(f"edge {idx}: expected an object with keys u, v, color")
        triples.append((e["u"], e["v"], e["color"]))
    cls = DirectedEdgeColoredGraph if data["directed"] else EdgeColoredGraph
    return cls.from_edges(data["n_vertices"], data["n_colors"], triples)


def dumps_graph(G, pretty: bool = False) -> str:
    return json.dumps(graph_to_dict(G), indent=2 if pretty else None, sort_keys=True)


def load_graph(path) -> EdgeColoredGraph | DirectedEdgeColoredGraph:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return graph_from_dict(data)


def to_dot(G, name: str = "G") -> str:
    """DOT text; every edge carries ``color="cK"`` and ``label="Z_K"``."""
    kind, arrow = ("digraph", "->") if G.directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    lines.extend(f"  {v};" for v in range(G.n_vertices))
    for (u, v), c in G.coloring.items():
        lines.append(f'  {u} {arrow} {v} [color="c{c}", label="Z_{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
