"""Finite simple graphs with a vertex-monoid assignment.

Vertex ids are strings, kept in lexicographic order; every canonical ordering
downstream (normal forms, component order, path tie-breaking) uses that order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .errors import PreconditionViolation, UnknownVertex
from .monoids import VertexMonoidSpec

Edge = frozenset


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset
    monoids: tuple[VertexMonoidSpec, ...]

    def __post_init__(self):
        if list(self.vertices) != sorted(set(self.vertices)):
            raise PreconditionViolation("vertices must be distinct and sorted; use Graph.build")
        if len(self.monoids) != len(self.vertices):
            raise PreconditionViolation("exactly one monoid per vertex required")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise PreconditionViolation(f"loop or malformed edge {sorted(e)}")
            if not e <= vs:
                raise UnknownVertex(f"edge {sorted(e)} has an undeclared endpoint")

    @classmethod
    def build(
        cls,
        vertices: Iterable,
        edges: Iterable = (),
        monoids: Union[None, str, VertexMonoidSpec, Mapping] = None,
    ) -> "Graph":
        """Normalise loose input. ``monoids`` is one spec (or code) for every vertex, or a mapping; N by default."""
        vs = sorted({str(v) for v in vertices})
        es = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise PreconditionViolation(f"loop at {u}")
            es.add(frozenset((u, v)))
        if monoids is None:
            monoids = VertexMonoidSpec.nat()
        elif isinstance(monoids, str):
            monoids = VertexMonoidSpec.parse(monoids)
        if isinstance(monoids, VertexMonoidSpec):
            specs = tuple(monoids for _ in vs)
        else:
            m = {str(k): val for k, val in monoids.items()}
            missing = [v for v in vs if v not in m]
            if missing:
                raise PreconditionViolation(f"no monoid for vertices {missing}")
            specs = tuple(m[v] if isinstance(m[v], VertexMonoidSpec) else VertexMonoidSpec.parse(m[v]) for v in vs)
        return cls(tuple(vs), frozenset(es), specs)

    # -- lookups --------------------------------------------------------------
    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Bit ``j`` of entry ``i`` is set iff vertices i and j are adjacent."""
        masks = [0] * len(self.vertices)
        for e in self.edges:
            u, v = (self.index[x] for x in e)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def monoid(self, v: str) -> VertexMonoidSpec:
        try:
            return self.monoids[self.index[v]]
        except KeyError:
            raise UnknownVertex(v) from None

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> frozenset:
        i = self.index[v]
        mask = self.adjacency_masks[i]
        return frozenset(w for j, w in enumerate(self.vertices) if mask >> j & 1)

    def non_neighbours(self, v: str) -> list[str]:
        """Vertices other than ``v`` not adjacent to it, in id order."""
        nb = self.neighbours(v)
        return [w for w in self.vertices if w != v and w not in nb]

    @property
    def is_raam(self) -> bool:
        return all(s == VertexMonoidSpec.nat() for s in self.monoids)

    def __len__(self) -> int:
        return len(self.vertices)

    def summary(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted(sorted(e) for e in self.edges),
            "monoids": {v: s.code for v, s in zip(self.vertices, self.monoids)},
        }

    @cached_property
    def decomposition(self) -> "CoconnectedDecomposition":
        return coconnected_components(self)

    def __repr__(self) -> str:
        es = " ".join("-".join(sorted(e)) for e in sorted(sorted(e) for e in self.edges))
        return f"Graph(V={list(self.vertices)}, E=[{es}])"


@dataclass(frozen=True)
class CoconnectedDecomposition:
    components: tuple[frozenset, ...]
    induced_edge_sets: tuple[frozenset, ...]
    universal_vertices: frozenset
    i2_indices: tuple[int, ...]

    def component_of(self, v: str) -> int:
        for i, c in enumerate(self.components):
            if v in c:
                return i
        raise UnknownVertex(v)


@dataclass(frozen=True)
class BlockingPath:
    path: tuple[str, ...]
    blocked_set: frozenset


def complement(g: Graph) -> Graph:
    """The opposite graph: same vertices and monoids, complementary edge set."""
    vs = g.vertices
    es = frozenset(
        frozenset((u, v)) for i, u in enumerate(vs) for v in vs[i + 1:] if frozenset((u, v)) not in g.edges
    )
    return Graph(vs, es, g.monoids)


def induced_subgraph(g: Graph, vertices: Iterable[str]) -> Graph:
    keep = set(vertices)
    unknown = keep - set(g.vertices)
    if unknown:
        raise UnknownVertex(f"{sorted(unknown)}")
    vs = tuple(v for v in g.vertices if v in keep)
    es = frozenset(e for e in g.edges if e <= keep)
    return Graph(vs, es, tuple(g.monoid(v) for v in vs))


def _complement_components(g: Graph) -> list[list[str]]:
    seen: set = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.non_neighbours(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def coconnected_components(g: Graph) -> CoconnectedDecomposition:
    """Connected components of the complement, ordered by smallest vertex id."""
    comps = sorted(_complement_components(g), key=lambda c: c[0])
    components = tuple(frozenset(c) for c in comps)
    induced = tuple(frozenset(e for e in g.edges if e <= c) for c in components)
    universal = frozenset(next(iter(c)) for c in components if len(c) == 1)
    i2 = tuple(i for i, c in enumerate(components) if len(c) >= 2)
    return CoconnectedDecomposition(components, induced, universal, i2)


def is_coconnected(g: Graph) -> bool:
    return len(g.decomposition.components) == 1


def classify_vertices(g: Graph) -> tuple[frozenset, frozenset]:
    """Return ``(universal, isolated)`` vertex sets."""
    n = len(g.vertices)
    universal = frozenset(v for v in g.vertices if len(g.neighbours(v)) == n - 1)
    isolated = frozenset(v for v in g.vertices if not g.neighbours(v))
    return universal, isolated


def complement_bfs(g: Graph, start: str, goal) -> list[str]:
    """Shortest complement-graph path from ``start`` to the first vertex satisfying ``goal``.

    Neighbours are expanded in id order, so among shortest paths the one
    reached first by smallest-id expansion is returned. The start itself is
    included; if it already satisfies ``goal`` the path is ``[start]``.
    """
    if goal(start):
        return [start]
    parent: dict[str, Optional[str]] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.non_neighbours(u):
            if w in parent:
                continue
            parent[w] = u
            if goal(w):
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(w)
    raise PreconditionViolation(f"no complement path from {start}")


def blocking_path(g: Graph, c: Iterable[str], target: Optional[str] = None) -> BlockingPath:
    """Constructive blocking path for ``c`` ending in ``target``.

    Mirrors the existence argument for coconnected graphs: pick the least
    ``w(1)`` outside ``c`` that is non-adjacent to some member of ``c``, then
    walk (in the complement) to a non-neighbour of every member of ``c`` not
    yet blocked, then walk to ``target`` (skipped when ``target`` is None).
    """
    c = frozenset(c)
    if target is not None and target not in g.index:
        raise UnknownVertex(target)
    if not c <= set(g.vertices):
        raise UnknownVertex(f"{sorted(c - set(g.vertices))}")
    if len(g) < 2 or not is_coconnected(g):
        raise PreconditionViolation("blocking paths need a coconnected graph with >= 2 vertices")
    if not c or c == set(g.vertices):
        raise PreconditionViolation("blocked set must be a nonempty proper subset of V")

    first = next(w for w in g.vertices if w not in c and any(not g.adjacent(w, u) for u in c))
    path = [first]

    def blocks(w: str, u: str) -> bool:
        return w != u and not g.adjacent(w, u)

    for u in sorted(c):
        if any(blocks(w, u) for w in path):
            continue
        path += complement_bfs(g, path[-1], lambda w, u=u: blocks(w, u))[1:]
    if target is not None:
        path += complement_bfs(g, path[-1], lambda w: w == target)[1:]
    return BlockingPath(tuple(path), c)


def verify_blocking_path(g: Graph, bp: BlockingPath) -> bool:
    """Check both clauses of the blocking-path definition (empty C is rejected)."""
    path, c = bp.path, bp.blocked_set
    if not path or not c:
        return False
    if any(v not in g.index for v in path) or any(u not in g.index for u in c):
        return False
    if path[0] in c:
        return False
    for a, b in zip(path, path[1:]):
        if a == b or g.adjacent(a, b):
            return False
    return all(any(w != u and not g.adjacent(w, u) for w in path) for u in c)


# -- standard families -------------------------------------------------------

def path_graph(n: int, monoids=None, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph.build(vs, zip(vs, vs[1:]), monoids)


def cycle_graph(n: int, monoids=None, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph.build(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])], monoids)


def complete_graph(n: int, monoids=None, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph.build(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]], monoids)


def edgeless_graph(n: int, monoids=None, prefix: str = "v") -> Graph:
    return Graph.build([f"{prefix}{i}" for i in range(1, n + 1)], (), monoids)


def square_plus_diagonal(monoids=None) -> Graph:
    """C4 with the chord v1-v3: components {v1}, {v3}, {v2, v4}."""
    vs = ["v1", "v2", "v3", "v4"]
    return Graph.build(vs, [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1"), ("v1", "v3")], monoids)


def with_monoids(g: Graph, monoids) -> Graph:
    """Same graph, new vertex-monoid assignment."""
    return Graph.build(g.vertices, [tuple(e) for e in g.edges], monoids)
