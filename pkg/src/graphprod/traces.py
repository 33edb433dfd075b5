"""Elements of a graph product in canonical normal form.

A ``Trace`` stores a reduced expression (a sequence of syllables, each a
non-identity element of one vertex monoid) in the lexicographically least
shuffle-equivalent order, comparing vertices by id. Two traces are equal
exactly when their stored syllable sequences are equal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _kernels
from .errors import BadComponent, GraphMismatch, NotADivisor, SpecMismatch, TraceOverflow, UnknownVertex
from .graph import Graph
from .monoids import (
    VertexElement,
    v_divides,
    v_inverse,
    v_is_invertible,
    v_lcm,
    v_left_quotient,
    v_multiply,
)

MAX_SYLLABLES = 512


@dataclass(frozen=True)
class Syllable:
    vertex: str
    element: VertexElement

    def literal(self) -> str:
        return f"{self.vertex}:{self.element.text()}"


class Trace:
    __slots__ = ("graph", "syllables", "_hash")

    def __init__(self, graph: Graph, syllables: tuple):
        # Callers guarantee canonical form; use the module functions to build traces.
        self.graph = graph
        self.syllables = syllables
        self._hash = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return self.syllables == other.syllables and (self.graph is other.graph or self.graph == other.graph)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "Trace") -> "Trace":
        return multiply(self, other)

    def literal(self) -> str:
        return " ".join(s.literal() for s in self.syllables)

    def __str__(self) -> str:
        return self.literal() or "1"

    def __repr__(self) -> str:
        return f"Trace({self.literal()!r})"

    @property
    def support(self) -> frozenset:
        return frozenset(s.vertex for s in self.syllables)

    def atom_length(self) -> int:
        return sum(s.element.size() for s in self.syllables)

    def sort_key(self):
        idx = self.graph.index
        return (self.atom_length(), len(self.syllables), tuple((idx[s.vertex], s.element.payload) for s in self.syllables))


@dataclass(frozen=True)
class LcmResult:
    lcm: Optional[Trace]

    @property
    def exists(self) -> bool:
        return self.lcm is not None

    @property
    def orthogonal(self) -> bool:
        return self.lcm is None

    def __str__(self) -> str:
        return "ORTHOGONAL" if self.lcm is None else f"EXISTS({self.lcm})"


# -- normalisation ------------------------------------------------------------

def _append(g: Graph, syls: list, idxs: list, syl: Syllable) -> None:
    """Right-multiply the reduced expression in ``syls`` by one syllable, in place."""
    v = g.index[syl.vertex]
    j = _kernels.merge_target(idxs, g.adjacency_masks, v)
    if j < 0:
        syls.append(syl)
        idxs.append(v)
        if len(syls) > MAX_SYLLABLES:
            raise TraceOverflow(f"trace exceeds {MAX_SYLLABLES} syllables")
        return
    merged = v_multiply(syls[j].element, syl.element)
    if merged.is_identity:
        # Deleting a syllable that commutes with everything after it keeps the
        # expression reduced.
        del syls[j]
        del idxs[j]
    else:
        syls[j] = Syllable(syl.vertex, merged)


def _canonical(g: Graph, syls: list, idxs: list) -> Trace:
    order = _kernels.lex_order(idxs, g.adjacency_masks)
    return Trace(g, tuple(syls[p] for p in order))


def _check_syllable(g: Graph, syl: Syllable) -> None:
    if syl.vertex not in g.index:
        raise UnknownVertex(syl.vertex)
    if syl.element.spec != g.monoid(syl.vertex):
        raise SpecMismatch(f"{syl.vertex} carries {g.monoid(syl.vertex)}, got {syl.element.spec}")


def from_syllables(g: Graph, syllables: Iterable[Syllable], check: bool = True) -> Trace:
    syls: list = []
    idxs: list = []
    for syl in syllables:
        if check:
            _check_syllable(g, syl)
        if syl.element.is_identity:
            continue
        _append(g, syls, idxs, syl)
    return _canonical(g, syls, idxs)


def identity(g: Graph) -> Trace:
    return Trace(g, ())


def _coerce(g: Graph, vertex: str, element) -> Syllable:
    vertex = str(vertex)
    if vertex not in g.index:
        raise UnknownVertex(vertex)
    spec = g.monoid(vertex)
    if element is None:
        element = spec.generator()
    elif not isinstance(element, VertexElement):
        element = spec.element(element)
    return Syllable(vertex, element)


def from_word(g: Graph, word: Iterable) -> Trace:
    """Normal form of a product of ``(vertex, element)`` pairs.

    ``element`` may be a ``VertexElement``, a raw payload, or ``None`` for the
    default generator. A bare vertex id stands for ``(vertex, None)``.
    """
    syls = []
    for item in word:
        if isinstance(item, str):
            syls.append(_coerce(g, item, None))
        else:
            syls.append(_coerce(g, *item))
    return from_syllables(g, syls)


def generator(g: Graph, vertex: str) -> Trace:
    return from_word(g, [vertex])


def _same_graph(s: Trace, t: Trace) -> Graph:
    if s.graph is not t.graph and s.graph != t.graph:
        raise GraphMismatch("traces live in different graph products")
    return s.graph


def multiply(s: Trace, t: Trace) -> Trace:
    g = _same_graph(s, t)
    if not t.syllables:
        return s
    if not s.syllables:
        return t
    syls = list(s.syllables)
    idxs = [g.index[x.vertex] for x in syls]
    for syl in t.syllables:
        _append(g, syls, idxs, syl)
    return _canonical(g, syls, idxs)


def product(g: Graph, traces: Iterable[Trace]) -> Trace:
    out = identity(g)
    for t in traces:
        out = multiply(out, t)
    return out


def length(s: Trace) -> int:
    return len(s.syllables)


def is_invertible(s: Trace) -> bool:
    return all(v_is_invertible(x.element) for x in s.syllables)


# -- front / back accessibility ------------------------------------------------

def front_accessible(s: Trace) -> list[int]:
    """Indices of syllables that can be shuffled to the front."""
    g = s.graph
    out = []
    for j, syl in enumerate(s.syllables):
        mv = g.adjacency_masks[g.index[syl.vertex]]
        if all(mv >> g.index[p.vertex] & 1 for p in s.syllables[:j]):
            out.append(j)
    return out


def back_accessible(s: Trace) -> list[int]:
    """Indices of syllables that can be shuffled to the end."""
    g = s.graph
    out = []
    for j, syl in enumerate(s.syllables):
        mv = g.adjacency_masks[g.index[syl.vertex]]
        if all(mv >> g.index[p.vertex] & 1 for p in s.syllables[j + 1:]):
            out.append(j)
    return out


def _remove(s: Trace, j: int) -> Trace:
    return from_syllables(s.graph, s.syllables[:j] + s.syllables[j + 1:], check=False)


def _drop_back_units(s: Trace) -> Trace:
    """Strip invertible syllables that shuffle to the end; the right ideal is unchanged."""
    while True:
        j = next((i for i in back_accessible(s) if v_is_invertible(s.syllables[i].element)), None)
        if j is None:
            return s
        s = _remove(s, j)


def _split_front(s: Trace, rng: Optional[random.Random]) -> tuple[Syllable, Trace]:
    if rng is None:
        # The first canonical syllable is always front-accessible and the
        # remaining tuple is already canonical.
        return s.syllables[0], Trace(s.graph, s.syllables[1:])
    j = rng.choice(front_accessible(s))
    return s.syllables[j], _remove(s, j)


def _syllable_quotient(a: Syllable, t: Trace) -> Optional[Trace]:
    """``a \\ t`` if the one-syllable element ``a`` left-divides ``t``, else None."""
    g = t.graph
    x = a.element
    if v_is_invertible(x):
        return from_syllables(g, (Syllable(a.vertex, v_inverse(x)),) + t.syllables, check=False)
    mv = g.adjacency_masks[g.index[a.vertex]]
    for j, syl in enumerate(t.syllables):
        if syl.vertex == a.vertex:
            if not v_divides(x, syl.element):
                return None
            q = Syllable(a.vertex, v_left_quotient(x, syl.element))
            return from_syllables(g, t.syllables[:j] + (q,) + t.syllables[j + 1:], check=False)
        if not mv >> g.index[syl.vertex] & 1:
            return None
    return None


def _quotient(s: Trace, t: Trace) -> Optional[Trace]:
    r = t
    for a in s.syllables:
        r = _syllable_quotient(a, r)
        if r is None:
            return None
    return r


def left_divides(s: Trace, t: Trace) -> bool:
    _same_graph(s, t)
    return _quotient(s, t) is not None


def left_quotient(s: Trace, t: Trace) -> Trace:
    """The unique ``r`` with ``s * r == t``."""
    _same_graph(s, t)
    r = _quotient(s, t)
    if r is None:
        raise NotADivisor(f"{s} does not left-divide {t}")
    return r


# -- least common right multiples ---------------------------------------------

class _Lcm:
    """Peeling recursion for right LCMs, with an optional random front choice."""

    def __init__(self, g: Graph, rng: Optional[random.Random] = None, max_depth: int = 4 * MAX_SYLLABLES):
        self.g = g
        self.rng = rng
        self.depth = 0
        self.max_depth = max_depth

    def _enter(self):
        self.depth += 1
        if self.depth > self.max_depth:
            raise TraceOverflow("lcm recursion exceeded its depth cap")

    def syllable(self, a: Syllable, t: Trace) -> Optional[Trace]:
        """lcm(a, t) for a single syllable ``a``, up to a right unit."""
        if not t.syllables:
            return Trace(self.g, (a,))
        if v_is_invertible(a.element):
            return t
        self._enter()
        try:
            g = self.g
            va = g.index[a.vertex]
            mv = g.adjacency_masks[va]
            cur = _drop_back_units(t)
            # everything that commutes with a passes through unchanged
            prefix: list[Syllable] = []
            while True:
                fa = front_accessible(cur)
                j = next((i for i in fa if mv >> g.index[cur.syllables[i].vertex] & 1), None)
                if j is None:
                    break
                prefix.append(cur.syllables[j])
                cur = _remove(cur, j)
            if not cur.syllables:
                return from_syllables(g, prefix + [a], check=False)
            # what is left must open with a syllable at a's vertex; a blocked unit
            # or any other vertex up front is not adjacent to a's vertex
            fa = front_accessible(cur)
            j = next((i for i in fa if cur.syllables[i].vertex == a.vertex), None)
            if j is None:
                return None
            d = cur.syllables[j]
            z = v_lcm(a.element, d.element)
            if z.orthogonal:
                return None
            q = v_left_quotient(d.element, z.lcm)
            rest = _remove(cur, j)
            if v_is_invertible(q):
                inner = rest
            else:
                inner = self.syllable(Syllable(a.vertex, q), rest)
                if inner is None:
                    return None
            return from_syllables(g, tuple(prefix) + (d,) + inner.syllables, check=False)
        finally:
            self.depth -= 1

    def traces(self, s: Trace, t: Trace) -> Optional[Trace]:
        if not s.syllables:
            return t
        if not t.syllables:
            return s
        self._enter()
        try:
            a, rest = _split_front(s, self.rng)
            big = self.syllable(a, t)
            if big is None:
                return None
            r = _syllable_quotient(a, big)
            m = self.traces(rest, r)
            return None if m is None else multiply(Trace(self.g, (a,)), m)
        finally:
            self.depth -= 1


def right_lcm(s: Trace, t: Trace, rng: Optional[random.Random] = None) -> LcmResult:
    """A least common right multiple of ``s`` and ``t``, or an orthogonality verdict.

    With ``rng`` the front syllable peeled at each step is chosen at random
    among the front-accessible ones instead of canonically.
    """
    g = _same_graph(s, t)
    return LcmResult(_Lcm(g, rng).traces(s, t))


def is_orthogonal(s: Trace, t: Trace) -> bool:
    return right_lcm(s, t).orthogonal


# -- direct-sum projections ----------------------------------------------------

def project(s: Trace, component_index: int) -> Trace:
    """The part of ``s`` supported on one coconnected component (same ambient graph)."""
    comps = s.graph.decomposition.components
    if not 0 <= component_index < len(comps):
        raise BadComponent(f"component {component_index} out of range 0..{len(comps) - 1}")
    keep = comps[component_index]
    return from_syllables(s.graph, [x for x in s.syllables if x.vertex in keep], check=False)


def restrict(s: Trace, vertices: Iterable[str]) -> Trace:
    keep = set(vertices)
    return from_syllables(s.graph, [x for x in s.syllables if x.vertex in keep], check=False)


def lift(t: Trace, g: Graph) -> Trace:
    """Re-home a trace of an induced subgraph into the ambient graph ``g``."""
    return from_syllables(g, t.syllables)


def rehome(t: Trace, sub: Graph) -> Trace:
    """Move a trace supported inside ``sub`` into the subgraph's product."""
    return from_syllables(sub, t.syllables)


# -- enumeration ---------------------------------------------------------------

def atoms(g: Graph, vertices: Optional[Sequence[str]] = None) -> list[Trace]:
    vs = g.vertices if vertices is None else vertices
    return [Trace(g, (Syllable(v, a),)) for v in vs for a in g.monoid(v).atoms()]


def traces_up_to(g: Graph, max_atoms: int, vertices: Optional[Sequence[str]] = None) -> list[Trace]:
    """Every trace that is a product of at most ``max_atoms`` atoms.

    Ordered by ``Trace.sort_key``; the identity comes first.
    """
    gens = atoms(g, vertices)
    seen = {identity(g)}
    frontier = [identity(g)]
    for _ in range(max_atoms):
        nxt = []
        for t in frontier:
            for a in gens:
                u = multiply(t, a)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=Trace.sort_key)
