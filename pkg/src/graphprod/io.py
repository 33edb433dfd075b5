"""Graph files, trace literals and foundation-set files.

Graph file (JSON)::

    {"vertices": [{"id": "v1", "monoid": "N"}, ...], "edges": [["v1", "v2"], ...]}

Trace literal: space-separated syllables ``vertex[:element]``; an omitted
element is the default generator, so ``v1`` means ``v1:1`` over N.
Foundation-set file: a JSON list of trace literals.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import ParseError, PreconditionViolation, UnknownVertex
from .graph import Graph
from .monoids import VertexMonoidSpec
from .traces import Syllable, Trace, from_syllables

BUILTIN_GRAPHS = ("P3", "P4", "C4", "K3", "G5")


def graph_from_dict(doc) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("graph document must be an object with a 'vertices' list")
    ids, monoids = [], {}
    for entry in doc["vertices"]:
        if isinstance(entry, str):
            vid, code = entry, "N"
        elif isinstance(entry, dict) and "id" in entry:
            vid, code = str(entry["id"]), entry.get("monoid", "N")
        else:
            raise ParseError(f"bad vertex entry {entry!r}")
        if vid in monoids:
            raise ParseError(f"duplicate vertex {vid!r}")
        ids.append(vid)
        monoids[vid] = VertexMonoidSpec.parse(code)
    edges, seen = [], set()
    for e in doc.get("edges", []):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise ParseError(f"bad edge {e!r}")
        u, v = str(e[0]), str(e[1])
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {sorted(key)}")
        if u not in monoids or v not in monoids:
            raise ParseError(f"edge {e!r} names an undeclared vertex")
        seen.add(key)
        edges.append((u, v))
    try:
        return Graph.build(ids, edges, monoids)
    except (PreconditionViolation, UnknownVertex) as exc:
        raise ParseError(str(exc)) from None


def graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": [{"id": v, "monoid": s.code} for v, s in zip(g.vertices, g.monoids)],
        "edges": sorted(sorted(e) for e in g.edges),
    }


def loads_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_dict(doc)


def builtin_graph(name: str) -> Graph:
    path = resources.files("graphprod") / "data" / f"{name}.json"
    return loads_graph(path.read_text())


def load_graph(source: Union[str, Path]) -> Graph:
    """Load a graph file, or a built-in graph by name (P3, P4, C4, K3, G5)."""
    source = str(source)
    if source in BUILTIN_GRAPHS:
        return builtin_graph(source)
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    return loads_graph(text)


def parse_trace(g: Graph, literal: str) -> Trace:
    syls = []
    for tok in literal.split():
        vertex, sep, elem = tok.partition(":")
        if vertex not in g.index:
            raise ParseError(f"unknown vertex {vertex!r} in literal {literal!r}")
        spec = g.monoid(vertex)
        element = spec.parse_element(elem) if sep else spec.generator()
        syls.append(Syllable(vertex, element))
    return from_syllables(g, syls)


def format_trace(t: Trace) -> str:
    return t.literal()


def loads_trace_set(g: Graph, text: str) -> list[Trace]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, list) or not all(isinstance(x, str) for x in doc):
        raise ParseError("foundation-set file must be a JSON list of trace literals")
    out = []
    for lit in doc:
        t = parse_trace(g, lit)
        if t not in out:
            out.append(t)
    if not out:
        raise ParseError("foundation-set file is empty")
    return out


def load_trace_set(g: Graph, source: Union[str, Path]) -> list[Trace]:
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    return loads_trace_set(g, text)


def dumps_trace_set(traces) -> str:
    return json.dumps([t.literal() for t in traces])
