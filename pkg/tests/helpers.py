"""Shared fixtures-by-function for the test modules."""

from __future__ import annotations

from graphprod.graph import Graph
from graphprod.oracles import optional_graph_atlas


def from_networkx(h, monoids=None) -> Graph:
    names = {node: f"v{i + 1}" for i, node in enumerate(sorted(h.nodes))}
    return Graph.build([names[n] for n in sorted(h.nodes)], [(names[a], names[b]) for a, b in h.edges], monoids)


def atlas(n: int, monoids=None) -> list[Graph]:
    hs = optional_graph_atlas(n)
    if hs is None:
        raise RuntimeError("networkx is required for atlas-based tests")
    return [from_networkx(h, monoids) for h in hs]


def atlas_up_to(n: int, monoids=None) -> list[Graph]:
    return [g for k in range(1, n + 1) for g in atlas(k, monoids)]


# criterion number -> line, echoed again in the terminal summary
REPORT_LINES: dict[int, str] = {}


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'}"
    line += f" ({detail})" if detail else ""
    REPORT_LINES[number] = line
    print(line, flush=True)
