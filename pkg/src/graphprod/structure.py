"""Units, core, core irreducibles and the structural predicates of a graph product.

Everything here is evaluated from the coconnected decomposition and the
per-vertex flags: a graph product is the direct sum of the products over its
coconnected components, a singleton component is a universal vertex, and on a
component with at least two vertices the core collapses to the units.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import FactorizationFailure, NotFactorable
from .graph import Graph
from .monoids import monoid_flags, v_in_ci_prime, v_is_core, v_is_invertible
from .traces import Trace, _quotient, _same_graph, from_syllables, is_invertible, multiply, restrict


def _universal(g: Graph) -> frozenset:
    return g.decomposition.universal_vertices


def _i2_components(g: Graph) -> list[frozenset]:
    d = g.decomposition
    return [d.components[i] for i in d.i2_indices]


def is_core(s: Trace) -> bool:
    vu = _universal(s.graph)
    for syl in s.syllables:
        if syl.vertex in vu:
            if not v_is_core(syl.element):
                return False
        elif not v_is_invertible(syl.element):
            return False
    return True


def is_core_irreducible(s: Trace) -> bool:
    if is_invertible(s):
        return False
    vu = _universal(s.graph)
    return all(v_in_ci_prime(x.element) for x in s.syllables if x.vertex in vu)


def _vertex_core_related(a, b) -> bool:
    # Catalogue cores are whole (S/~ is a point) or trivial (~ is equality).
    if monoid_flags(a.spec).core_is_whole:
        return True
    return a == b


def core_related(s: Trace, t: Trace) -> bool:
    g = _same_graph(s, t)
    for v in _universal(g):
        sv, tv = restrict(s, [v]), restrict(t, [v])
        identity = g.monoid(v).identity()
        a = sv.syllables[0].element if sv.syllables else identity
        b = tv.syllables[0].element if tv.syllables else identity
        if not _vertex_core_related(a, b):
            return False
    for comp in _i2_components(g):
        si, ti = restrict(s, comp), restrict(t, comp)
        q = _quotient(ti, si)
        if q is None or not is_invertible(q):
            return False
    return True


def is_core_factorable(g: Graph) -> bool:
    return all(monoid_flags(g.monoid(v)).core_factorable for v in _universal(g))


def core_factorize(s: Trace) -> tuple[Trace, Trace]:
    """Split ``s`` as ``ci_part * core_part`` with ci_part in S_ci^1 and core_part in S_c."""
    g = s.graph
    if not is_core_factorable(g):
        raise NotFactorable("some universal vertex monoid is not core factorable")
    vu = _universal(g)
    ci, core = [], []
    for v in sorted(vu):
        for syl in restrict(s, [v]).syllables:
            (core if v_is_core(syl.element) else ci).append(syl)
    for comp in _i2_components(g):
        part = restrict(s, comp)
        (core if is_invertible(part) else ci).extend(part.syllables)
    ci_part = from_syllables(g, ci, check=False)
    core_part = from_syllables(g, core, check=False)
    if multiply(ci_part, core_part) != s:
        raise FactorizationFailure(f"{ci_part} * {core_part} != {s}")
    if not is_core(core_part) or not (not ci_part.syllables or is_core_irreducible(ci_part)):
        raise FactorizationFailure(f"bad factor types for {s}")
    return ci_part, core_part


@dataclass(frozen=True)
class StructureReport:
    units_description: list
    core_description: list
    ci_description: list
    core_factorable: bool
    ci_cap_closed: bool
    alpha_faithful: bool
    alpha_almost_free: bool
    finite_propagation_sufficient: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _almost_free(g: Graph) -> bool:
    d = g.decomposition
    vu = sorted(d.universal_vertices)
    rest = [v for v in g.vertices if v not in d.universal_vertices]
    flags = {v: monoid_flags(g.monoid(v)) for v in g.vertices}

    core_trivial = {v: not flags[v].core_is_whole for v in vu}
    whole_core = {v: flags[v].core_is_whole for v in vu}

    # (a) trivial core everywhere on V_u, trivial units off V_u
    if all(core_trivial.values()) and all(flags[w].units_trivial for w in rest):
        return True
    # (b) one universal vertex carries the core, everything off V_u is a group
    nontrivial = [v for v in vu if not core_trivial[v]]
    if (
        len(nontrivial) == 1
        and flags[nontrivial[0]].alpha_almost_free
        and all(whole_core[w] for w in vu if w != nontrivial[0])
        and all(flags[w].is_group for w in rest)
    ):
        return True
    # (c) one I_2 component carries nontrivial units, the others are groups
    comps = _i2_components(g)
    with_units = [c for c in comps if not all(flags[w].units_trivial for w in c)]
    if len(with_units) == 1 and all(whole_core[w] for w in vu):
        c = with_units[0]
        others_groups = all(all(flags[w].is_group for w in o) for o in comps if o is not c)
        if others_groups and _component_alpha_almost_free(g, c):
            return True
    # S is left reversible throughout: S/~ is a point.
    if not comps and all(whole_core.values()):
        return True
    return False


def _component_alpha_almost_free(g: Graph, comp: frozenset) -> bool:
    """Almost freeness of the unit action on a coconnected component (|comp| >= 2).

    Conditions: every isolated vertex of the component has an almost free
    unit action on S_v/S_v^*, and each connected component (in the graph
    induced on ``comp``) with two or more vertices is all groups or all
    trivial units.
    """
    from .graph import induced_subgraph

    sub = induced_subgraph(g, comp)
    flags = {v: monoid_flags(g.monoid(v)) for v in comp}
    for v in comp:
        if not sub.neighbours(v) and not flags[v].alpha_star_almost_free:
            return False
    seen: set = set()
    for start in sorted(comp):
        if start in seen:
            continue
        stack, part = [start], set()
        while stack:
            u = stack.pop()
            if u in part:
                continue
            part.add(u)
            stack.extend(sub.neighbours(u) - part)
        seen |= part
        if len(part) >= 2:
            if not (all(flags[u].is_group for u in part) or all(flags[u].units_trivial for u in part)):
                return False
    return True


def _describe(g: Graph) -> tuple[list, list, list]:
    d = g.decomposition
    units, core, ci = [], [], []
    for i, comp in enumerate(d.components):
        vs = sorted(comp)
        if len(comp) == 1:
            v = vs[0]
            spec = g.monoid(v)
            f = monoid_flags(spec)
            units.append({"component": vs, "part": f"({spec.code})^*", "trivial": f.units_trivial})
            core.append({"component": vs, "part": spec.code if f.core_is_whole else "{1}"})
            ci.append({"component": vs, "part": f"({spec.code})^*" if f.core_is_whole else spec.code})
        else:
            trivial = all(monoid_flags(g.monoid(v)).units_trivial for v in vs)
            units.append({"component": vs, "part": "{1}" if trivial else "graph product of vertex unit groups", "trivial": trivial})
            core.append({"component": vs, "part": "{1}" if trivial else "graph product of vertex unit groups"})
            ci.append({"component": vs, "part": "whole component product"})
    return units, core, ci


def structure_report(g: Graph) -> StructureReport:
    d = g.decomposition
    vu = d.universal_vertices
    flags = {v: monoid_flags(g.monoid(v)) for v in g.vertices}
    core_factorable = all(flags[v].core_factorable for v in vu)
    ci_cap_closed = all(flags[v].ci_cap_closed for v in vu)
    alpha_faithful = all(flags[v].alpha_faithful for v in vu) and all(
        any(not flags[w].is_group for w in comp) for comp in _i2_components(g)
    )
    finite_prop = all(flags[v].finite_propagation for v in vu) and all(
        flags[w].units_finite for w in g.vertices if w not in vu
    )
    units, core, ci = _describe(g)
    return StructureReport(
        units_description=units,
        core_description=core,
        ci_description=ci,
        core_factorable=core_factorable,
        ci_cap_closed=ci_cap_closed,
        alpha_faithful=alpha_faithful,
        alpha_almost_free=_almost_free(g),
        finite_propagation_sufficient=finite_prop,
    )
