"""Oracle and property suites run by ``graphprod verify``.

Each suite takes a list of graphs and a budget level and returns a
SuiteResult. Budget ``zero`` executes nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import oracles
from .boundary import (
    FoundationCandidate,
    Status,
    construct_orthogonal_witness,
    has_property_ar,
    is_accurate,
    is_foundation_set,
    orthogonal,
    refine,
)
from .errors import Unsupported
from .graph import Graph, blocking_path, is_coconnected, verify_blocking_path
from .monoids import Kind
from .scale import (
    dependence_certificate,
    generalised_scale,
    image_values,
    rationally_independent,
    verify_scale_axioms,
    verify_scale_uniqueness,
)
from .structure import is_core
from .traces import generator, is_invertible, traces_up_to

BUDGETS = ("zero", "small", "medium")

_SIZES = {
    "small": {"nf": 3, "lcm": (2, 4), "core": 2, "acc": (2, 3), "scale": 8, "uniq": 4, "rand": 40, "bp": 20},
    "medium": {"nf": 4, "lcm": (3, 6), "core": 3, "acc": (3, 4), "scale": 12, "uniq": 6, "rand": 200, "bp": 100},
}


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "pass": self.passed,
            "cases": self.cases,
            "failures": [str(f) for f in self.failures[:20]],
            "notes": self.notes,
        }


def _letter_model_ok(g: Graph) -> bool:
    return all(g.monoid(v).kind in (Kind.NAT, Kind.FREE, Kind.FREE_ABELIAN) for v in g.vertices)


def nf_suite(graphs: list[Graph], size: dict) -> SuiteResult:
    res = SuiteResult("nf-oracle")
    for g in graphs:
        if not _letter_model_ok(g):
            res.notes.append(f"{g!r}: skipped, units present")
            continue
        st = oracles.normal_form_oracle(g, size["nf"])
        res.cases += st.cases
        res.failures.extend(st.mismatches)
    return res


def lcm_suite(graphs: list[Graph], size: dict) -> SuiteResult:
    res = SuiteResult("lcm-oracle")
    pair, common = size["lcm"]
    for g in graphs:
        if not _letter_model_ok(g):
            res.notes.append(f"{g!r}: skipped, units present")
            continue
        st = oracles.lcm_oracle(g, pair, common)
        res.cases += st.cases
        res.failures.extend(st.mismatches)
    return res


def core_suite(graphs: list[Graph], size: dict) -> SuiteResult:
    res = SuiteResult("core")
    k = size["core"]
    for g in graphs:
        pool = traces_up_to(g, k)
        universe = traces_up_to(g, k + 1)
        for t in pool:
            res.cases += 1
            if len(g) >= 2 and is_coconnected(g) and is_core(t) != is_invertible(t):
                res.failures.append(("core differs from units", t.literal()))
            if is_core(t) != oracles.core_by_definition(t, universe):
                res.failures.append(("core differs from definition", t.literal()))
    return res


def boundary_suite(graphs: list[Graph], size: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("boundary")
    k, max_set = size["acc"]
    for g in graphs:
        pool = [t for t in traces_up_to(g, k) if not is_invertible(t)]
        ar = has_property_ar(g)
        edged_coconnected = len(g) >= 2 and is_coconnected(g) and bool(g.edges)
        for combo in oracles.accurate_subsets(pool, max_set):
            if not edged_coconnected:
                break
            res.cases += 1
            v = is_foundation_set(FoundationCandidate(g, combo))
            if v.status is not Status.NOT_FOUNDATION:
                res.failures.append(("accurate unit-free set not refuted", [t.literal() for t in combo], v.status.value))
        if ar.status.value != "HAS_AR":
            continue
        for _ in range(size["rand"] // 4):
            els = rng.sample(pool, min(len(pool), rng.randint(1, 4)))
            cand = FoundationCandidate.of(els + [generator(g, v) for v in g.vertices])
            res.cases += 1
            r = refine(cand)
            out = r.refinement
            if out is None or not is_accurate(out) or not is_foundation_set(out).is_foundation:
                res.failures.append(("refinement failed", cand.literals(), r.method))
    return res


def scale_suite(graphs: list[Graph], size: dict) -> SuiteResult:
    res = SuiteResult("scale")
    for g in graphs:
        try:
            gs = generalised_scale(g)
        except Unsupported:
            res.notes.append(f"{g!r}: unsupported assignment")
            continue
        if not gs.exists:
            res.notes.append(f"{g!r}: no scale ({gs.obstruction.value})")
            continue
        for n in image_values(gs, size["scale"]):
            res.cases += 1
            rep = verify_scale_axioms(gs, n, alternatives=2)
            if not rep.ok:
                res.failures.append(("axioms fail", n, rep.as_dict()))
            else:
                res.notes.append(f"{g!r}: axioms hold at n={n}")
        res.cases += 1
        uq = verify_scale_uniqueness(gs, size["uniq"])
        if not uq.ok:
            res.failures.append(("uniqueness fails", uq.as_dict()))
    return res


def rational_suite(size: dict, rng: random.Random) -> SuiteResult:
    """Soundness both ways: brute-force collisions imply dependence, dependence has a certificate."""
    res = SuiteResult("rational")
    import math

    for _ in range(size["rand"]):
        m = [rng.randint(2, 30) for _ in range(rng.randint(1, 4))]
        res.cases += 1
        indep = rationally_independent(m)
        if not oracles.rationally_independent_bruteforce(m, 6) and indep:
            res.failures.append(("collision but independent", m))
        if not indep:
            cert = dependence_certificate(m)
            a, b = cert
            if a == b or math.prod(x**k for x, k in zip(m, a)) != math.prod(x**k for x, k in zip(m, b)):
                res.failures.append(("bad certificate", m, cert))
    return res


def random_coconnected_graph(rng: random.Random, max_vertices: int = 10) -> Graph:
    while True:
        n = rng.randint(2, max_vertices)
        vs = [f"v{i}" for i in range(1, n + 1)]
        p = rng.random()
        edges = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:] if rng.random() < p]
        g = Graph.build(vs, edges)
        if is_coconnected(g):
            return g


def blocking_suite(size: dict, rng: random.Random) -> SuiteResult:
    res = SuiteResult("blocking")
    for _ in range(size["bp"]):
        g = random_coconnected_graph(rng)
        vs = list(g.vertices)
        c = rng.sample(vs, rng.randint(1, len(vs) - 1))
        target = rng.choice(vs)
        res.cases += 1
        bp = blocking_path(g, c, target)
        if not verify_blocking_path(g, bp) or bp.path[-1] != target:
            res.failures.append(("bad blocking path", sorted(c), target, bp.path))
        f = FoundationCandidate.of([generator(g, v) for v in c])
        w = construct_orthogonal_witness(f)
        if w is not None and not all(orthogonal(w, x) for x in f):
            res.failures.append(("witness meets the set", f.literals(), w.literal()))
    return res


SUITES: dict[str, Callable] = {
    "nf-oracle": lambda gs, sz, rng: nf_suite(gs, sz),
    "lcm-oracle": lambda gs, sz, rng: lcm_suite(gs, sz),
    "core": lambda gs, sz, rng: core_suite(gs, sz),
    "boundary": lambda gs, sz, rng: boundary_suite(gs, sz, rng),
    "scale": lambda gs, sz, rng: scale_suite(gs, sz),
    "rational": lambda gs, sz, rng: rational_suite(sz, rng),
    "blocking": lambda gs, sz, rng: blocking_suite(sz, rng),
}


def run_suites(names: list[str], graphs: list[Graph], budget: str, seed: Optional[int] = 0) -> list[SuiteResult]:
    if "all" in names:
        names = list(SUITES)
    if budget == "zero":
        return [SuiteResult(n, notes=["budget zero: nothing executed"]) for n in names]
    size = _SIZES[budget]
    rng = random.Random(seed)
    return [SUITES[n](graphs, size, rng) for n in names]
