import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphprod import boundary as b
from graphprod import io
from graphprod.errors import PreconditionViolation, WitnessFailure
from graphprod.graph import Graph, edgeless_graph, with_monoids
from graphprod.traces import generator, identity, is_invertible, left_divides, traces_up_to

P3, P4, C4, K3, G5 = (io.builtin_graph(n) for n in io.BUILTIN_GRAPHS)


def t(g, literal):
    return io.parse_trace(g, literal)


def cand(g, *literals):
    return b.FoundationCandidate.of([t(g, x) for x in literals], g)


def gens(g):
    return b.FoundationCandidate.of([generator(g, v) for v in g.vertices], g)


def no_escape(f, max_atoms):
    """Bounded oracle: nothing up to ``max_atoms`` is orthogonal to every member."""
    return not any(all(b.orthogonal(w, x) for x in f) for w in traces_up_to(f.graph, max_atoms))


# -- candidates and accuracy -------------------------------------------------------

def test_candidate_construction():
    f = b.FoundationCandidate.of([t(P4, "v1"), t(P4, "v1"), t(P4, "v2")])
    assert len(f) == 2 and f.literals() == ["v1:1", "v2:1"]
    with pytest.raises(PreconditionViolation):
        b.FoundationCandidate.of([])
    with pytest.raises(PreconditionViolation):
        b.FoundationCandidate.of([t(P4, "v1"), t(C4, "v1")])


def test_accuracy_examples():
    assert b.is_accurate(cand(P4, "v1", "v3"))
    assert not b.is_accurate(cand(P4, "v1", "v2"))
    assert b.is_accurate(cand(P4, "v2 v4"))


def test_default_bound():
    assert b.default_bound(cand(P4, "v1 v3", "v2")) == 3 + 4 + 2


# -- witnesses ---------------------------------------------------------------------

def test_orthogonal_witness_examples():
    assert b.construct_orthogonal_witness(cand(P4, "v2 v3")) == t(P4, "v4")
    assert b.construct_orthogonal_witness(gens(P4)) is None
    assert b.construct_orthogonal_witness(cand(P4, "v1 v2")) == t(P4, "v3")


def test_witness_preconditions():
    with pytest.raises(PreconditionViolation):
        b.construct_orthogonal_witness(cand(C4, "v1"))
    with pytest.raises(PreconditionViolation):
        b.construct_orthogonal_witness(b.FoundationCandidate.of([identity(P4)]))


def test_verdict_rejects_bad_witness():
    with pytest.raises(WitnessFailure):
        b.FoundationVerdict(b.Status.NOT_FOUNDATION, cand(P4, "v1"), witness=t(P4, "v2"))
    with pytest.raises(WitnessFailure):
        b.FoundationVerdict(b.Status.NOT_FOUNDATION, cand(P4, "v1"))


# -- foundation decisions ----------------------------------------------------------

def test_foundation_examples():
    assert b.is_foundation_set(gens(C4)).is_foundation
    v = b.is_foundation_set(cand(C4, "v1 v2"))
    assert v.status is b.Status.NOT_FOUNDATION and v.witness == t(C4, "v3")
    assert b.is_foundation_set(gens(P4)).is_foundation
    assert b.is_foundation_set(b.FoundationCandidate.of([identity(P4)])).is_foundation
    assert no_escape(gens(P4), 4)


def test_foundation_with_universal_vertex():
    # v4 universal; the generators of the edged component {v1, v2, v3} suffice
    g = Graph.build(["v1", "v2", "v3", "v4"], [("v1", "v4"), ("v2", "v3"), ("v2", "v4"), ("v3", "v4")])
    f = cand(g, "v1", "v2", "v3")
    assert b.is_foundation_set(f).is_foundation
    assert no_escape(f, 4)


def test_unknown_reports_searched_bound():
    # N^2 vertices fall outside the exact criteria; give the search nothing to work with
    g = with_monoids(Graph.build(["a", "b", "c"], [("a", "b")]), "N^2")
    f = b.FoundationCandidate.of([t(g, "a:1,0 c:1,0")], g)
    v = b.is_foundation_set(f, bound=1, budget=1)
    assert v.status in (b.Status.UNKNOWN, b.Status.NOT_FOUNDATION)
    if v.status is b.Status.UNKNOWN:
        assert v.bound is not None and v.bound <= 1
        assert v.as_dict()["bound"] == v.bound
    with pytest.raises(PreconditionViolation):
        b.is_foundation_set(f, bound=0)


FREE_SUMS = [C4, K3, P3, G5, edgeless_graph(3), with_monoids(C4, "F2"), with_monoids(P3, {"v1": "F2", "v2": "Z", "v3": "N"})]
FREE_POOLS = [[x for x in traces_up_to(g, 2) if not is_invertible(x)] for g in FREE_SUMS]


@settings(max_examples=80)
@given(st.integers(0, len(FREE_SUMS) - 1), st.data())
def test_exact_criterion_agrees_with_bounded_search(i, data):
    g, pool = FREE_SUMS[i], FREE_POOLS[i]
    els = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4, unique=True))
    f = b.FoundationCandidate.of(els, g)
    v = b.is_foundation_set(f)
    assert v.status is not b.Status.UNKNOWN
    if v.is_foundation:
        assert no_escape(f, 3)
    else:
        assert all(b.orthogonal(v.witness, x) for x in f)


# -- refinements -------------------------------------------------------------------

def test_refinement_of_c4_example():
    f = cand(C4, "v1", "v3", "v2:2")
    assert b.is_foundation_set(f).is_foundation
    r = b.refine(f)
    out = r.refinement
    assert r.method == "complete prefix codes"
    assert b.is_accurate(out) and b.is_foundation_set(out).is_foundation
    assert all(any(left_divides(x, y) for x in f) for y in out)
    assert sorted(out.literals()) == sorted(
        ["v1:1 v4:1", "v1:1 v2:1 v4:1", "v1:1 v2:2", "v3:1 v4:1", "v2:1 v3:1 v4:1", "v2:2 v3:1"]
    )


def test_recorded_four_element_completion_is_not_a_foundation_set():
    f = cand(C4, "v1 v2:2", "v1 v4", "v3 v2:2", "v3 v4")
    assert all(b.orthogonal(t(C4, "v2 v4"), x) for x in f)
    assert not b.is_foundation_set(f).is_foundation


def test_refinement_shortcuts():
    f = cand(C4, "v1", "v2")
    assert not b.is_foundation_set(f).is_foundation
    with pytest.raises(PreconditionViolation):
        b.refine(f)
    f = cand(C4, "v1 v2", "v1 v4", "v3 v2", "v3 v4")
    assert b.refine(f).refinement == f
    assert b.refine(b.FoundationCandidate.of([identity(C4), t(C4, "v1")])).method == "invertible element"


def test_p4_generators_have_no_refinement():
    r = b.refine(gens(P4), bound=6)
    assert r.refinement is None
    assert b.accurate_refinement(gens(P4), bound=6) is None


def test_greedy_refinement_on_free_abelian_vertices():
    g = with_monoids(Graph.build(["a", "b"], []), "N^2")
    f = b.FoundationCandidate.of([t(g, "a:1,0"), t(g, "a:0,1"), t(g, "b:1,0"), t(g, "b:0,1")], g)
    v = b.is_foundation_set(f)
    assert v.is_foundation
    r = b.refine(f, bound=3, budget=2_000)
    assert r.refinement is not None or "atom length" in r.method
    if r.refinement is not None:
        assert b.is_accurate(r.refinement)
        assert b.is_foundation_set(r.refinement).is_foundation


@settings(max_examples=60)
@given(st.integers(0, len(FREE_SUMS) - 1), st.data())
def test_refinements_are_accurate_foundation_refinements(i, data):
    g, pool = FREE_SUMS[i], FREE_POOLS[i]
    els = data.draw(st.lists(st.sampled_from(pool), min_size=0, max_size=3, unique=True))
    f = b.FoundationCandidate.of(els + [a for a in (generator(g, v) for v in g.vertices) if not is_invertible(a)], g)
    if not b.is_foundation_set(f).is_foundation:
        return
    out = b.accurate_refinement(f)
    assert out is not None
    assert b.is_accurate(out)
    assert b.is_foundation_set(out).is_foundation
    assert all(any(left_divides(x, y) for x in f) for y in out)


# -- property (AR) -----------------------------------------------------------------

def test_ar_examples():
    v = b.has_property_ar(P4)
    assert v.status is b.ArStatus.LACKS_AR and v.method is b.ArMethod.CHARACTERIZATION
    assert sorted(v.counterexample.literals()) == ["v1:1", "v2:1", "v3:1", "v4:1"]
    for g in (C4, K3, P3, G5):
        assert b.has_property_ar(g).status is b.ArStatus.HAS_AR


def test_ar_general_assignments():
    assert b.has_property_ar(with_monoids(P4, "F2")).status is b.ArStatus.LACKS_AR
    assert b.has_property_ar(with_monoids(P4, "Z")).status is b.ArStatus.HAS_AR
    assert b.has_property_ar(with_monoids(C4, "F3")).status is b.ArStatus.HAS_AR
    assert b.has_property_ar(with_monoids(C4, "N^2")).status is b.ArStatus.UNKNOWN
    d = b.has_property_ar(P4).as_dict()
    assert d["status"] == "LACKS_AR" and len(d["counterexample"]) == 4


def test_ar_by_search_agrees_on_small_graphs():
    assert b.has_property_ar_search(P4, 1, 4).status is b.ArStatus.LACKS_AR
    assert b.has_property_ar_search(C4, 1, 4).status is b.ArStatus.HAS_AR
