import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphprod import io, oracles
from graphprod.graph import with_monoids
from graphprod.structure import (
    core_factorize,
    core_related,
    is_core,
    is_core_factorable,
    is_core_irreducible,
    structure_report,
)
from graphprod.traces import identity, is_invertible, multiply, traces_up_to

from helpers import atlas_up_to

P3, P4, C4, K3, G5 = (io.builtin_graph(n) for n in io.BUILTIN_GRAPHS)


def t(g, literal):
    return io.parse_trace(g, literal)


def test_core_examples():
    assert is_core(t(P3, "v2:5"))
    assert not is_core(t(P3, "v1"))
    assert is_core(identity(P3))
    assert all(is_core(x) for x in traces_up_to(K3, 2))


def test_core_irreducible_examples():
    assert is_core_irreducible(t(C4, "v1 v2"))
    assert not is_core_irreducible(t(P3, "v1 v2"))
    assert not is_core_irreducible(identity(P3))
    assert is_core_irreducible(t(P3, "v1 v3"))


def test_core_relation_examples():
    assert core_related(multiply(t(P3, "v2"), t(P3, "v1")), t(P3, "v1"))
    assert not core_related(t(C4, "v1 v2"), t(C4, "v1 v4"))
    s = t(G5, "v2 v1 v4:2")
    assert core_related(s, s)


def test_core_factorisation_examples():
    assert core_factorize(t(G5, "v2 v1 v4")) == (t(G5, "v2 v4"), t(G5, "v1"))
    core = t(P3, "v2:4")
    assert core_factorize(core) == (identity(P3), core)
    ci = t(C4, "v1 v2")
    assert core_factorize(ci) == (ci, identity(C4))


def test_reports_on_raam_examples():
    for g in (P3, P4, C4, K3, G5):
        rep = structure_report(g)
        assert rep.core_factorable and rep.ci_cap_closed and rep.finite_propagation_sufficient
        assert is_core_factorable(g)
    assert not structure_report(K3).alpha_faithful
    assert structure_report(C4).alpha_almost_free
    assert not structure_report(P3).alpha_almost_free
    assert structure_report(K3).alpha_almost_free


def test_integer_vertex_blocks_finite_propagation_certificate():
    g = with_monoids(P3, {"v1": "N", "v2": "N", "v3": "Z"})
    assert not structure_report(g).finite_propagation_sufficient
    g = with_monoids(P3, {"v1": "N", "v2": "N", "v3": "Z/4"})
    assert structure_report(g).finite_propagation_sufficient


@pytest.mark.parametrize("g", atlas_up_to(4), ids=repr)
def test_core_matches_definition(g):
    universe = traces_up_to(g, 3)
    for s in traces_up_to(g, 2):
        assert is_core(s) == oracles.core_by_definition(s, universe)


@pytest.mark.parametrize("g", [P3, P4, with_monoids(P4, "F2"), with_monoids(C4, "F2"), G5], ids=repr)
def test_core_relation_matches_search(g):
    # cores up to two atoms absorb every difference between traces of two atoms
    pool = traces_up_to(g, 2)
    cores = [x for x in pool if is_core(x)]
    for s in pool:
        for u in pool:
            assert core_related(s, u) == oracles.core_related_by_search(s, u, cores), (s, u)


MIXED = [P3, G5, with_monoids(G5, {"v1": "Z", "v2": "F2", "v3": "N", "v4": "N"})]
MIXED_POOLS = [traces_up_to(g, 3) for g in MIXED]


@given(st.integers(0, len(MIXED) - 1), st.data())
def test_factorisation_reassembles(i, data):
    s = data.draw(st.sampled_from(MIXED_POOLS[i]))
    ci, core = core_factorize(s)
    assert multiply(ci, core) == s
    assert is_core(core)
    assert not ci.syllables or is_core_irreducible(ci)


@given(st.integers(0, len(MIXED) - 1), st.data())
def test_core_is_a_submonoid_and_relation_symmetric(i, data):
    pool = MIXED_POOLS[i]
    a, b = data.draw(st.sampled_from(pool)), data.draw(st.sampled_from(pool))
    if is_core(a) and is_core(b):
        assert is_core(multiply(a, b))
    assert core_related(a, b) == core_related(b, a)
    if is_invertible(a):
        assert is_core(a)
