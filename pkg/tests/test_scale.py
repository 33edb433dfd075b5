import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphprod import io, scale
from graphprod.errors import BudgetExceeded, GraphMismatch, NotInImage, PreconditionViolation, ScaleAbsent, Unsupported
from graphprod.graph import Graph, edgeless_graph, with_monoids
from graphprod.oracles import rationally_independent_bruteforce
from graphprod.structure import is_core
from graphprod.traces import identity, multiply, traces_up_to

P3, P4, C4, K3, G5 = (io.builtin_graph(n) for n in io.BUILTIN_GRAPHS)
K23 = Graph.build("abcde", [(x, y) for x in "ab" for y in "cde"])
F2_RAAM = edgeless_graph(2)


def t(g, literal):
    return io.parse_trace(g, literal)


# -- arithmetic --------------------------------------------------------------------

def test_factorize():
    assert scale.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert scale.factorize(1) == {}


def test_integer_rank():
    assert scale.integer_rank([[1, 0], [0, 1]]) == 2
    assert scale.integer_rank([[2, 4], [1, 2]]) == 1
    assert scale.integer_rank([]) == 0
    assert scale.integer_rank([[0, 0, 0]]) == 0


def test_exponent_vector():
    v = scale.SupernaturalExponentVector((2, 6), (3, 1))
    assert v.value() == 48
    assert v.prime_vector() == {2: 4, 3: 1}


@pytest.mark.parametrize("m,expect", [([2, 3], True), ([2, 4], False), ([2, 2], False), ([6, 10, 15], True), ([12, 18], True), ([3, 21, 16, 14], False)])
def test_rational_independence_examples(m, expect):
    assert scale.rationally_independent(m) is expect


def test_dependence_certificates():
    assert scale.dependence_certificate([2, 3]) is None
    for m in ([2, 4], [3, 21, 16, 14], [16, 27, 6], [4, 8, 9]):
        a, b = scale.dependence_certificate(m)
        assert a != b
        assert math.prod(x**k for x, k in zip(m, a)) == math.prod(x**k for x, k in zip(m, b))


@given(st.lists(st.integers(2, 30), min_size=1, max_size=4))
def test_bounded_collision_implies_dependence(m):
    if not rationally_independent_bruteforce(m, 5):
        assert not scale.rationally_independent(m)
    if not scale.rationally_independent(m):
        a, b = scale.dependence_certificate(m)
        assert math.prod(x**k for x, k in zip(m, a)) == math.prod(x**k for x, k in zip(m, b))


def test_free_monoid_scale():
    assert scale.free_monoid_scale(2, "xy") == 4
    assert scale.free_monoid_scale(3, "") == 1
    assert scale.free_monoid_scale(2, "xxx") == 8
    with pytest.raises(PreconditionViolation):
        scale.free_monoid_scale(1, "x")


# -- existence ---------------------------------------------------------------------

def test_existence_examples():
    gs = scale.generalised_scale(P3)
    assert gs.exists and gs.component_sizes == (2,)
    c4 = scale.generalised_scale(C4)
    assert c4.obstruction is scale.Obstruction.RATIONALLY_DEPENDENT and c4.component_sizes == (2, 2)
    assert scale.generalised_scale(K3).obstruction is scale.Obstruction.ALL_UNIVERSAL
    p4 = scale.generalised_scale(P4)
    assert p4.obstruction is scale.Obstruction.EDGED_COMPONENT and p4.obstruction_index == 0
    assert scale.generalised_scale(G5).component_sizes == (2,)
    assert scale.generalised_scale(K23).component_sizes == (2, 3)
    assert json.loads(json.dumps(c4.as_dict()))["obstruction"] == "RATIONALLY_DEPENDENT"


def test_free_sum_assignments():
    g = with_monoids(Graph.build(["a", "b"], [("a", "b")]), {"a": "F2", "b": "F3"})
    gs = scale.generalised_scale(g)
    assert gs.exists and gs.component_sizes == (2, 3)
    with pytest.raises(Unsupported):
        scale.generalised_scale(with_monoids(P3, "Z"))
    with pytest.raises(Unsupported):
        scale.generalised_scale(with_monoids(P4, "F2"))


def test_evaluation_examples():
    gs = scale.generalised_scale(P3)
    assert scale.evaluate_scale(gs, t(P3, "v2:5")) == 1
    assert scale.evaluate_scale(gs, t(P3, "v1 v3 v1")) == 8
    assert scale.evaluate_scale(gs, identity(P3)) == 1
    with pytest.raises(ScaleAbsent):
        scale.evaluate_scale(scale.generalised_scale(C4), t(C4, "v1"))
    with pytest.raises(GraphMismatch):
        scale.evaluate_scale(gs, t(P4, "v1"))


def test_exponent_tuples():
    assert scale.exponent_tuples((2, 3), 12) == [(2, 1)]
    assert scale.exponent_tuples((2, 2), 4) == [(0, 2), (1, 1), (2, 0)]
    assert scale.exponent_tuples((2,), 3) == []
    assert scale.image_values(scale.generalised_scale(K23), 12) == [1, 2, 3, 4, 6, 8, 9, 12]


SCALED = [P3, G5, K23, with_monoids(Graph.build(["a", "b"], [("a", "b")]), {"a": "F2", "b": "F3"})]
SCALED_POOLS = [traces_up_to(g, 3) for g in SCALED]


@given(st.integers(0, len(SCALED) - 1), st.data())
def test_scale_is_a_homomorphism_with_kernel_the_core(i, data):
    g, pool = SCALED[i], SCALED_POOLS[i]
    gs = scale.generalised_scale(g)
    a, b = data.draw(st.sampled_from(pool)), data.draw(st.sampled_from(pool))
    assert scale.evaluate_scale(gs, multiply(a, b)) == scale.evaluate_scale(gs, a) * scale.evaluate_scale(gs, b)
    assert (scale.evaluate_scale(gs, a) == 1) == is_core(a)


# -- axioms ------------------------------------------------------------------------

def test_class_examples():
    gs = scale.generalised_scale(P3)
    classes = scale.value_classes(gs, 2)
    assert len(classes) == 2
    assert sorted(cls[0].literal() for cls in classes) == ["v1:1", "v3:1"]
    assert len(scale.value_classes(gs, 4)) == 4
    assert len(scale.value_classes(scale.generalised_scale(K23), 6)) == 6
    assert len(scale.value_classes(scale.generalised_scale(C4), 2)) == 4


@pytest.mark.parametrize("n", [2, 4, 8])
def test_axioms_hold_on_P3(n):
    rep = scale.verify_scale_axioms(scale.generalised_scale(P3), n, alternatives=2)
    assert rep.ok and rep.class_count == n and rep.accurate


def test_axiom_errors():
    gs = scale.generalised_scale(P3)
    with pytest.raises(NotInImage):
        scale.verify_scale_axioms(gs, 3)
    with pytest.raises(BudgetExceeded):
        scale.verify_scale_axioms(gs, 1 << 12, budget=100)
    with pytest.raises(ScaleAbsent):
        scale.verify_scale_axioms(scale.generalised_scale(C4), 2)


# -- uniqueness --------------------------------------------------------------------

def test_uniqueness_examples():
    rep = scale.verify_scale_uniqueness(scale.generalised_scale(F2_RAAM), 6)
    assert rep.ok and rep.survivors["v1,v2"] == [(2, 2)]
    rep = scale.verify_scale_uniqueness(scale.generalised_scale(P3), 6)
    assert rep.ok and rep.survivors["v1,v3"] == [(2, 2)] and rep.survivors["v2"] == [(1,)]
    rep = scale.verify_scale_uniqueness(scale.generalised_scale(K23), 6)
    assert rep.ok and rep.survivors["a,b"] == [(2, 2)] and rep.survivors["c,d,e"] == [(3, 3, 3)]


def test_generator_axiom():
    assert scale._generator_axiom_holds((2, 2), 36)
    assert not scale._generator_axiom_holds((2, 3), 36)
    assert not scale._generator_axiom_holds((1, 2), 36)


# -- admissibility -----------------------------------------------------------------

def test_admissibility_examples():
    assert scale.is_admissible(P3).admissible
    assert not scale.is_admissible(C4).admissible
    assert not scale.is_admissible(P4).admissible
    assert scale.is_admissible(K23).as_dict()["irreducibles"] == [2, 3]
