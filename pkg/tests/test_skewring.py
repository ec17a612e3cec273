import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import c4_action
from pskew.exactalg import ScalarField, intersect
from pskew.groups import cyclic_group
from pskew.paction import SetPartialAction, random_restricted_action
from pskew.report import SKIPPED, OracleInfeasible
from pskew.skewring import (
    SkewRing,
    augment,
    centralizer_of_R0,
    check_iip_equivalence,
    check_simplicity_criterion,
    commutant_witness_ideal,
    expected_centralizer_dim,
    has_ideal_intersection_property_oracle,
    ideal_generated,
    is_ideal,
    is_maximal_commutative,
    is_simple_oracle,
    multiply,
    principal_ideal_dims,
    project,
    verify_associativity,
)

F2, F3 = ScalarField(2), ScalarField(3)
C1, C2 = cyclic_group(1), cyclic_group(2)


def ring(a, fld=F2):
    return SkewRing.from_action(a, fld)


def trivial_c2(n=1):
    pts = tuple(f"x{i}" for i in range(n))
    return SetPartialAction.build(C2, pts, {1: {x: x for x in pts}})


def swap_c2():
    return SetPartialAction.build(C2, ("a", "b"), {1: {"a": "b", "b": "a"}})


def e(i, n=3):
    return tuple(int(j == i) for j in range(n))


def random_ring(seed, fld=F2, max_carrier=4):
    rng = random.Random(seed)
    return ring(random_restricted_action(rng, rng.choice([2, 3, 4]), max_carrier)[0], fld)


def test_coordinates_of_c4():
    R = ring(c4_action())
    assert R.dim == 9
    assert R.coords[:3] == ((0, 1), (0, 2), (0, 3))


def test_unit_acts_trivially():
    R = ring(c4_action(), F3)
    x = R.homogeneous(1, (2, 1, 0))
    assert R.one * x == x == x * R.one


def test_c4_product_example():
    R = ring(c4_action())
    lhs = R.homogeneous(1, e(0)) * R.homogeneous(1, e(1))
    assert lhs == R.homogeneous(2, e(0))
    assert multiply(R, R.homogeneous(1, e(0)), R.homogeneous(1, e(1))) == lhs


def test_coefficients_must_lie_in_the_domain():
    # e3 is outside D_g = Ke1 + Ke2, so e3 d_g is not an element of the ring
    R = ring(c4_action())
    with pytest.raises(ValueError):
        R.homogeneous(1, e(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.data())
def test_table_product_matches_literal_formula(seed, data):
    R = random_ring(seed, F3)
    coeffs = st.lists(st.integers(0, 2), min_size=R.dim, max_size=R.dim)
    a, b = R.element(data.draw(coeffs)), R.element(data.draw(coeffs))
    assert a * b == multiply(R, a, b)


def test_project_examples():
    R = ring(c4_action(), F3)
    a0 = R.r0((1, 2, 0))
    assert project(R, a0, 0) == (1, 2, 0)
    assert project(R, a0, 1) == (0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.data())
def test_project_and_augment_are_linear(seed, data):
    R = random_ring(seed, F3)
    coeffs = st.lists(st.integers(0, 2), min_size=R.dim, max_size=R.dim)
    a, b = R.element(data.draw(coeffs)), R.element(data.draw(coeffs))
    add = lambda u, v: tuple((x + y) % 3 for x, y in zip(u, v))
    for g in R.support:
        assert project(R, a + b, g) == add(project(R, a, g), project(R, b, g))
    assert augment(R, a + b) == add(augment(R, a), augment(R, b))


def test_augmentation_examples():
    R = ring(c4_action(), F3)
    a = (1, 2, 0)
    assert augment(R, R.r0(a)) == a
    assert augment(R, R.r0(a) - R.homogeneous(1, a)) == (0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.data())
def test_homogeneous_products_are_graded(seed, data):
    R = random_ring(seed, F3)
    G = R.group
    t, s = data.draw(st.sampled_from(R.support)), data.draw(st.sampled_from(R.support))
    n = len(R.base.carrier)
    ft = [data.draw(st.integers(0, 2)) if x in R.base.X(t) else 0 for x in R.base.carrier]
    fs = [data.draw(st.integers(0, 2)) if x in R.base.X(s) else 0 for x in R.base.carrier]
    prod = R.homogeneous(t, ft) * R.homogeneous(s, fs)
    assert prod.support() <= {G.mul(t, s)}
    for g in R.support:
        if g != G.mul(t, s):
            assert project(R, prod, g) == (0,) * n


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.data())
def test_r0_is_commutative_and_augmentation_injective_on_it(seed, data):
    R = random_ring(seed, F3)
    n = len(R.base.carrier)
    f = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    g = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    assert R.r0(f) * R.r0(g) == R.r0(tuple(x * y % 3 for x, y in zip(f, g))) == R.r0(g) * R.r0(f)
    assert augment(R, R.r0(f)) == tuple(f)


def test_centralizer_examples():
    assert centralizer_of_R0(ring(trivial_c2())).rank == 2
    R = ring(c4_action())
    assert centralizer_of_R0(R) == R.r0_subspace()
    assert centralizer_of_R0(ring(swap_c2())).rank == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_centralizer_dimension_formula(seed):
    R = random_ring(seed, F3, max_carrier=5)
    assert centralizer_of_R0(R).rank == expected_centralizer_dim(R.base)


def test_maximal_commutative_examples():
    assert is_maximal_commutative(ring(c4_action())).holds
    f = is_maximal_commutative(ring(trivial_c2(2)))
    assert not f.holds and f.witness.support() == {1}
    assert is_maximal_commutative(ring(swap_c2())).holds


def test_ideal_generated_examples():
    R = ring(c4_action(), F3)
    assert ideal_generated(R, R.zero).is_zero()
    assert ideal_generated(R, R.one).is_full()


def test_witness_ideal_misses_r0():
    R = ring(trivial_c2(2))
    w = commutant_witness_ideal(R, is_maximal_commutative(R).witness)
    assert not w.ideal.is_zero() and not w.meets_r0 and w.augmentation_vanishes
    assert intersect(w.ideal, R.r0_subspace()).is_zero()
    assert is_ideal(R, w.ideal)


def test_simple_oracle_examples():
    assert is_simple_oracle(ring(c4_action())).holds
    R = ring(trivial_c2())
    f = is_simple_oracle(R)
    assert not f.holds
    assert ideal_generated(R, R.one + R.homogeneous(1, (1,))).rank == 1
    assert not is_simple_oracle(ring(SetPartialAction(C1, ("x", "y"), {}))).holds


def test_iip_oracle_examples():
    assert has_ideal_intersection_property_oracle(ring(c4_action())).holds
    for n in (1, 2):
        assert not has_ideal_intersection_property_oracle(ring(trivial_c2(n))).holds
    assert has_ideal_intersection_property_oracle(ring(swap_c2())).holds


def test_agreement_examples():
    R = ring(c4_action())
    for check in (check_iip_equivalence, check_simplicity_criterion):
        ag = check(R)
        assert ag.status == "agree" and ag.lhs is True and ag.rhs is True
    ag = check_iip_equivalence(ring(trivial_c2()))
    assert ag.status == "agree" and (ag.lhs, ag.rhs) == (False, False)
    ag = check_simplicity_criterion(ring(swap_c2()))
    assert ag.status == "agree" and ag.lhs is True
    ag = check_simplicity_criterion(ring(trivial_c2()))
    assert (ag.lhs, ag.details["g_simple"], ag.details["max_commutative"]) == (False, True, False)


def test_budget_gives_skipped_not_false():
    R = ring(c4_action())
    with pytest.raises(OracleInfeasible):
        is_simple_oracle(R, budget=2**8)
    assert check_iip_equivalence(R, budget=2**8).status == SKIPPED
    ag = check_simplicity_criterion(R, budget=2**8)
    assert ag.status == SKIPPED and "budget" in ag.reason


def test_associativity_examples():
    assert verify_associativity(ring(c4_action(), F3)).holds
    assert verify_associativity(ring(trivial_c2(2))).holds


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_restricted_rings_are_associative(seed):
    assert verify_associativity(random_ring(seed)).holds


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3]), st.data())
def test_batched_ideal_dims_match_worklist_closure(seed, p, data):
    fld = ScalarField(p)
    R = random_ring(seed, fld, max_carrier=3)
    gens = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=R.dim, max_size=R.dim),
                              min_size=1, max_size=6))
    assert principal_ideal_dims(R, gens) == [ideal_generated(R, g).rank for g in gens]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_simple_implies_intersection_property(seed):
    R = random_ring(seed)
    if R.field.p ** R.dim > 2**12:
        return
    if is_simple_oracle(R).holds:
        assert has_ideal_intersection_property_oracle(R).holds
