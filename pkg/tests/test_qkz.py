from fractions import Fraction

import pytest

from loopk.combinatorics import LinkPattern, boxes, SubsetIndex, catalan, rect_subset, subset_to_linkpattern
from loopk.laurent import LaurentPoly, make_roster, substitute
from loopk.qkz import (
    dual_basis_failures,
    dual_basis_matrix,
    full_subsets,
    one_minus_t,
    periodic_e_apply,
    psi_abc,
    psi_basis,
    qkz_exchange_check,
    qkz_rotation_check,
    rs_count,
    rs_counts,
    rs_counts_hamiltonian,
    scale_exponent,
    wheel_dimension_at,
    wheel_failures,
    wheel_space,
)

R4 = make_roster(4)


def m(coeff=1, **exp2):
    return LaurentPoly.monomial(R4, exp2, coeff)


def test_n1_is_constant():
    vec = psi_basis(1)
    assert vec.scale == 0
    assert list(vec.entries.values()) == [LaurentPoly.const(make_roster(2), 1)]
    assert wheel_space(1).dimension == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_wheel_dimension_is_catalan(n):
    assert wheel_space(n).dimension == catalan(n)


@pytest.mark.parametrize("n,t", [(2, Fraction(3)), (2, Fraction(-5, 7)), (3, Fraction(2))])
def test_wheel_dimension_at_generic_t(n, t):
    assert wheel_dimension_at(n, t) == catalan(n)


@pytest.mark.parametrize("n", [2, 3])
def test_dual_basis_matrix_invertible(n):
    for u in (Fraction(2), Fraction(-3, 5)):
        assert dual_basis_matrix(n, u).det() != 0


def test_n2_basis_frozen():
    # derived from the wheel solver; both satisfy the dual basis conditions below
    vec = psi_basis(2)
    assert vec.scale == scale_exponent(2) == 2
    assert vec[SubsetIndex.parse("3,4@n=2,N=4")] == (m(1, t=2, z1=2) - m(1, z2=2)) * (m(1, t=2, z3=2) - m(1, z4=2))
    assert vec[SubsetIndex.parse("2,4@n=2,N=4")] == (
        m(1, t=5, z1=2, z2=2) - m(1, t=3, z1=2, z3=2) - m(1, t=1, z2=2, z4=2) + m(1, t=-1, z3=2, z4=2)
    )


@pytest.mark.parametrize("n", [2, 3])
def test_dual_basis_conditions(n):
    assert dual_basis_failures(psi_basis(n)) == []


@pytest.mark.parametrize("n", [2, 3])
def test_wheel_condition(n):
    assert wheel_failures(psi_basis(n)) == []


@pytest.mark.parametrize("n", [2, 3])
def test_psi_homogeneous_of_degree_n_n_minus_1(n):
    vec = psi_basis(n)
    names = [f"z{i}" for i in range(1, 2 * n + 1)]
    for p in vec.entries.values():
        # degrees are doubled in exp2
        assert p.degree2(names) == {2 * n * (n - 1)}


def test_exchange_symbolic_n2():
    vec = psi_basis(2)
    for i in range(1, 4):
        assert qkz_exchange_check(vec, i)
    assert qkz_rotation_check(vec)


def test_exchange_and_rotation_random_n3():
    vec = psi_basis(3)
    seeds = range(100, 103)
    for i in range(1, 6):
        assert qkz_exchange_check(vec, i, seeds)
    assert qkz_rotation_check(vec, seeds)


def test_exchange_detects_a_corrupted_vector():
    vec = psi_basis(2)
    r = SubsetIndex.parse("2,4@n=2,N=4")
    bad = type(vec)(vec.n, {**vec.entries, r: vec[r] * 2}, vec.scale)
    assert not all(qkz_exchange_check(bad, i) for i in range(1, 4)) or not qkz_rotation_check(bad)


@pytest.mark.parametrize("abc", [(0, 1, 1), (1, 1, 0), (1, 0, 1), (1, 1, 1), (0, 1, 2), (2, 1, 0)])
def test_psi_abc_matches_wheel_solver(abc):
    n = sum(abc)
    assert psi_abc(*abc) == psi_basis(n)[rect_subset(*abc)]


def test_psi_abc_dual_specialization():
    n = 3
    r = rect_subset(1, 1, 1)
    p = psi_abc(1, 1, 1)
    R = p.vars
    tau = LaurentPoly.monomial(R, {"t": 1}) + LaurentPoly.monomial(R, {"t": -1})
    for s in full_subsets(n):
        inside = set(s.elements)
        pt = {f"z{i}": LaurentPoly.monomial(R, {"t": 1 if i in inside else -1}) for i in range(1, 2 * n + 1)}
        want = tau ** boxes(r) * one_minus_t(R, 6) if s == r else 0
        assert substitute(p, pt) == want


def test_rs_counts_small():
    assert list(rs_counts(2).values()) == [1, 1]
    counts = rs_counts(3)
    assert sum(counts.values()) == 7
    assert sorted(counts.values()) == [1, 1, 1, 2, 2]


def test_rs_count_rejects_non_integers():
    with pytest.raises(ValueError):
        rs_count(LaurentPoly.const(R4, Fraction(1, 2)))


def test_periodic_temperley_lieb_generator():
    lp = LinkPattern.parse("pairs=1-2,3-4;N=4")
    img, power = periodic_e_apply(lp, 4)
    assert img.pairs == ((1, 4), (2, 3)) and power == 0
    img, power = periodic_e_apply(LinkPattern.parse("pairs=1-4,2-3;N=4"), 4)
    assert img.pairs == ((1, 4), (2, 3)) and power == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hamiltonian_route_matches_wheel_route(n):
    assert rs_counts_hamiltonian(n) == rs_counts(n)


def test_hamiltonian_n4_total():
    counts = rs_counts_hamiltonian(4)
    assert len(counts) == 14
    assert sum(counts.values()) == 42
    # the largest entries sit on the two most nested rotation classes
    assert max(counts.values()) == 7
    r = SubsetIndex.parse("2,4,6,8@n=4,N=8")
    assert subset_to_linkpattern(r).pairs == ((1, 2), (3, 4), (5, 6), (7, 8))
    assert counts[r] == 7
