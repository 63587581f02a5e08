from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopk.combinatorics import count_pp_macmahon, enumerate_pp, enumerate_subsets, rect_subset, young_subset
from loopk.geometry import (
    block_pairs,
    block_symmetric,
    blocks,
    conj1_failures,
    conj2_failures,
    conj3_shape,
    dual_specialization,
    dual_specialization_expected,
    facpol_prefactor,
    lozenge_factors,
    m_r,
    m_relation_defect,
    m_relation_holds,
    m_tilde,
    mu_pushforward_abc,
    orbital_degree,
    phi_r,
    pi_pushforward_abc,
    restriction_at_r,
    restriction_at_s,
    roster,
    wheel_vanishing_check,
    weyl_dim,
)
from loopk.laurent import LaurentPoly, product

SMALL = [(0, 1, 1), (1, 1, 0), (1, 0, 1), (0, 2, 1), (1, 1, 1), (2, 1, 0)]


def mono(R, **exp2):
    return LaurentPoly.monomial(R, exp2)


def test_blocks_partition_the_indices():
    a, b, c = 1, 2, 1
    got = [i for blk in blocks(a, b, c) for i in blk]
    assert got == list(range(1, 2 * (a + b + c) + 1))
    assert [len(blk) for blk in blocks(a, b, c)] == [a + b, b + c, a + c]
    assert len(block_pairs(a, b, c)) == comb(3, 2) + comb(3, 2) + comb(2, 2)


def test_pushforward_smallest_case_by_hand():
    # blocks {1}, {2,3}, {4}; one plane partition with a single BC lozenge
    R = roster(0, 1, 1)
    one = LaurentPoly.const(R, 1)
    want = (one - mono(R, t=2, z2=2, z3=-2)) * (one - mono(R, t=4, z1=2, z4=-2))
    assert mu_pushforward_abc(0, 1, 1) == want
    assert pi_pushforward_abc(0, 1, 1).numerator == one - mono(R, t=4, z1=2, z4=-2)


def test_unreduced_localized_class_agrees():
    red, raw = pi_pushforward_abc(1, 1, 0), pi_pushforward_abc(1, 1, 0, reduce=False)
    assert red.numerator * raw.denominator == raw.numerator * red.denominator


def test_outside_staircase_pushforward_vanishes():
    assert mu_pushforward_abc(-1, 1, 1) == 0
    with pytest.raises(ValueError):
        mu_pushforward_abc(-1, -1, 1)


@pytest.mark.parametrize("abc", SMALL)
def test_forms_are_consistent(abc):
    R = roster(*abc)
    final = mu_pushforward_abc(*abc)
    assert mu_pushforward_abc(*abc, form="final2") * m_tilde(*abc, R) == final


def test_unknown_form():
    with pytest.raises(ValueError):
        mu_pushforward_abc(1, 1, 1, form="other")


@pytest.mark.parametrize("abc", SMALL)
def test_m_relation_defect_is_the_last_block(abc):
    a, b, c = abc
    R = roster(*abc)
    want = product((mono(R, **{f"z{i}": 2 * a}) for i in blocks(*abc)[2]), R)
    assert m_relation_defect(*abc) == want
    assert m_relation_holds(*abc) == (a == 0)


def test_m_r_exponents():
    R = roster(1, 1, 1)
    # t^(bc), z^-n on the first n-c indices, then 2b-n, then 2(b+c)-n (doubled)
    assert m_r(1, 1, 1, R) == mono(R, t=1, z1=-3, z2=-3, z3=-1, z4=-1, z5=1, z6=1)


@pytest.mark.parametrize("abc", SMALL)
def test_phi_is_block_symmetric(abc):
    assert block_symmetric(phi_r(*abc), *abc)


@pytest.mark.parametrize("abc", SMALL)
def test_dual_specialization(abc):
    assert dual_specialization(*abc) == dual_specialization_expected(*abc)


@pytest.mark.parametrize("abc", SMALL)
def test_wheel_vanishing(abc):
    rep = wheel_vanishing_check(*abc)
    n = sum(abc)
    assert rep.passed and rep.triples == comb(2 * n, 3)


def test_wheel_vanishing_random_route():
    assert wheel_vanishing_check(1, 1, 1, seeds=[3, 4]).passed


@pytest.mark.parametrize("abc", [(0, 1, 1), (1, 1, 0), (1, 0, 1), (0, 2, 1)])
def test_restriction_conjecture(abc):
    assert conj1_failures(*abc) == []


def test_restriction_conjecture_111():
    assert conj1_failures(1, 1, 1) == []


@pytest.mark.parametrize("abc", [(0, 1, 1), (1, 1, 0), (1, 1, 1)])
def test_pushforward_equals_qkz_solution(abc):
    assert conj2_failures(*abc) == []


@pytest.mark.parametrize("abc", SMALL + [(1, 2, 1)])
def test_term_shape(abc):
    rep = conj3_shape(*abc)
    n = sum(abc)
    assert rep.passed
    assert rep.terms == len(enumerate_pp(*abc))
    assert set(rep.factor_counts) == {n * (n - 1)}


def test_lozenge_factor_counts():
    for S in enumerate_pp(2, 1, 2):
        kinds = [f.source for f in lozenge_factors(S)]
        assert (kinds.count("B"), kinds.count("C"), kinds.count("BC")) == (4, 2, 2)


def test_restriction_vanishes_outside_r():
    a, b, c = 1, 1, 1
    r = rect_subset(a, b, c)
    for s in enumerate_subsets(r.n, r.N):
        if not young_subset(s, r):
            assert restriction_at_s(a, b, c, s) == 0
    assert restriction_at_s(a, b, c, r) == restriction_at_r(a, b, c)


def test_weyl_dimension():
    assert weyl_dim((1, 2, 4)) == 3
    assert weyl_dim((1, 2, 3)) == 1
    with pytest.raises(ValueError):
        weyl_dim((2, 1))
    with pytest.raises(ValueError):
        weyl_dim((1, 2), k=3)


@pytest.mark.parametrize("abc,deg", [((1, 1, 1), 4), ((0, 2, 2), 16), ((2, 2, 2), 320), ((1, 1, 0), 1)])
def test_orbital_degree_values(abc, deg):
    assert orbital_degree(*abc) == deg


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_orbital_degree_two_routes(a, b, c):
    assert orbital_degree(a, b, c) == 2 ** (b * c) * count_pp_macmahon(a, b, c)


def test_phi_times_prefactor_is_the_normalized_class():
    abc = (1, 1, 1)
    assert phi_r(*abc) * facpol_prefactor(*abc) == mu_pushforward_abc(*abc, form="final2")
