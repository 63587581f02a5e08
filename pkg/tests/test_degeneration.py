import random
from fractions import Fraction
from itertools import combinations
from math import comb

import flint
import pytest

from loopk.combinatorics import enumerate_pp
from loopk.degeneration import (
    B,
    C,
    STAR,
    WeightSystem,
    add_index,
    all_variables,
    b_weight_steps,
    c_weight_steps,
    component_hilbert_direct,
    component_ring,
    degenerate_hilbert,
    degeneration_suite,
    edge_of,
    hexagon_region,
    hilbert_crosscheck,
    init_form_module,
    init_quadratic,
    is_standard,
    lattice_checks,
    leadterms_failures,
    plucker_init_check,
    plucker_relations,
    quadratic_init_failures,
    relation_B,
    relation_C,
    relation_quad,
    remove_index,
    straighten_all,
    tiling_failures,
    undegenerate_hilbert,
    var_of_edge,
)

SIZES = [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 1, 2), (0, 2, 1), (1, 0, 2)]


# -- relations vanish on the variety -------------------------------------------


def _random_point(a, b, c, seed):
    """B = Y X, C with X C = 0, p_s = maximal minors of X (b x (b+c))."""
    rng = random.Random(seed)
    rnd = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    N = b + c
    M = [[rnd() for _ in range(c)] for _ in range(b)]
    X = [[Fraction(int(i == j)) for j in range(b)] + M[i] for i in range(b)]
    K = [[-M[i][k] for k in range(c)] for i in range(b)] + [[Fraction(int(i == k)) for k in range(c)] for i in range(c)]
    Y = [[rnd() for _ in range(b)] for _ in range(a + b)]
    W = [[rnd() for _ in range(a + c)] for _ in range(c)]
    Bm = [[sum(Y[i][h] * X[h][j] for h in range(b)) for j in range(N)] for i in range(a + b)]
    Cm = [[sum(K[j][h] * W[h][k] for h in range(c)) for k in range(a + c)] for j in range(N)]
    val = {B(i + 1, j + 1): Bm[i][j] for i in range(a + b) for j in range(N)}
    val.update({C(j + 1, k + 1): Cm[j][k] for j in range(N) for k in range(a + c)})
    val.update({STAR(i + 1, k + 1): rnd() for i in range(a + b) for k in range(a + c)})

    def p(s):
        if not s:
            return Fraction(1)
        sub = flint.fmpq_mat([[flint.fmpq(X[h][j - 1].numerator, X[h][j - 1].denominator) for j in s] for h in range(b)])
        d = sub.det()
        return Fraction(int(d.p), int(d.q))

    return val, p


def _evaluate(elem, val, p):
    total = Fraction(0)
    for (m, ps), co in elem.terms.items():
        term = co
        for v in m:
            term *= val[v]
        for s in ps:
            term *= p(s)
        total += term
    return total


@pytest.mark.parametrize("abc", SIZES)
def test_relations_vanish_on_random_points(abc):
    a, b, c = abc
    for seed in range(3):
        val, p = _random_point(a, b, c, seed)
        for i in range(1, a + b + 1):
            for sp in combinations(range(1, b + c + 1), b + 1):
                assert _evaluate(relation_B(a, b, c, sp, i), val, p) == 0
            for k in range(1, a + c + 1):
                assert _evaluate(relation_quad(a, b, c, i, k), val, p) == 0
        for k in range(1, a + c + 1):
            for sm in combinations(range(1, b + c + 1), b - 1) if b else []:
                assert _evaluate(relation_C(a, b, c, sm, k), val, p) == 0
        for rel in plucker_relations(b, c):
            assert _evaluate(rel, val, p) == 0


def test_relation_signs_matter():
    # flipping one sign breaks the vanishing
    val, p = _random_point(1, 2, 1, 0)
    rel = relation_B(1, 2, 1, (1, 2, 3), 1)
    key = next(iter(rel.terms))
    rel.terms[key] = -rel.terms[key]
    assert _evaluate(rel, val, p) != 0


def test_index_signs():
    assert add_index((1, 3), 2) == (-1, (1, 2, 3))
    assert add_index((1, 3), 3) == (0, (1, 3, 3))
    assert remove_index((1, 2, 3), 1) == (1, (2, 3))
    assert remove_index((1, 2, 3), 2) == (-1, (1, 3))


# -- weights -------------------------------------------------------------------


@pytest.mark.parametrize("abc", SIZES)
def test_weight_of_p_from_c_lozenges(abc):
    ws = WeightSystem(*abc)
    for S in enumerate_pp(*abc):
        assert ws.wt_p(S.rows) == ws.wt_p_from_c_lozenges(S)


@pytest.mark.parametrize("abc", SIZES)
def test_other_weight_routes_differ_by_a_constant(abc):
    ws = WeightSystem(*abc)
    pps = enumerate_pp(*abc)
    assert len({ws.wt_p(S.rows) - ws.wt_p_from_b_lozenges(S) for S in pps}) == 1
    assert len({ws.wt_p(S.rows) - ws.wt_p_complement(S) for S in pps}) == 1


@pytest.mark.parametrize("abc", SIZES)
def test_weight_steps_match_closed_form(abc):
    for S in enumerate_pp(*abc):
        for z in S.b_lozenges():
            for actual, pred in b_weight_steps(S, z):
                assert actual == pred
        for z in S.c_lozenges():
            for actual, pred in c_weight_steps(S, z):
                assert actual == pred


def test_weight_of_star_is_zero():
    assert WeightSystem(1, 1, 1).wt_var(STAR(1, 1)) == 0


# -- leading terms -------------------------------------------------------------


@pytest.mark.parametrize("abc", SIZES + [(1, 0, 0), (0, 1, 1), (2, 2, 1)])
def test_leading_terms(abc):
    assert leadterms_failures(*abc) == []
    assert quadratic_init_failures(*abc) == []


def test_init_form_keeps_only_the_minimum():
    ws = WeightSystem(1, 1, 1)
    S = enumerate_pp(1, 1, 1)[0]
    init = init_form_module(relation_quad(1, 1, 1, 1, 1).times(p=S.rows), ws)
    assert init.same_up_to_scalar(init_quadratic(S, 1, 1))
    assert len(init.terms) < 2 or len({ws.wt_term(*k) for k in init.terms}) == 1


def test_init_quadratic_index_check():
    S = enumerate_pp(1, 1, 1)[0]
    with pytest.raises(IndexError):
        init_quadratic(S, 3, 1)


# -- Pluecker straightening ----------------------------------------------------


def test_plucker_222_has_one_nonstandard_monomial():
    res = plucker_init_check(2, 2, 2)
    assert res["nonstandard"] == 1 and res["pass"]
    ((p, expansion),) = straighten_all(2, 2, 2).items()
    assert p == ((1, 4), (2, 3))
    # p14 p23 = p13 p24 - p12 p34
    assert expansion == {((1, 3), (2, 4)): 1, ((1, 2), (3, 4)): -1}


@pytest.mark.parametrize("abc", [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 2)])
def test_plucker_initial_terms(abc):
    assert plucker_init_check(*abc)["pass"]


def test_standard_monomials():
    assert is_standard(((1, 2), (1, 3), (2, 4)))
    assert not is_standard(((1, 4), (2, 3)))


# -- hexagon geometry and lattices ---------------------------------------------


@pytest.mark.parametrize("abc", SIZES)
def test_every_plane_partition_tiles_the_hexagon(abc):
    for S in enumerate_pp(*abc):
        assert tiling_failures(S) == []


@pytest.mark.parametrize("abc", SIZES)
def test_edges_round_trip(abc):
    a = abc[0]
    region = hexagon_region(*abc)
    for v, (up, low) in region.edges.items():
        assert var_of_edge(up, low, a) == v
        assert edge_of(v, a) == (up, low)


def test_region_vertex_count():
    for a, b, c in SIZES:
        assert len(hexagon_region(a, b, c).vertices) == a * b + a * c + b * c + a + b + c + 1


def test_lattice_counts_111():
    got = lattice_checks(enumerate_pp(1, 1, 1)[0])
    assert got["pass"]
    assert got["got"]["dim_L"] == 7 and got["got"]["dim_perp"] == 2


@pytest.mark.parametrize("abc", SIZES)
def test_lattice_checks(abc):
    for S in enumerate_pp(*abc):
        assert lattice_checks(S, max_degree=3)["pass"]


def test_lattice_rejects_degenerate_hexagon():
    with pytest.raises(ValueError):
        lattice_checks(enumerate_pp(2, 0, 0)[0])


def test_component_ring_relation_count():
    for S in enumerate_pp(2, 1, 2):
        ring = component_ring(S)
        assert ring.relation_count == 2 * 1 + 2 * 2 + 1 * 2


# -- Hilbert functions ---------------------------------------------------------


def test_hilbert_011_by_hand():
    # five variables and one quadric: C(d+4,4) - C(d+2,4)
    want = [comb(d + 4, 4) - comb(d + 2, 4) for d in range(4)]
    assert want == [1, 5, 14, 30]
    assert degenerate_hilbert(0, 1, 1, 3) == want
    assert undegenerate_hilbert(0, 1, 1, 3) == want


@pytest.mark.parametrize("abc,D", [((1, 1, 1), 2), ((1, 1, 0), 3), ((1, 0, 1), 3), ((2, 1, 0), 2)])
def test_complete_intersection_formula(abc, D):
    total = [0] * (D + 1)
    for S in enumerate_pp(*abc):
        total = [x + y for x, y in zip(total, component_hilbert_direct(S, D))]
    assert total == degenerate_hilbert(*abc, D)


def test_hilbert_crosscheck_111():
    res = hilbert_crosscheck(1, 1, 1, 2)
    assert res["pass"] and res["degenerate"] == [2, 20, 108]


def test_hilbert_budget():
    with pytest.raises(ValueError, match="budget"):
        hilbert_crosscheck(2, 1, 1, 2)
    with pytest.raises(ValueError, match="budget"):
        hilbert_crosscheck(1, 1, 1, 5)


def test_variable_count():
    a, b, c = 1, 2, 1
    assert len(all_variables(a, b, c)) == (a + b) * (b + c) + (b + c) * (a + c) + (a + b) * (a + c)


def test_suite_small():
    assert degeneration_suite(max_n=2, max_degree=2)["pass"]
