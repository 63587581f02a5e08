from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopk.combinatorics import (
    Honeycomb,
    LinkPattern,
    PlanePartition,
    SubsetIndex,
    YoungDiagram,
    abc_pattern,
    abc_type,
    boxes,
    catalan,
    count_pp_macmahon,
    enumerate_full_patterns,
    enumerate_pp,
    enumerate_subsets,
    leq,
    linkpattern_to_subset,
    pp_views,
    rect_subset,
    staircase_test,
    subset_to_linkpattern,
    subset_to_young,
    y_coordinate,
    young_subset,
    young_to_subset,
)

EXAMPLE = SubsetIndex.parse("1,4,6,7,10@n=5,N=11")


def test_subset_text_round_trip():
    assert str(EXAMPLE) == "1,4,6,7,10@n=5,N=11"
    assert SubsetIndex.parse(str(EXAMPLE)) == EXAMPLE
    with pytest.raises(ValueError):
        SubsetIndex.parse("1,4,6@n=2,N=11")
    with pytest.raises(ValueError):
        SubsetIndex(2, 4, (3, 1))


def test_example_young_diagram_and_boxes():
    # column heights N - n - (r_i - i), counted by hand
    assert subset_to_young(EXAMPLE).parts == (6, 4, 3, 3, 1)
    assert boxes(EXAMPLE) == 17
    assert young_to_subset(subset_to_young(EXAMPLE)) == EXAMPLE


def test_extreme_diagrams():
    n, N = 3, 7
    assert boxes(SubsetIndex(n, N, (1, 2, 3))) == n * (N - n)
    assert boxes(SubsetIndex(n, N, (5, 6, 7))) == 0
    with pytest.raises(ValueError):
        YoungDiagram(2, 4, (1, 2))


def test_example_link_pattern():
    lp = subset_to_linkpattern(EXAMPLE)
    assert lp.pairs == ((2, 7), (3, 4), (5, 6), (9, 10))
    assert lp.unpaired == (1, 8, 11)
    assert str(lp) == "pairs=2-7,3-4,5-6,9-10;N=11"
    assert LinkPattern.parse("pairs=2-7,3-4,5-6,9-10;N=11", n=5) == lp
    assert linkpattern_to_subset(lp) == EXAMPLE


def test_totally_unpaired_pattern():
    lp = subset_to_linkpattern(SubsetIndex(3, 5, (1, 2, 3)))
    assert lp.pairs == () and lp.unpaired == (1, 2, 3, 4, 5)


def test_link_pattern_validation():
    with pytest.raises(ValueError):
        LinkPattern(4, ((1, 3), (2, 4)), 2)
    with pytest.raises(ValueError):
        LinkPattern(3, ((1, 3),), 1)  # 2 sits under the chord


def test_abc_pattern_shape():
    lp = abc_pattern(2, 1, 1)
    n = 4
    assert lp.is_full and lp.n == n
    # b left rays, a nested outer arches, c right rays, closed off on the outside
    assert abc_type(lp) == (2, 1, 1)
    assert staircase_test(rect_subset(2, 1, 1))


def test_rectangle_outside_staircase():
    # a < 0: the rectangle pokes out of the staircase
    r = SubsetIndex(2, 4, (1, 2))
    assert not staircase_test(r)
    assert staircase_test(SubsetIndex(2, 4, (3, 4)))


def test_catalan_counts():
    assert [catalan(n) for n in (1, 2, 3, 4)] == [1, 2, 5, 14]
    for n in (1, 2, 3, 4):
        assert len(enumerate_full_patterns(n)) == catalan(n)


def test_poset_n2():
    subs = enumerate_subsets(2, 4)
    assert len(subs) == 6
    # colexicographic order
    assert [s.elements for s in subs] == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    covers = {(s.elements, r.elements) for s in subs for r in subs
              if s != r and leq(s, r) and not any(leq(s, x) and leq(x, r) and x not in (s, r) for x in subs)}
    assert covers == {((1, 2), (1, 3)), ((1, 3), (2, 3)), ((1, 3), (1, 4)),
                      ((2, 3), (2, 4)), ((1, 4), (2, 4)), ((2, 4), (3, 4))}


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_leq_is_a_partial_order(data):
    subs = enumerate_subsets(3, 6)
    s, r = data.draw(st.sampled_from(subs)), data.draw(st.sampled_from(subs))
    assert leq(s, s)
    if leq(s, r) and leq(r, s):
        assert s == r
    assert young_subset(s, r) == subset_to_young(r).contains(subset_to_young(s))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.data())
def test_subset_pattern_bijection(n, data):
    N = data.draw(st.integers(n, 2 * n + 2))
    r = data.draw(st.sampled_from(enumerate_subsets(n, N)))
    assert linkpattern_to_subset(subset_to_linkpattern(r)) == r


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_rotation_has_order_N(n, data):
    r = data.draw(st.sampled_from(enumerate_full_patterns(n)))
    lp = subset_to_linkpattern(r)
    assert lp.rotate(2 * n) == lp
    assert lp.rotate(1).rotate(-1) == lp


# -- plane partitions ----------------------------------------------------------


def _pp_count_by_recursion(a, b, c):
    """Independent count: weakly increasing chains of a subsets, by dynamic programming."""
    subs = list(combinations(range(1, b + c + 1), b))
    ways = {s: 1 for s in subs}
    for _ in range(a - 1):
        ways = {t: sum(w for s, w in ways.items() if all(x <= y for x, y in zip(s, t))) for t in subs}
    return sum(ways.values()) if a else 1


def test_figure_example_is_a_plane_partition():
    S = PlanePartition.parse("[[1,3,5,7],[3,5,6,7]]")
    assert (S.a, S.b, S.c) == (2, 4, 3)
    assert S.is_ordered
    assert S in enumerate_pp(2, 4, 3)
    assert str(S) == "[[1,3,5,7],[3,5,6,7]]"


@pytest.mark.parametrize("abc,count", [((0, 2, 3), 1), ((1, 1, 1), 2), ((1, 2, 2), 6), ((2, 2, 2), 20)])
def test_pp_counts(abc, count):
    assert len(enumerate_pp(*abc)) == count
    assert _pp_count_by_recursion(*abc) == count
    assert count_pp_macmahon(*abc) == count


@pytest.mark.parametrize("abc", [(a, b, c) for a in range(4) for b in range(4) for c in range(4) if a + b + c <= 6])
def test_pp_enumeration_matches_recursion(abc):
    assert len(enumerate_pp(*abc)) == _pp_count_by_recursion(*abc)


@pytest.mark.parametrize("abc", [(1, 1, 1), (2, 1, 2), (2, 4, 3), (3, 2, 2)])
def test_dimer_and_hexagon_counts(abc):
    a, b, c = abc
    for S in enumerate_pp(*abc)[:10]:
        v = pp_views(S)
        assert v["counts"] == {"B": a * c, "C": a * b, "BC": b * c}
        assert v["hexagons"] == a * b + a * c + b * c - a - b - c + 1
        assert v["perfect_matching"]


def test_y_coordinates():
    assert y_coordinate("C", 2, 1, 1) == 0
    with pytest.raises(ValueError):
        y_coordinate("D", 1, 1, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 4), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
def test_y_is_additive_along_quadratic_relations(a, i, j, k):
    # (BC)[i,k] = sum_j B[i,j] C[j,k] is homogeneous in y
    assert y_coordinate("B", i, j, a) + y_coordinate("C", j, k, a) == y_coordinate("BC", i, k, a)


def test_honeycomb_region_has_one_face_at_111():
    assert len(Honeycomb(1, 1, 1).interior_faces()) == 1


def test_nilp_words():
    S = PlanePartition.parse("[[1,3],[2,3]]")
    assert S.nilp() == ["DRD", "RDD"]
