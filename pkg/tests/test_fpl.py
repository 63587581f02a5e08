from collections import Counter
from itertools import product

import pytest

from loopk.combinatorics import LinkPattern, enumerate_full_patterns, linkpattern_to_subset
from loopk.fpl import (
    FplConfig,
    _search,
    connectivity,
    enumerate_fpl,
    fpl_pp_cardinality_check,
    fpl_total,
    occupied_stubs,
    rotation_multisets_agree,
    stubs,
)
from loopk.qkz import rs_counts, rs_counts_hamiltonian


def count_asm(n):
    """Alternating sign matrices by a row-by-row transfer over column sums."""
    states = Counter({(0,) * n: 1})
    for _ in range(n):
        nxt = Counter()
        for cols, w in states.items():
            for row in product((-1, 0, 1), repeat=n):
                nz = [x for x in row if x]
                if not nz or nz[0] != 1 or any(x == y for x, y in zip(nz, nz[1:])) or sum(nz) != 1:
                    continue
                new = tuple(c + x for c, x in zip(cols, row))
                if all(v in (0, 1) for v in new):
                    nxt[new] += w
        states = nxt
    return states[(1,) * n]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_totals_match_alternating_sign_matrices(n):
    assert fpl_total(n) == count_asm(n)


def test_asm_oracle_values():
    assert [count_asm(n) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_stub_layout():
    assert len(stubs(3)) == 12
    assert len(occupied_stubs(3)) == 6
    # n = 1: the top stub is empty, labelling starts on the right
    assert occupied_stubs(1) == [("R", 1), ("L", 1)]


def test_every_configuration_has_degree_two():
    for n in (2, 3):
        for cfg in _search(n):
            assert cfg.degree_ok()


def test_n1_single_configuration():
    assert {str(k): v for k, v in enumerate_fpl(1).items()} == {"2@n=1,N=2": 1}


def test_n3_counts():
    counts = {str(k): v for k, v in enumerate_fpl(3).items()}
    assert counts == {"2,4,6@n=3,N=6": 2, "2,5,6@n=3,N=6": 1, "3,4,6@n=3,N=6": 1,
                      "3,5,6@n=3,N=6": 2, "4,5,6@n=3,N=6": 1}


def test_nested_example_at_n4():
    lp = LinkPattern.parse("pairs=1-8,2-7,3-4,5-6;N=8")
    assert enumerate_fpl(4)[linkpattern_to_subset(lp)] == 3


def test_every_full_pattern_occurs():
    for n in (1, 2, 3, 4):
        assert set(enumerate_fpl(n)) == set(enumerate_full_patterns(n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_counts_match_ground_state(n):
    assert enumerate_fpl(n) == rs_counts(n)


def test_counts_match_hamiltonian_ground_state_n4():
    assert enumerate_fpl(4) == rs_counts_hamiltonian(4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_rotation_invariance_of_the_multiset(n):
    assert rotation_multisets_agree(n)


@pytest.mark.parametrize("abc", [(1, 1, 1), (2, 1, 1), (0, 2, 2), (0, 1, 3), (1, 2, 1), (1, 0, 2)])
def test_abc_pattern_counts_plane_partitions(abc):
    assert fpl_pp_cardinality_check(*abc)


def test_connectivity_is_a_full_pattern():
    cfg = next(iter(_search(3)))
    assert isinstance(cfg, FplConfig)
    lp = connectivity(cfg)
    assert lp.is_full and lp.N == 6


def test_enumeration_budget():
    with pytest.raises(ValueError, match="budget"):
        enumerate_fpl(7)
    with pytest.raises(ValueError):
        enumerate_fpl(0)
