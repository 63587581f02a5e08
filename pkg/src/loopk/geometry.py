"""K-theory side of the rectangular case r = c x b, with a = n - b - c.

All classes live in the Laurent ring in (t, z_1..z_N), N = 2n.  The three
blocks of indices are [1, a+b], [a+b+1, a+2b+c] and [a+2b+c+1, 2n].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Dict, Iterable, List, Sequence, Tuple

from .combinatorics import (
    PlanePartition,
    SubsetIndex,
    enumerate_pp,
    enumerate_subsets,
    rect_subset,
    young_subset,
)
from .laurent import LaurentPoly, evaluate, make_roster, product, sample_point, substitute


def _check_abc(a, b, c, allow_negative=False):
    if min(b, c) < 0 or (a < 0 and not allow_negative):
        raise ValueError(f"invalid (a,b,c) = {(a, b, c)}")


def roster(a: int, b: int, c: int):
    return make_roster(2 * (a + b + c))


def blocks(a: int, b: int, c: int) -> Tuple[range, range, range]:
    n = a + b + c
    return range(1, a + b + 1), range(a + b + 1, a + 2 * b + c + 1), range(a + 2 * b + c + 1, 2 * n + 1)


def block_pairs(a: int, b: int, c: int) -> List[Tuple[int, int]]:
    """(i, j), i < j, inside one of the three diagonal blocks."""
    return [(i, j) for blk in blocks(a, b, c) for i, j in combinations(blk, 2)]


def _z(R, i, power=1) -> LaurentPoly:
    return LaurentPoly.monomial(R, {f"z{i}": 2 * power})


def _t(R, half_power) -> LaurentPoly:
    return LaurentPoly.monomial(R, {"t": half_power})


def one_minus(R, tpow: int, i: int, j: int) -> LaurentPoly:
    """1 - t^tpow z_i/z_j."""
    return LaurentPoly.const(R, 1) - LaurentPoly.monomial(R, {"t": 2 * tpow, f"z{i}": 2, f"z{j}": -2})


# ---------------------------------------------------------------------------
# fixed-point restrictions


def restriction_at_r(a: int, b: int, c: int) -> LaurentPoly:
    """Restriction of the sheaf class at the fixed point r itself."""
    _check_abc(a, b, c)
    r = rect_subset(a, b, c)
    R = roster(a, b, c)
    out = product((_z(R, i, -a) for i in r), R)
    for i in r:
        for j in r.complement:
            out = out * (one_minus(R, 1, j, i) if i < j else one_minus(R, 0, i, j))
    return out


def _block_permutation(r: SubsetIndex, s: SubsetIndex, lo: int, hi: int) -> Dict[int, int]:
    """Order-preserving permutation of [lo, hi] sending s to r (on both s and its complement)."""
    window = range(lo, hi + 1)
    s_in = [x for x in s if lo <= x <= hi]
    r_in = [x for x in r if lo <= x <= hi]
    s_out = [x for x in window if x not in s]
    r_out = [x for x in window if x not in r]
    return dict(zip(s_in + s_out, r_in + r_out))


def restriction_at_s(a: int, b: int, c: int, s: SubsetIndex) -> LaurentPoly:
    """Restriction at an arbitrary fixed point s; zero unless s is inside r."""
    _check_abc(a, b, c)
    r = rect_subset(a, b, c)
    if (s.n, s.N) != (r.n, r.N):
        raise ValueError("s outside the fixed-point set")
    R = roster(a, b, c)
    if not young_subset(s, r):
        return LaurentPoly.zero(R)
    n = r.n
    w = _block_permutation(r, s, n - c + 1, n + b)
    # the class at s is the class at r with z_{w(i)} replaced by z_i
    return restriction_at_r(a, b, c).permute({f"z{w[i]}": f"z{i}" for i in w})


# ---------------------------------------------------------------------------
# normalization monomials


def m_r(a: int, b: int, c: int, R=None) -> LaurentPoly:
    _check_abc(a, b, c)
    n = a + b + c
    N = 2 * n
    R = R or roster(a, b, c)
    e = {"t": b * c}
    for i in range(1, N + 1):
        if i <= n - c:
            e[f"z{i}"] = -n
        elif i <= n + b:
            e[f"z{i}"] = 2 * b - n
        else:
            e[f"z{i}"] = 2 * (b + c) - n
    return LaurentPoly.monomial(R, e)


def m_tilde_inverse(a: int, b: int, c: int, R=None) -> LaurentPoly:
    _check_abc(a, b, c)
    R = R or roster(a, b, c)
    e = {"t": -b * c}
    for i in range(1, a + b + 1):
        e[f"z{i}"] = 2 * (i - 1)
    for j in range(1, b + c + 1):
        e[f"z{j + a + b}"] = 2 * (a + j - 1)
    for k in range(1, a + c + 1):
        e[f"z{k + a + 2 * b + c}"] = 2 * (b + k - 1)
    return LaurentPoly.monomial(R, e)


def m_tilde(a: int, b: int, c: int, R=None) -> LaurentPoly:
    return m_tilde_inverse(a, b, c, R) ** -1


def m_relation_defect(a: int, b: int, c: int) -> LaurentPoly:
    """m_tilde / (prod_i z_i^(n/2+1-i) m_r); the relation as stated asks for 1."""
    n = a + b + c
    R = roster(a, b, c)
    shift = LaurentPoly.monomial(R, {f"z{i}": n + 2 - 2 * i for i in range(1, 2 * n + 1)})
    return m_tilde(a, b, c, R) * (shift * m_r(a, b, c, R)) ** -1


def m_relation_holds(a: int, b: int, c: int) -> bool:
    """m_tilde = prod_i z_i^(n/2+1-i) m_r.  Only true for a = 0: otherwise the
    two sides differ by prod of z_i^a over the last block."""
    return m_relation_defect(a, b, c) == LaurentPoly.const(roster(a, b, c), 1)


# ---------------------------------------------------------------------------
# the pushforward formula


@dataclass(frozen=True)
class Factor:
    """1 - t^tpow z_num/z_den."""

    tpow: int
    num: int
    den: int
    source: str

    def poly(self, R) -> LaurentPoly:
        return one_minus(R, self.tpow, self.num, self.den)

    def final2(self, R) -> LaurentPoly:
        """z_den - t^tpow z_num, times t^(-1/2) when tpow = 2."""
        p = _z(R, self.den) - LaurentPoly.monomial(R, {"t": 2 * self.tpow, f"z{self.num}": 2})
        return p * _t(R, -1) if self.tpow == 2 else p


def lozenge_factors(S: PlanePartition) -> List[Factor]:
    a, b, c = S.a, S.b, S.c
    off_b, off_c = a + b, a + 2 * b + c
    out = [Factor(2, z.first, z.second + off_c, "BC") for z in S.bc_lozenges()]
    out += [Factor(1, z.first, z.second + off_b, "B") for z in S.b_lozenges()]
    out += [Factor(1, z.first + off_b, z.second + off_c, "C") for z in S.c_lozenges()]
    return out


def prefactor_factors(a: int, b: int, c: int) -> List[Factor]:
    return [Factor(1, i, j, "block") for i, j in block_pairs(a, b, c)]


def pp_weight(S: PlanePartition, R) -> LaurentPoly:
    """Weight of the generator p_S: prod over l of prod_{i in s_l} z_{i+a+b}^{-1}.

    The subsets s_l index the middle block, hence the shift by a+b.
    """
    off = S.a + S.b
    return product((_z(R, i + off, -1) for row in S.rows for i in row), R)


def pushforward_terms(a: int, b: int, c: int) -> List[Tuple[PlanePartition, LaurentPoly, List[Factor]]]:
    """(S, monomial, factors) with the pushforward = sum of monomial * prod of factors."""
    _check_abc(a, b, c)
    R = roster(a, b, c)
    pre = prefactor_factors(a, b, c)
    return [(S, pp_weight(S, R), pre + lozenge_factors(S)) for S in enumerate_pp(a, b, c)]


@lru_cache(maxsize=None)
def _mu_cached(a, b, c, form):
    R = roster(a, b, c)
    if form == "final":
        pre = product((f.poly(R) for f in prefactor_factors(a, b, c)), R)
        total = LaurentPoly.zero(R)
        for S, mono, factors in pushforward_terms(a, b, c):
            total = total + mono * product((f.poly(R) for f in lozenge_factors(S)), R)
        return pre * total
    if form == "final2":
        pre = product((f.final2(R) for f in prefactor_factors(a, b, c)), R)
        total = LaurentPoly.zero(R)
        for S in enumerate_pp(a, b, c):
            total = total + product((f.final2(R) for f in lozenge_factors(S)), R)
        return pre * total
    if form == "phi":
        total = LaurentPoly.zero(R)
        for S in enumerate_pp(a, b, c):
            total = total + product((f.final2(R) for f in lozenge_factors(S)), R)
        return total
    raise ValueError(f"unknown form {form!r}")


def mu_pushforward_abc(a: int, b: int, c: int, form: str = "final") -> LaurentPoly:
    """The pushforward to upper triangular matrices.

    ``final`` gives the class itself; ``final2`` gives m_tilde^{-1} times it,
    arranged as a polynomial; ``phi`` gives the sum over plane partitions
    of the lozenge products in the ``final2`` arrangement, without the block
    prefactor.  A negative ``a`` (r outside the staircase) gives 0.
    """
    if a < 0:
        _check_abc(a, b, c, allow_negative=True)
        return LaurentPoly.zero(make_roster(2 * max(b + c + a, 0)))
    _check_abc(a, b, c)
    return _mu_cached(a, b, c, form)


def facpol_prefactor(a: int, b: int, c: int) -> LaurentPoly:
    """prod over block pairs of (t^{-1/2} z_j - t^{1/2} z_i)."""
    R = roster(a, b, c)
    return product((LaurentPoly.monomial(R, {"t": -1, f"z{j}": 2}) - LaurentPoly.monomial(R, {"t": 1, f"z{i}": 2})
                    for i, j in block_pairs(a, b, c)), R)


def phi_r(a: int, b: int, c: int) -> LaurentPoly:
    """Phi_r = m_tilde^{-1} mu / prod (t^{-1/2} z_j - t^{1/2} z_i)."""
    from .laurent import divide_exact

    return divide_exact(mu_pushforward_abc(a, b, c, "final2"), facpol_prefactor(a, b, c))


def block_symmetric(p: LaurentPoly, a: int, b: int, c: int) -> bool:
    for blk in blocks(a, b, c):
        for i, j in zip(blk, blk[1:]):
            if p.swap(f"z{i}", f"z{j}") != p:
                return False
    return True


def dual_specialization(a: int, b: int, c: int) -> LaurentPoly:
    """m_tilde^{-1} mu at z = (t^-1/2 x (a+b), t^1/2 x b, t^-1/2 x c, t^1/2 x (a+c))."""
    R = roster(a, b, c)
    signs = [-1] * (a + b) + [1] * b + [-1] * c + [1] * (a + c)
    sub = {f"z{i}": LaurentPoly.monomial(R, {"t": e}) for i, e in enumerate(signs, 1)}
    return substitute(mu_pushforward_abc(a, b, c, "final2"), sub)


def dual_specialization_expected(a: int, b: int, c: int) -> LaurentPoly:
    n = a + b + c
    R = roster(a, b, c)
    one = LaurentPoly.const(R, 1)
    tau = _t(R, 1) + _t(R, -1)
    return (one - _t(R, 2)) ** (n * (n - 1)) * tau ** (b * c)


@dataclass(frozen=True)
class LocalizedClass:
    """numerator / denominator, kept as an exact pair."""

    numerator: LaurentPoly
    denominator: LaurentPoly


def pi_pushforward_abc(a: int, b: int, c: int, reduce: bool = True) -> LocalizedClass:
    """Pushforward to a point: mu / prod_{i<j} (1 - t z_i/z_j).

    With ``reduce`` the block factors are cancelled by exact division.
    """
    from .laurent import divide_exact

    _check_abc(a, b, c)
    n = a + b + c
    R = roster(a, b, c)
    mu = mu_pushforward_abc(a, b, c)
    if not reduce:
        den = product((one_minus(R, 1, i, j) for i, j in combinations(range(1, 2 * n + 1), 2)), R)
        return LocalizedClass(mu, den)
    inside = set(block_pairs(a, b, c))
    block = product((one_minus(R, 1, i, j) for i, j in inside), R)
    cross = product((one_minus(R, 1, i, j) for i, j in combinations(range(1, 2 * n + 1), 2) if (i, j) not in inside), R)
    return LocalizedClass(divide_exact(mu, block), cross)


# ---------------------------------------------------------------------------
# the shape of the decomposition into FPL-indexed terms


@dataclass(frozen=True)
class ShapeReport:
    passed: bool
    terms: int
    factor_counts: Tuple[int, ...]
    bad_exponents: Tuple[str, ...]
    bad_monomials: Tuple[str, ...]


def conj3_shape(a: int, b: int, c: int) -> ShapeReport:
    """Check each plane-partition term against m_f prod (1 - t^{r} z_i/z_j)."""
    n = a + b + c
    R = roster(a, b, c)
    mt = m_tilde(a, b, c, R)
    counts, bad_exp, bad_mono = [], [], []
    total = LaurentPoly.zero(R)
    for S, mono, factors in pushforward_terms(a, b, c):
        counts.append(len(factors))
        bad_exp += [f"{S}: t^{f.tpow}" for f in factors if f.tpow not in (1, 2)]
        twos = sum(1 for f in factors if f.tpow == 2)
        closed = mt * _t(R, -twos) * product((_z(R, f.den) for f in factors), R)
        if closed != mono:
            bad_mono.append(str(S))
        total = total + mono * product((f.poly(R) for f in factors), R)
    ok = (not bad_exp and not bad_mono and all(k == n * (n - 1) for k in counts)
          and total == mu_pushforward_abc(a, b, c))
    return ShapeReport(ok, len(counts), tuple(counts), tuple(bad_exp), tuple(bad_mono))


# ---------------------------------------------------------------------------
# degree of the orbital variety


def vandermonde(xs: Sequence[int]) -> int:
    return prod(xs[j] - xs[i] for i in range(len(xs)) for j in range(i + 1, len(xs)))


def weyl_dim(seq: Sequence[int], k: int = None) -> int:
    """Delta(seq)/Delta(1..k) for an increasing k-tuple of positive integers."""
    k = len(seq) if k is None else k
    if len(seq) != k:
        raise ValueError("need exactly k entries")
    if list(seq) != sorted(set(seq)) or (seq and seq[0] < 1):
        raise ValueError("entries must be strictly increasing positive integers")
    num, den = vandermonde(list(seq)), vandermonde(list(range(1, k + 1)))
    q = Fraction(num, den)
    if q.denominator != 1:
        raise ArithmeticError("Weyl dimension is not an integer")
    return int(q)


def orbital_degree(a: int, b: int, c: int) -> int:
    """sum over b-subsets s of [b+c] of dim V_{sbar,a+b} dim V_{s,a+c}."""
    _check_abc(a, b, c)
    tail = list(range(b + c + 1, b + c + a + 1))
    total = 0
    for s in enumerate_subsets(b, b + c) if b + c else [SubsetIndex.of([], 0)]:
        s_el, sbar = list(s.elements), list(s.complement)
        total += weyl_dim(s_el + tail, a + b) * weyl_dim(sbar + tail, a + c)
    return total


# ---------------------------------------------------------------------------
# wheel condition for the pushforward


def _triple_kind(a, b, c, tr):
    blk = [next(k for k, rg in enumerate(blocks(a, b, c)) if x in rg) for x in tr]
    if len(set(blk)) < 3:
        return "same-block"
    return "cross-block" if blk == [0, 1, 2] else "mixed"


@dataclass(frozen=True)
class WheelReport:
    passed: bool
    triples: int
    same_block: int
    cross_block: int
    failures: Tuple[str, ...]


def wheel_vanishing_check(a: int, b: int, c: int, seeds: Iterable[int] = None) -> WheelReport:
    """m_tilde^{-1} mu vanishes at z_{i1}, z_{i2}, z_{i3} = z, tz, t^2 z.

    Two indices in one block: the block prefactor vanishes.  One index
    per block: at the representative j = i+k-a-1 every plane partition
    has a B, C or BC lozenge whose factor vanishes, and the full sum is
    checked at every triple.  With ``seeds`` the full sum is checked by
    exact evaluation instead.
    """
    _check_abc(a, b, c)
    n = a + b + c
    N = 2 * n
    R = roster(a, b, c)
    full = mu_pushforward_abc(a, b, c, "final2")
    pre = product((f.final2(R) for f in prefactor_factors(a, b, c)), R)
    pps = enumerate_pp(a, b, c)
    fails, same, cross, count = [], 0, 0, 0
    for tr in combinations(range(1, N + 1), 3):
        count += 1
        i1, i2, i3 = tr
        z = LaurentPoly.var(R, f"z{i1}")
        sub = {f"z{i2}": z * _t(R, 2), f"z{i3}": z * _t(R, 4)}
        kind = _triple_kind(a, b, c, tr)
        if kind == "same-block":
            same += 1
            if substitute(pre, sub):
                fails.append(f"prefactor at {tr}")
            continue
        if kind == "cross-block":
            cross += 1
            i, j, k = i1, i2 - a - b, i3 - a - 2 * b - c
            if j == i + k - a - 1:
                for S in pps:
                    if all(substitute(f.final2(R), sub) for f in lozenge_factors(S)):
                        fails.append(f"no vanishing lozenge for {S} at {tr}")
        if seeds is None:
            if substitute(full, sub):
                fails.append(f"sum at {tr}")
        else:
            for seed in seeds:
                pt = sample_point(R, seed)
                pt[f"z{i2}"] = pt[f"z{i1}"] * pt["t"]
                pt[f"z{i3}"] = pt[f"z{i1}"] * pt["t"] ** 2
                if evaluate(full, pt):
                    fails.append(f"sum at {tr} seed={seed}")
    return WheelReport(not fails, count, same, cross, tuple(fails))


# ---------------------------------------------------------------------------
# conjecture checks


def conj1_failures(a: int, b: int, c: int) -> List[str]:
    """restriction_at_s == m_r Z_{r,s} for every fixed point s."""
    from .cpl import partition_Z_rs

    r = rect_subset(a, b, c)
    R = roster(a, b, c)
    mr = m_r(a, b, c, R)
    fails = []
    for s in enumerate_subsets(r.n, r.N):
        lhs = restriction_at_s(a, b, c, s)
        rhs = mr * partition_Z_rs(r, s, R)
        if lhs != rhs:
            fails.append(str(s))
    return fails


def conj2_failures(a: int, b: int, c: int) -> List[str]:
    """mu == (1-t)^{n(n-1)} m_tilde Psi_r with Psi_r from the wheel solver."""
    from .qkz import psi_basis

    n = a + b + c
    r = rect_subset(a, b, c)
    fails = []
    vec = psi_basis(n)
    R = roster(a, b, c)
    # vec stores (1-t)^{n(n-1)} Psi_r already
    rhs = m_tilde(a, b, c, R) * vec[r]
    if mu_pushforward_abc(a, b, c) != rhs:
        fails.append(f"pushforward ({a},{b},{c})")
    if dual_specialization(a, b, c) != dual_specialization_expected(a, b, c):
        fails.append(f"specialization ({a},{b},{c})")
    return fails
