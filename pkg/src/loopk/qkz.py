"""Wheel-condition polynomials, the basis Psi_r and the level 1 qKZ system.

The entries Psi_r have denominators: as functions of u = t^(1/2) their
coefficients are rational with poles at t = 1.  Every Psi_r is stored
scaled, as the Laurent polynomial P_r = (1-t)^(n(n-1)) Psi_r.  The scale
is a common scalar, so the wheel condition, the qKZ system and all
comparisons are unaffected; only the dual-basis values pick it up.

The solver works one sample value of u at a time (exact integer linear
algebra through flint), interpolates the coefficients in u, and then
certifies the interpolated result symbolically: wheel vanishing plus the
dual-basis conditions pin Psi_r down uniquely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from .combinatorics import (
    LinkPattern,
    SubsetIndex,
    boxes,
    catalan,
    enumerate_subsets,
    linkpattern_to_subset,
    staircase_test,
    subset_to_linkpattern,
)
from .cpl import e_i_apply
from .laurent import QU, Q_U, LaurentPoly, evaluate, make_roster, sample_point, substitute


class WheelError(ArithmeticError):
    """Raised when the solved space does not have the expected dimension."""


def full_subsets(n: int) -> List[SubsetIndex]:
    """Subsets r of [2n] inside the staircase, i.e. full link patterns."""
    return [r for r in enumerate_subsets(n, 2 * n) if staircase_test(r)]


def scale_exponent(n: int) -> int:
    return n * (n - 1)


def one_minus_t(R, power: int = 1) -> LaurentPoly:
    return (LaurentPoly.const(R, 1) - LaurentPoly.monomial(R, {"t": 2})) ** power


# ---------------------------------------------------------------------------
# the linear system


def _monomials(N: int, d: int) -> List[Tuple[int, ...]]:
    out = []

    def rec(k, left, cur):
        if k == N - 1:
            out.append(tuple(cur + [left]))
            return
        for e in range(left, -1, -1):
            rec(k + 1, left - e, cur + [e])

    if N == 0:
        return [()]
    rec(0, d, [])
    return out


@lru_cache(maxsize=None)
def _wheel_structure(n: int):
    """Monomials of degree n(n-1) in 2n variables and the wheel rows.

    A row is a list of (column, k) meaning entry t^k.
    """
    N, d = 2 * n, n * (n - 1)
    ms = _monomials(N, d)
    rows: Dict[tuple, Dict[int, int]] = {}
    for tr in itertools.combinations(range(N), 3):
        i1, i2, i3 = tr
        rest = [x for x in range(N) if x not in tr]
        for col, m in enumerate(ms):
            key = (tr, m[i1] + m[i2] + m[i3]) + tuple(m[x] for x in rest)
            rows.setdefault(key, {})[col] = m[i2] + 2 * m[i3]
    return ms, [sorted(r.items()) for r in rows.values()]


def _wheel_matrix(n: int, t: Fraction) -> flint.fmpz_mat:
    """Wheel rows at t, scaled to integers."""
    ms, rows = _wheel_structure(n)
    num, den = t.numerator, t.denominator
    out = []
    for row in rows:
        top = max((k for _, k in row), default=0)
        dense = [0] * len(ms)
        for col, k in row:
            dense[col] = num ** k * den ** (top - k)
        out.append(dense)
    if not out:
        return flint.fmpz_mat(0, len(ms))
    return flint.fmpz_mat(out)


def wheel_kernel(n: int, t: Fraction) -> List[List[int]]:
    """Integer basis of the wheel subspace at a rational value of t."""
    ms, rows = _wheel_structure(n)
    if not rows:
        return [[1 if k == j else 0 for k in range(len(ms))] for j in range(len(ms))]
    K, nullity = _wheel_matrix(n, t).nullspace()
    return [[int(K[i, j]) for i in range(len(ms))] for j in range(nullity)]


def _dual_exponent(m: Sequence[int], s: SubsetIndex) -> int:
    """Power of u in the monomial at z_i = u^{+1} (i in s), u^{-1} (i not in s)."""
    inside = set(s.elements)
    return sum(e if i in inside else -e for i, e in enumerate(m, 1))


def _fq(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


def _qf(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def psi_at(n: int, u: Fraction) -> Dict[SubsetIndex, List[Fraction]]:
    """Coefficient vectors of P_r = (1-t)^(n(n-1)) Psi_r at one value of u."""
    u = Fraction(u)
    t = u * u
    ms, _ = _wheel_structure(n)
    K = wheel_kernel(n, t)
    full = full_subsets(n)
    if len(K) != len(full):
        raise WheelError(f"wheel space at u={u} has dimension {len(K)}, expected {len(full)}")
    powers = {}
    E = []
    for s in full:
        row = []
        for k in range(len(K)):
            acc = Fraction(0)
            for m, c in zip(ms, K[k]):
                if c:
                    e = _dual_exponent(m, s)
                    if e not in powers:
                        powers[e] = u ** e
                    acc += c * powers[e]
            row.append(_fq(acc))
        E.append(row)
    EK = flint.fmpq_mat(E)
    if EK.det() == 0:
        raise WheelError(f"dual-basis matrix is singular at u={u}")
    tau = u + 1 / u
    scale = (1 - t) ** scale_exponent(n)
    D = flint.fmpq_mat([[_fq(tau ** boxes(r) * scale) if a == b else 0 for b, r in enumerate(full)]
                        for a in range(len(full))])
    lam = EK.inv() * D
    out = {}
    for b, r in enumerate(full):
        coeffs = [_qf(lam[k, b]) for k in range(len(K))]
        out[r] = [sum((c * K[k][i] for k, c in enumerate(coeffs) if K[k][i]), Fraction(0)) for i in range(len(ms))]
    return out


def dual_basis_matrix(n: int, u: Fraction) -> flint.fmpq_mat:
    """Values of a wheel-space basis at the dual-basis points, at one u."""
    ms, _ = _wheel_structure(n)
    u = Fraction(u)
    K = wheel_kernel(n, u * u)
    return flint.fmpq_mat([[_fq(sum((c * u ** _dual_exponent(m, s) for m, c in zip(ms, K[k]) if c), Fraction(0)))
                            for k in range(len(K))] for s in full_subsets(n)])


def _interpolate(samples: Sequence[Fraction], values: Sequence[Sequence[Fraction]], lo: int, hi: int):
    """Fit sum_{e=lo..hi} a_e u^e through the samples, column by column."""
    V = flint.fmpq_mat([[_fq(u ** e) for e in range(lo, hi + 1)] for u in samples])
    Y = flint.fmpq_mat([[_fq(v) for v in row] for row in values])
    A = V.solve(Y)
    return [[_qf(A[i, j]) for j in range(Y.ncols())] for i in range(A.nrows())]


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class QkzVector:
    """Entries P_r indexed by full patterns, with Psi_r = P_r / (1-t)^scale."""

    n: int
    entries: Dict[SubsetIndex, LaurentPoly]
    scale: int

    def __getitem__(self, key) -> LaurentPoly:
        if isinstance(key, LinkPattern):
            key = linkpattern_to_subset(key)
        return self.entries[key]

    def patterns(self) -> List[LinkPattern]:
        return [subset_to_linkpattern(r) for r in self.entries]


@dataclass(frozen=True)
class WheelSpace:
    n: int
    monomials: Tuple[Tuple[int, ...], ...]
    basis: Tuple[LaurentPoly, ...]
    t_value: Optional[Fraction] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _u_range(n: int) -> Tuple[int, int]:
    # Loose on purpose: interpolation is checked on extra samples and the
    # result is certified symbolically, so a wide range only costs time.
    # Observed ranges are [-1, 5] at n = 2 and [-3, 15] at n = 3.
    d = n * (n - 1)
    return -d, 3 * d


_PSI_CACHE: Dict[int, QkzVector] = {}


def psi_basis(n: int, certify: bool = True) -> QkzVector:
    """The basis Psi_r (scaled by (1-t)^(n(n-1))) for every full pattern r."""
    if n in _PSI_CACHE:
        return _PSI_CACHE[n]
    N = 2 * n
    R = make_roster(N)
    ms, _ = _wheel_structure(n)
    full = full_subsets(n)
    lo, hi = _u_range(n)
    count = hi - lo + 1
    samples = [Fraction(k + 2) for k in range(count + 2)]
    data = [psi_at(n, u) for u in samples]
    entries = {}
    for r in full:
        values = [d[r] for d in data]
        coeffs = _interpolate(samples[:count], values[:count], lo, hi)
        for u, check in zip(samples[count:], values[count:]):
            for i in range(len(ms)):
                got = sum((coeffs[e][i] * u ** (lo + e) for e in range(count) if coeffs[e][i]), Fraction(0))
                if got != check[i]:
                    raise WheelError("interpolation in u failed; raise the degree bound")
        terms = {}
        for i, m in enumerate(ms):
            for e in range(count):
                c = coeffs[e][i]
                if c:
                    terms[(lo + e,) + tuple(2 * x for x in m)] = c
        entries[r] = LaurentPoly(R, terms)
    vec = QkzVector(n, entries, scale_exponent(n))
    if certify:
        bad = wheel_failures(vec) + dual_basis_failures(vec)
        if bad:
            raise WheelError(f"interpolated Psi fails certification: {bad[:3]}")
    _PSI_CACHE[n] = vec
    return vec


def wheel_space(n: int, t_value: Fraction = None) -> WheelSpace:
    """Basis of the wheel space; symbolic via psi_basis, or at a rational t."""
    ms, _ = _wheel_structure(n)
    want = catalan(n)
    if t_value is None:
        basis = tuple(psi_basis(n).entries.values())
    else:
        R = make_roster(2 * n)
        basis = tuple(LaurentPoly(R, {(0,) + tuple(2 * x for x in m): c for m, c in zip(ms, vec) if c})
                      for vec in wheel_kernel(n, Fraction(t_value)))
    if len(basis) != want:
        raise WheelError(f"wheel space has dimension {len(basis)}, expected c_{n} = {want}")
    return WheelSpace(n, tuple(ms), basis, None if t_value is None else Fraction(t_value))


def wheel_dimension_at(n: int, t_value: Fraction) -> int:
    """Nullity of the wheel system at one rational t (an upper bound for the generic dimension)."""
    return len(wheel_kernel(n, Fraction(t_value)))


# ---------------------------------------------------------------------------
# checks


def wheel_substitutions(R, N: int):
    for i1, i2, i3 in itertools.combinations(range(1, N + 1), 3):
        z = LaurentPoly.var(R, f"z{i1}")
        yield (i1, i2, i3), {
            f"z{i2}": z * LaurentPoly.monomial(R, {"t": 2}),
            f"z{i3}": z * LaurentPoly.monomial(R, {"t": 4}),
        }


def wheel_failures(vec: QkzVector) -> List[str]:
    N = 2 * vec.n
    fails = []
    for r, p in vec.entries.items():
        for tr, sub in wheel_substitutions(p.vars, N):
            if substitute(p, sub):
                fails.append(f"wheel r={r} at {tr}")
    return fails


def dual_point(R, s: SubsetIndex) -> Dict[str, LaurentPoly]:
    inside = set(s.elements)
    return {f"z{i}": LaurentPoly.monomial(R, {"t": 1 if i in inside else -1}) for i in range(1, s.N + 1)}


def dual_basis_failures(vec: QkzVector) -> List[str]:
    fails = []
    full = list(vec.entries)
    for r, p in vec.entries.items():
        R = p.vars
        tau = LaurentPoly.monomial(R, {"t": 1}) + LaurentPoly.monomial(R, {"t": -1})
        for s in full:
            got = substitute(p, dual_point(R, s))
            want = tau ** boxes(r) * one_minus_t(R, vec.scale) if r == s else LaurentPoly.zero(R)
            if got != want:
                fails.append(f"dual r={r} s={s}")
    return fails


def e_i_component(vec: QkzVector, r: SubsetIndex, i: int) -> LaurentPoly:
    """(e_i Psi)_r = sum over s with e_i s = r of tau^delta Psi_s."""
    target = subset_to_linkpattern(r)
    R = vec[r].vars
    tau = LaurentPoly.monomial(R, {"t": 1}) + LaurentPoly.monomial(R, {"t": -1})
    total = LaurentPoly.zero(R)
    for s, p in vec.entries.items():
        img, power = e_i_apply(subset_to_linkpattern(s), i)
        if img == target:
            total = total + tau ** power * p
    return total


def exchange_sides(vec: QkzVector, r: SubsetIndex, i: int):
    """Both sides of the exchange equation times (1 - t z_i/z_{i+1})."""
    R = vec[r].vars
    zi, zj = f"z{i}", f"z{i + 1}"
    z = LaurentPoly.monomial(R, {zi: 2, zj: -2})
    t = LaurentPoly.monomial(R, {"t": 2})
    one = LaurentPoly.const(R, 1)
    lhs = (one - t * z) * vec[r].swap(zi, zj)
    rhs = (z - t) * vec[r] + LaurentPoly.monomial(R, {"t": 1}) * (one - z) * e_i_component(vec, r, i)
    return lhs, rhs


def qkz_exchange_check(vec: QkzVector, i: int, seeds: Iterable[int] = None) -> bool:
    """Symbolic when seeds is None, otherwise exact evaluation at each seeded point."""
    for r in vec.entries:
        lhs, rhs = exchange_sides(vec, r, i)
        if seeds is None:
            if lhs != rhs:
                return False
        else:
            for seed in seeds:
                pt = sample_point(lhs.vars, seed)
                if evaluate(lhs, pt) != evaluate(rhs, pt):
                    return False
    return True


def rotation_sides(vec: QkzVector, r: SubsetIndex):
    """Psi_r(z_2,...,z_N,t^3 z_1) and (-t^(1/2))^(3(n-1)) (rho Psi)_r."""
    n, N = vec.n, 2 * vec.n
    R = vec[r].vars
    sub = {f"z{k}": LaurentPoly.var(R, f"z{k + 1}") for k in range(1, N)}
    sub[f"z{N}"] = LaurentPoly.monomial(R, {"t": 6, "z1": 2})
    lhs = substitute(vec[r], sub)
    # (rho Psi)_r is read as Psi at the right shift of r; the other reading
    # (Psi at the left shift) fails from n = 3 on
    pre = linkpattern_to_subset(subset_to_linkpattern(r).rotate(1))
    rhs = vec[pre] * LaurentPoly.monomial(R, {"t": 3 * (n - 1)}, (-1) ** (3 * (n - 1)))
    return lhs, rhs


def qkz_rotation_check(vec: QkzVector, seeds: Iterable[int] = None) -> bool:
    for r in vec.entries:
        lhs, rhs = rotation_sides(vec, r)
        if seeds is None:
            if lhs != rhs:
                return False
        else:
            for seed in seeds:
                pt = sample_point(lhs.vars, seed)
                if evaluate(lhs, pt) != evaluate(rhs, pt):
                    return False
    return True


# ---------------------------------------------------------------------------
# specializations


U = QU(0, 1)


def tau_one_value(p: LaurentPoly, scale: int):
    """p / (1-t)^scale at z_i = 1 and t^(1/2) a root of u^2 - u + 1 (so tau = 1)."""
    roots = {v: QU(1) for v in p.vars}
    roots["t"] = U
    val = evaluate(p.to_ring(Q_U), roots)
    return val / (QU(1) - U * U) ** scale


def rs_count(p: LaurentPoly, scale: int = 0) -> int:
    """Psi_r at z_i = 1, tau = 1, for Psi_r = p / (1-t)^scale."""
    val = tau_one_value(p, scale)
    if val.c1 != 0 or Fraction(val.c0).denominator != 1:
        raise ValueError(f"specialization {val} is not a rational integer")
    out = int(val.c0)
    if out < 0:
        raise ValueError(f"specialization {out} is negative")
    return out


def rs_counts(n: int) -> Dict[SubsetIndex, int]:
    vec = psi_basis(n)
    return {r: rs_count(p, vec.scale) for r, p in vec.entries.items()}


def psi_abc(a: int, b: int, c: int) -> LaurentPoly:
    """(1-t)^(n(n-1)) Psi_r for the rectangle pattern of type (a,b,c), via the pushforward formula.

    Equals m_tilde^{-1} times the pushforward; exact division by
    (1-t)^(n(n-1)) is not possible in general, so the scale is kept.
    """
    from .geometry import m_tilde, mu_pushforward_abc

    mu = mu_pushforward_abc(a, b, c)
    return m_tilde(a, b, c, mu.vars) ** -1 * mu


def periodic_e_apply(lp: LinkPattern, i: int) -> Tuple[LinkPattern, int]:
    """e_i on a full pattern read on a circle; e_N joins points N and 1."""
    N = lp.N
    if i < N:
        img, power = e_i_apply(lp, i)
        return img, power
    img, power = e_i_apply(lp.rotate(1), 1)
    return img.rotate(-1), power


def rs_counts_hamiltonian(n: int) -> Dict[SubsetIndex, int]:
    """Counts from the ground state of H = sum_i e_i (periodic, loop weight 1).

    Every column of H sums to N, so H v = N v has a positive solution; it is
    normalized to smallest entry 1.  This route never touches the wheel
    solver.
    """
    full = full_subsets(n)
    N = 2 * n
    idx = {r: k for k, r in enumerate(full)}
    H = flint.fmpz_mat(len(full), len(full))
    for r in full:
        lp = subset_to_linkpattern(r)
        for i in range(1, N + 1):
            img, _ = periodic_e_apply(lp, i)
            H[idx[linkpattern_to_subset(img)], idx[r]] += 1
    for k in range(len(full)):
        H[k, k] -= N
    kernel, nullity = H.nullspace()
    if nullity != 1:
        raise ArithmeticError(f"ground state is not unique (nullity {nullity})")
    vec = [Fraction(int(kernel[k, 0])) for k in range(len(full))]
    low = min(abs(v) for v in vec)
    vec = [v / low if v > 0 else -v / low for v in vec]
    if any(v.denominator != 1 for v in vec):
        raise ArithmeticError("ground state is not integral after normalization")
    return {r: int(v) for r, v in zip(full, vec)}
