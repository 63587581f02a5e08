"""Sparse multivariate Laurent polynomials with half-integer exponents.

Exponents are stored doubled (``exp2``), so ``t^(1/2)`` has exp2 = 1 and
everything stays integral.  Coefficients live either in Q (ring ``"Q"``) or
in Q[u]/(u^2 - u + 1) (ring ``"Q_u"``), where u plays the role of t^(1/2)
at the point where t^(1/2) + t^(-1/2) = 1.

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Q = "Q"
Q_U = "Q_u"

Exp = Tuple[int, ...]


class DivisionError(ArithmeticError):
    """Raised by divide_exact when the divisor does not divide exactly."""


class RosterError(ValueError):
    pass


def _norm(c):
    # keep integral rationals as plain ints, they are much faster
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class QU:
    """Element c0 + c1*u of Q[u]/(u^2 - u + 1)."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0=0, c1=0):
        self.c0 = _norm(Fraction(c0))
        self.c1 = _norm(Fraction(c1))

    @staticmethod
    def lift(x):
        return x if isinstance(x, QU) else QU(x, 0)

    def __add__(self, other):
        o = QU.lift(other)
        return QU(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return QU(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-QU.lift(other))

    def __rsub__(self, other):
        return QU.lift(other) - self

    def __mul__(self, other):
        o = QU.lift(other)
        # u^2 = u - 1
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        uu = a1 * b1
        return QU(a0 * b0 - uu, a0 * b1 + a1 * b0 + uu)

    __rmul__ = __mul__

    def norm(self):
        # N(c0 + c1 u) = (c0 + c1 u)(c0 + c1 ubar), ubar = 1 - u
        return self.c0 * self.c0 + self.c0 * self.c1 + self.c1 * self.c1

    def inverse(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("zero in Q[u]/(u^2-u+1)")
        # conjugate of c0 + c1 u is c0 + c1 (1 - u)
        return QU(Fraction(self.c0 + self.c1) / nm, Fraction(-self.c1) / nm)

    def __truediv__(self, other):
        return self * QU.lift(other).inverse()

    def __rtruediv__(self, other):
        return QU.lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QU(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c1 == 0 and self.c0 == other
        if not isinstance(other, QU):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __bool__(self):
        return bool(self.c0) or bool(self.c1)

    def __repr__(self):
        return f"QU({self.c0}, {self.c1})"


U = QU(0, 1)


def _inv(c):
    if isinstance(c, QU):
        return c.inverse()
    return Fraction(1) / c


def _fmt_rat(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def make_roster(N: int = 0, n: int = 0, t: bool = True) -> Tuple[str, ...]:
    """Standard variable roster ``(t, z1..zN, y1..yn)``."""
    names = ["t"] if t else []
    names += [f"z{i}" for i in range(1, N + 1)]
    names += [f"y{i}" for i in range(1, n + 1)]
    return tuple(names)


Coeff = Union[int, Fraction, QU]


class LaurentPoly:
    """A Laurent polynomial over a fixed variable roster.

    ``terms`` maps exp2 tuples (doubled exponents) to nonzero coefficients.
    """

    __slots__ = ("vars", "ring", "terms", "_index")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, Coeff] = None, ring: str = Q):
        self.vars = tuple(vars)
        self.ring = ring
        k = len(self.vars)
        clean: Dict[Exp, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != k:
                    raise RosterError(f"exponent {e} does not match roster of size {k}")
                c = _coerce(c, ring)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._index = None

    # -- construction helpers -------------------------------------------
    @classmethod
    def _raw(cls, vars, terms, ring):
        p = cls.__new__(cls)
        p.vars = vars
        p.ring = ring
        p.terms = terms
        p._index = None
        return p

    @classmethod
    def zero(cls, vars, ring=Q):
        return cls._raw(tuple(vars), {}, ring)

    @classmethod
    def const(cls, vars, c, ring=Q):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, ring)

    @classmethod
    def monomial(cls, vars, exp2: Mapping[str, int] = None, coeff=1, ring=Q):
        """Monomial from a {name: doubled exponent} map."""
        vars = tuple(vars)
        e = [0] * len(vars)
        for name, v in (exp2 or {}).items():
            e[vars.index(name)] += v
        return cls(vars, {tuple(e): coeff}, ring)

    @classmethod
    def var(cls, vars, name, power: Fraction = 1, ring=Q):
        """``name ** power``; power may be a half-integer."""
        p2 = Fraction(power) * 2
        if p2.denominator != 1:
            raise ValueError("only half-integer powers are representable")
        return cls.monomial(vars, {name: int(p2)}, ring=ring)

    def index(self, name: str) -> int:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vars)}
        return self._index[name]

    # -- basic protocol --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _check(self, other: "LaurentPoly"):
        if self.vars != other.vars:
            raise RosterError(f"roster mismatch: {self.vars} vs {other.vars}")
        if self.ring != other.ring:
            raise RosterError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.const(self.vars, other, self.ring)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, QU)):
            return self == LaurentPoly.const(self.vars, other, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        return add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return add(self, -self._lift(other))

    def __rsub__(self, other):
        return add(self._lift(other), -self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(-x for x in e): _inv(c)}, self.ring).__pow__(-k)
        out = LaurentPoly.const(self.vars, 1, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def scale(self, c) -> "LaurentPoly":
        c = _coerce(c, self.ring)
        if not c:
            return LaurentPoly.zero(self.vars, self.ring)
        return LaurentPoly._raw(self.vars, {e: _norm(v * c) for e, v in self.terms.items()}, self.ring)

    def shift(self, exp2: Exp, coeff=1) -> "LaurentPoly":
        """Multiply by the monomial ``coeff * x^(exp2/2)``."""
        coeff = _coerce(coeff, self.ring)
        return LaurentPoly._raw(
            self.vars,
            {tuple(a + b for a, b in zip(e, exp2)): _norm(c * coeff) for e, c in self.terms.items()},
            self.ring,
        )

    def coeff(self, exp2: Exp):
        return self.terms.get(tuple(exp2), 0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def min_exp2(self) -> Exp:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def max_exp2(self) -> Exp:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(col) for col in zip(*self.terms))

    def degree2(self, names: Iterable[str]) -> set:
        """Set of total doubled degrees in the given variables."""
        idx = [self.index(v) for v in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def permute(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        """Rename variables according to a permutation of the roster."""
        src = [self.index(mapping.get(v, v)) for v in self.vars]
        # new exponent at slot k is the old exponent at slot of the preimage
        inv = [0] * len(self.vars)
        for k, s in enumerate(src):
            inv[s] = k
        return LaurentPoly._raw(
            self.vars,
            {tuple(e[inv[k]] for k in range(len(e))): c for e, c in self.terms.items()},
            self.ring,
        )

    def swap(self, u: str, v: str) -> "LaurentPoly":
        return self.permute({u: v, v: u})

    def extend(self, vars: Sequence[str]) -> "LaurentPoly":
        """Re-express over a larger (or reordered) roster."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(vars)
            for p, x in zip(pos, e):
                f[p] = x
            out[tuple(f)] = c
        return LaurentPoly._raw(vars, out, self.ring)

    def restrict(self, vars: Sequence[str]) -> "LaurentPoly":
        """Drop variables that do not occur (error if one does)."""
        vars = tuple(vars)
        keep = [self.index(v) for v in vars]
        dropped = [i for i in range(len(self.vars)) if i not in keep]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise RosterError("cannot drop a variable that occurs")
            out[tuple(e[i] for i in keep)] = c
        return LaurentPoly._raw(vars, out, self.ring)

    def to_ring(self, ring: str) -> "LaurentPoly":
        if ring == self.ring:
            return self
        if ring == Q_U:
            return LaurentPoly._raw(self.vars, {e: QU(c) for e, c in self.terms.items()}, Q_U)
        out = {}
        for e, c in self.terms.items():
            if c.c1:
                raise ValueError("u-component nonzero; not a rational polynomial")
            out[e] = c.c0
        return LaurentPoly._raw(self.vars, out, Q)

    def constant_value(self):
        """Coefficient of the constant monomial, error if anything else occurs."""
        if not self.terms:
            return 0
        zero = (0,) * len(self.vars)
        if set(self.terms) != {zero}:
            raise ValueError("not a constant")
        return self.terms[zero]

    # -- printing / serialization ---------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = []
            for name, x in zip(self.vars, e):
                if x == 0:
                    continue
                if x == 2:
                    mono.append(name)
                elif x % 2 == 0:
                    mono.append(f"{name}^{x // 2}")
                else:
                    mono.append(f"{name}^({x}/2)")
            cs = f"({c.c0}+{c.c1}*u)" if isinstance(c, QU) else _fmt_rat(c)
            if mono:
                if cs == "1":
                    parts.append("*".join(mono))
                elif cs == "-1":
                    parts.append("-" + "*".join(mono))
                else:
                    parts.append(cs + "*" + "*".join(mono))
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        terms = []
        for e, c in sorted(self.terms.items()):
            if self.ring == Q_U:
                cj = [_fmt_rat(c.c0), _fmt_rat(c.c1)]
            else:
                cj = _fmt_rat(c)
            terms.append({"coeff": cj, "exp2": list(e)})
        return {"ring": self.ring, "vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        ring = obj["ring"]
        if ring not in (Q, Q_U):
            raise ValueError(f"unknown ring {ring!r}")
        terms = {}
        for term in obj["terms"]:
            cj = term["coeff"]
            c = QU(Fraction(cj[0]), Fraction(cj[1])) if ring == Q_U else Fraction(cj)
            terms[tuple(term["exp2"])] = c
        return cls(obj["vars"], terms, ring)


def _coerce(c, ring):
    if ring == Q_U:
        return QU.lift(c) if not isinstance(c, QU) else c
    if isinstance(c, QU):
        raise RosterError("Q_u coefficient in a Q polynomial")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient {c!r}")


# ---------------------------------------------------------------------------
# operations


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    if len(p.terms) < len(q.terms):
        p, q = q, p
    out = dict(p.terms)
    for e, c in q.terms.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = _norm(v + c)
            if v:
                out[e] = v
            else:
                del out[e]
    return LaurentPoly._raw(p.vars, out, p.ring)


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    if len(p.terms) < len(q.terms):
        p, q = q, p
    out: Dict[Exp, Coeff] = {}
    get = out.get
    for e2, c2 in q.terms.items():
        for e1, c1 in p.terms.items():
            e = tuple(map(int.__add__, e1, e2))
            v = get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return LaurentPoly._raw(p.vars, {e: _norm(c) for e, c in out.items() if c}, p.ring)


def product(polys: Iterable[LaurentPoly], vars=None, ring=Q) -> LaurentPoly:
    out = None
    for f in polys:
        out = f if out is None else out * f
    if out is None:
        return LaurentPoly.const(vars, 1, ring)
    return out


def substitute(p: LaurentPoly, assignments: Mapping[str, object], roots: Mapping[str, object] = None) -> LaurentPoly:
    """Substitute variables by single Laurent monomials or constants.

    ``assignments[v] = val`` replaces v by val.  ``roots[v] = val`` replaces
    v^(1/2) by val, which is how half-integer powers of a constant are
    given (e.g. ``roots={"t": U}`` in the Q_u ring).  The roster is kept;
    substituted variables simply no longer occur unless the value uses them.
    """
    spec = {}
    for table, half in ((assignments or {}, False), (roots or {}, True)):
        for name, val in table.items():
            spec[p.index(name)] = (val, half)
    if not spec:
        return p
    ring = p.ring
    for val, _ in spec.values():
        if isinstance(val, QU) or (isinstance(val, LaurentPoly) and val.ring == Q_U):
            ring = Q_U
    k = len(p.vars)
    prepared = {}
    for i, (val, half) in spec.items():
        if isinstance(val, LaurentPoly):
            if not val.is_monomial():
                raise ValueError("substitution target must be a single Laurent monomial")
            val._check(LaurentPoly.zero(p.vars, val.ring))
            (ev, cv), = val.terms.items()
            prepared[i] = ("mono", ev, cv, half)
        else:
            prepared[i] = ("const", None, val, half)
    out: Dict[Exp, Coeff] = {}
    cache = {}
    for e, c in p.terms.items():
        # substitutions are simultaneous: clear every substituted slot first
        f = [0 if i in prepared else x for i, x in enumerate(e)]
        coeff = c if ring == Q or isinstance(c, QU) else QU(c)
        for i, (kind, ev, cv, half) in prepared.items():
            x = e[i]
            if x == 0:
                continue
            # the value is raised to the true exponent x/2, or to x when it is a root
            if half:
                power = x
            else:
                if x % 2:
                    if kind == "const":
                        raise ValueError("half-integer power of a constant; pass it via roots=")
                    power = Fraction(x, 2)
                else:
                    power = x // 2
            if kind == "mono":
                if isinstance(power, Fraction):
                    for j in range(k):
                        if (ev[j] * x) % 2:
                            raise ValueError("substitution produces a non-integral doubled exponent")
                    for j in range(k):
                        f[j] += ev[j] * x // 2
                    if cv != 1:
                        raise ValueError("half power of a non-unit monomial coefficient")
                else:
                    for j in range(k):
                        f[j] += ev[j] * power
                    if cv != 1:
                        coeff = coeff * _cpow(cv, power, cache, i)
            else:
                coeff = coeff * _cpow(cv, power, cache, i)
        coeff = _norm(coeff) if not isinstance(coeff, QU) else coeff
        key = tuple(f)
        v = out.get(key)
        out[key] = coeff if v is None else v + coeff
    return LaurentPoly(p.vars, {e: c for e, c in out.items() if c}, ring)


def _cpow(c, k, cache, slot):
    key = (slot, k)
    v = cache.get(key)
    if v is None:
        if isinstance(c, QU):
            v = c ** k
        else:
            v = Fraction(c) ** k
        cache[key] = v
    return v


def _lex_key(e):
    return tuple(-x for x in e)


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient p/q in the Laurent ring.

    Raises ZeroDivisionError if q == 0 and DivisionError if q does not divide p.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    if q.is_monomial():
        (e, c), = q.terms.items()
        return p.shift(tuple(-x for x in e), _inv(c))
    # normalize both to genuine polynomials
    mp, mq = p.min_exp2(), q.min_exp2()
    qn = {tuple(a - b for a, b in zip(e, mq)): c for e, c in q.terms.items()}
    rem = {tuple(a - b for a, b in zip(e, mp)): c for e, c in p.terms.items()}
    lq = max(qn)
    lc_inv = _inv(qn[lq])
    qrest = [(e, c) for e, c in qn.items() if e != lq]
    heap = [_lex_key(e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-x for x in key)
        c = rem.pop(e, None)
        if c is None or not c:
            continue
        m = tuple(a - b for a, b in zip(e, lq))
        if min(m) < 0:
            raise DivisionError("divisor does not divide the dividend")
        cm = _norm(c * lc_inv)
        quot[m] = cm
        for eq, cq in qrest:
            f = tuple(a + b for a, b in zip(eq, m))
            old = rem.get(f)
            if old is None:
                rem[f] = -cm * cq
                heapq.heappush(heap, _lex_key(f))
            else:
                v = _norm(old - cm * cq)
                if v:
                    rem[f] = v
                else:
                    del rem[f]
    shift = tuple(a - b for a, b in zip(mp, mq))
    return LaurentPoly(p.vars, quot, p.ring).shift(shift)


def is_symmetric(p: LaurentPoly, generators: Iterable[Tuple[str, str]]) -> bool:
    """True iff p is invariant under each transposition of variables."""
    return all(p.swap(u, v) == p for u, v in generators)


def divisible_by_linear(p: LaurentPoly, i: str, j: str) -> bool:
    """True iff (x_i - x_j) divides p, i.e. p vanishes at x_i = x_j."""
    if i == j:
        raise ValueError("need two distinct variables")
    xj = LaurentPoly.var(p.vars, j, ring=p.ring)
    return substitute(p, {i: xj}).is_zero()


def sample_point(vars: Sequence[str], seed: int, height: int = 97) -> Dict[str, Fraction]:
    """Deterministic random rational values for the square roots of each variable.

    Values avoid 0 and +-1 (the only rational roots of unity), so the
    squares also avoid small cyclotomic coincidences like t = 1.
    """
    rng = random.Random(seed)
    out = {}
    used = set()
    for v in vars:
        while True:
            num = rng.randint(2, height) * rng.choice((1, -1))
            den = rng.randint(1, height)
            x = Fraction(num, den)
            if abs(x) != 1 and x not in used and x * x not in used:
                break
        used.add(x)
        out[v] = x
    return out


def evaluate(p: LaurentPoly, roots: Mapping[str, object]):
    """Evaluate p given a value for the square root of every variable."""
    vals = [roots[v] for v in p.vars]
    total = QU(0) if p.ring == Q_U else Fraction(0)
    powcache = [dict() for _ in vals]
    for e, c in p.terms.items():
        term = c
        for k, x in enumerate(e):
            if x:
                v = powcache[k].get(x)
                if v is None:
                    v = vals[k] ** x
                    powcache[k][x] = v
                term = term * v
        total = total + term
    return total if isinstance(total, QU) else _norm(total)


def random_eval(p: LaurentPoly, seed: int):
    """Value of p at a seeded pseudo-random rational point."""
    return evaluate(p, sample_point(p.vars, seed))
