"""Weight degeneration of the rectangular module and its special fiber.

The ring has variables B[i,j] ((a+b) x (b+c)), C[j,k] ((b+c) x (c+a)) and
star[i,k] ((a+b) x (c+a)).  Module generators are degree-a monomials in the
Pluecker coordinates p_s, s a b-subset of [b+c].  A term is a triple
(coefficient, variable monomial, Pluecker monomial); both monomials are
stored as sorted tuples.

Lozenge geometry uses integer coordinates (X, Y) = (2x, 4y), where x is the
horizontal position (B and C edges sit at x = j) and y the height.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from .combinatorics import Lozenge, PlanePartition, enumerate_pp

Var = Tuple[str, int, int]
VarMono = Tuple[Var, ...]
PMono = Tuple[Tuple[int, ...], ...]


def B(i: int, j: int) -> Var:
    return ("B", i, j)


def C(j: int, k: int) -> Var:
    return ("C", j, k)


def STAR(i: int, k: int) -> Var:
    return ("*", i, k)


def all_variables(a: int, b: int, c: int) -> List[Var]:
    out = [B(i, j) for i in range(1, a + b + 1) for j in range(1, b + c + 1)]
    out += [C(j, k) for j in range(1, b + c + 1) for k in range(1, a + c + 1)]
    out += [STAR(i, k) for i in range(1, a + b + 1) for k in range(1, a + c + 1)]
    return out


def pl_subsets(b: int, c: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(1, b + c + 1), b))


def _sorted_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 on repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for x, y in combinations(seq, 2) if x > y)
    return -1 if inv % 2 else 1


def add_index(s: Sequence[int], j: int) -> Tuple[int, Tuple[int, ...]]:
    """p_{s u j}: j appended at the end, then sorted with its sign."""
    return _sorted_sign(tuple(s) + (j,)), tuple(sorted(tuple(s) + (j,)))


def remove_index(s: Sequence[int], j: int) -> Tuple[int, Tuple[int, ...]]:
    """p_{s minus j}: j first moved to the end, then dropped."""
    rest = tuple(x for x in s if x != j)
    return _sorted_sign(rest + (j,)), rest


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSystem:
    a: int
    b: int
    c: int

    def y_B(self, i: int, j: int) -> Fraction:
        return Fraction(j, 2) - (i - self.a) + Fraction(1, 2)

    def y_C(self, j: int, k: int) -> Fraction:
        return k - Fraction(j, 2)

    def wt_var(self, v: Var) -> Fraction:
        kind, x, y = v
        if kind == "B":
            return self.y_B(x, y) ** 2
        if kind == "C":
            return self.y_C(x, y) ** 2
        return Fraction(0)

    def wt_monomial(self, m: VarMono) -> Fraction:
        return sum((self.wt_var(v) for v in m), Fraction(0))

    @staticmethod
    def w_array(rows: Sequence[Sequence[int]]) -> Fraction:
        """w(S) for an array whose rows are taken in the given order."""
        return sum(
            (
                (Fraction(s, 2) + ell - m) ** 2
                for ell, row in enumerate(rows, 1)
                for m, s in enumerate(sorted(row), 1)
            ),
            Fraction(0),
        )

    def wt_p(self, rows: Sequence[Sequence[int]]) -> Fraction:
        """Max over reorderings of the rows of w."""
        return max(self.w_array(perm) for perm in set(permutations(rows)))

    def wt_term(self, m: VarMono, p: PMono) -> Fraction:
        return self.wt_monomial(m) + self.wt_p(p)

    # alternative expressions, valid on PP(a,b,c)
    def wt_p_from_c_lozenges(self, S: PlanePartition) -> Fraction:
        return sum((self.y_C(z.first, z.second) ** 2 for z in S.c_lozenges()), Fraction(0))

    def wt_p_from_b_lozenges(self, S: PlanePartition) -> Fraction:
        """Equal to wt_p up to a constant depending on (a,b,c) only."""
        return sum((self.y_B(z.first, z.second) ** 2 for z in S.b_lozenges()), Fraction(0))

    def wt_p_complement(self, S: PlanePartition) -> Fraction:
        """Complement-based expression; equal to wt_p up to a constant."""
        total = Fraction(0)
        for i, row in enumerate(S.rows, 1):
            comp = [x for x in range(1, self.b + self.c + 1) if x not in row]
            for k, sb in enumerate(comp, 1):
                total += (Fraction(-sb, 2) + i + k - Fraction(1, 2)) ** 2
        return total


def weight_pS(S: PlanePartition) -> Fraction:
    return WeightSystem(S.a, S.b, S.c).wt_p(S.rows)


def weight_monomial(a: int, b: int, c: int, m: Iterable[Var]) -> Fraction:
    return WeightSystem(a, b, c).wt_monomial(tuple(m))


# ---------------------------------------------------------------------------
# module elements


@dataclass
class ModuleElement:
    terms: Dict[Tuple[VarMono, PMono], Fraction] = field(default_factory=dict)

    @classmethod
    def term(cls, coeff, m: Iterable[Var], p: Iterable[Sequence[int]]) -> "ModuleElement":
        out = cls()
        out.add(coeff, m, p)
        return out

    def add(self, coeff, m: Iterable[Var], p: Iterable[Sequence[int]]) -> None:
        if not coeff:
            return
        key = (tuple(sorted(m)), tuple(sorted(tuple(s) for s in p)))
        val = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if val:
            self.terms[key] = val
        else:
            self.terms.pop(key, None)

    def times(self, m: Iterable[Var] = (), p: Iterable[Sequence[int]] = ()) -> "ModuleElement":
        m, p = tuple(m), tuple(tuple(s) for s in p)
        out = ModuleElement()
        for (mm, pp), co in self.terms.items():
            out.add(co, mm + m, pp + p)
        return out

    def __bool__(self):
        return bool(self.terms)

    def normalized(self) -> Dict[Tuple[VarMono, PMono], Fraction]:
        """Coefficients scaled so the smallest key has coefficient 1."""
        if not self.terms:
            return {}
        lead = self.terms[min(self.terms)]
        return {k: v / lead for k, v in self.terms.items()}

    def same_up_to_scalar(self, other: "ModuleElement") -> bool:
        return self.normalized() == other.normalized()

    def __repr__(self):
        parts = []
        for (m, p), co in sorted(self.terms.items()):
            vs = "*".join(f"{k}{x},{y}" for k, x, y in m)
            ps = "*".join("p" + "".join(map(str, s)) for s in p)
            parts.append(f"{co}*{vs or '1'}*{ps or '1'}")
        return " + ".join(parts) or "0"


def init_form_module(x: ModuleElement, ws: WeightSystem) -> ModuleElement:
    """Terms of minimal weight."""
    if not x:
        return ModuleElement()
    wts = {key: ws.wt_term(*key) for key in x.terms}
    low = min(wts.values())
    return ModuleElement({k: v for k, v in x.terms.items() if wts[k] == low})


# ---------------------------------------------------------------------------
# the relations


def relation_B(a: int, b: int, c: int, s_plus: Sequence[int], i: int) -> ModuleElement:
    """sum_{j in s+} B[i,j] p_{s+ minus j}."""
    out = ModuleElement()
    for j in s_plus:
        sg, rest = remove_index(s_plus, j)
        out.add(sg, [B(i, j)], [rest])
    return out


def relation_C(a: int, b: int, c: int, s_minus: Sequence[int], k: int) -> ModuleElement:
    """sum_{j not in s-} C[j,k] p_{s- u j}."""
    out = ModuleElement()
    for j in range(1, b + c + 1):
        if j in s_minus:
            continue
        sg, full = add_index(s_minus, j)
        out.add(sg, [C(j, k)], [full])
    return out


def relation_quad(a: int, b: int, c: int, i: int, k: int) -> ModuleElement:
    """(BC)[i,k] = sum_j B[i,j] C[j,k]."""
    out = ModuleElement()
    for j in range(1, b + c + 1):
        out.add(1, [B(i, j), C(j, k)], [])
    return out


def relation_plucker(s_minus: Sequence[int], s_plus: Sequence[int]) -> ModuleElement:
    """sum_{x in s+ minus s-} p_{s- u x} p_{s+ minus x}."""
    out = ModuleElement()
    for x in s_plus:
        if x in s_minus:
            continue
        sg1, left = add_index(s_minus, x)
        sg2, right = remove_index(s_plus, x)
        out.add(sg1 * sg2, [], [left, right])
    return out


def plucker_relations(b: int, c: int) -> List[ModuleElement]:
    N = b + c
    if b < 1 or c < 1:
        return []
    out = []
    for sm in combinations(range(1, N + 1), b - 1):
        for sp in combinations(range(1, N + 1), b + 1):
            rel = relation_plucker(sm, sp)
            if rel:
                out.append(rel)
    return out


# ---------------------------------------------------------------------------
# leading terms


def init_quadratic(S: PlanePartition, i: int, k: int) -> ModuleElement:
    """Closed-form initial term of p_S (BC)[i,k]."""
    a, b, c, n = S.a, S.b, S.c, S.n
    if not (1 <= i <= a + b and 1 <= k <= a + c):
        raise IndexError(f"(i,k) = {(i, k)} outside [{a + b}] x [{a + c}]")
    out = ModuleElement()
    if b + c == 0:
        # no B or C variables: (BC)[i,k] is the empty sum
        return out
    if i + k <= a + 1:
        out.add(1, [B(i, 1), C(1, k)], S.rows)
    elif i + k >= n + 1:
        out.add(1, [B(i, b + c), C(b + c, k)], S.rows)
    else:
        j = i + k - a
        out.add(1, [B(i, j - 1), C(j - 1, k)], S.rows)
        out.add(1, [B(i, j), C(j, k)], S.rows)
    return out


def leadterms_generators(S: PlanePartition) -> List[Tuple[Lozenge, ModuleElement]]:
    """One generator per dimer of S."""
    out = []
    for z in S.b_lozenges():
        out.append((z, ModuleElement.term(1, [B(z.first, z.second)], S.rows)))
    for z in S.c_lozenges():
        out.append((z, ModuleElement.term(1, [C(z.first, z.second)], S.rows)))
    for z in S.bc_lozenges():
        out.append((z, init_quadratic(S, z.first, z.second)))
    return out


def source_relation(S: PlanePartition, z: Lozenge) -> ModuleElement:
    """The undegenerated relation whose initial form should give the
    generator attached to the lozenge z (with spectators)."""
    a, b, c = S.a, S.b, S.c
    if z.kind == "BC":
        return relation_quad(a, b, c, z.first, z.second).times(p=S.rows)
    spectators = [s for ell, s in enumerate(S.rows, 1) if ell != z.path]
    row = S.rows[z.path - 1]
    if z.kind == "B":
        i, j = z.first, z.second
        s_plus = tuple(sorted(row + (j,)))
        return relation_B(a, b, c, s_plus, i).times(p=spectators)
    j, k = z.first, z.second
    s_minus = tuple(x for x in row if x != j)
    return relation_C(a, b, c, s_minus, k).times(p=spectators)


def leadterms_failures(a: int, b: int, c: int) -> List[dict]:
    ws = WeightSystem(a, b, c)
    bad = []
    for S in enumerate_pp(a, b, c):
        gens = leadterms_generators(S)
        if len(gens) != a * b + a * c + b * c:
            bad.append({"S": S.to_json(), "reason": "generator count"})
        for z, gen in gens:
            got = init_form_module(source_relation(S, z), ws)
            if not got.same_up_to_scalar(gen):
                bad.append({"S": S.to_json(), "lozenge": [z.kind, z.first, z.second], "got": repr(got)})
    return bad


def quadratic_init_failures(a: int, b: int, c: int) -> List[dict]:
    """init_quadratic against init_form_module for every S and (i,k)."""
    ws = WeightSystem(a, b, c)
    bad = []
    for S in enumerate_pp(a, b, c):
        for i in range(1, a + b + 1):
            for k in range(1, a + c + 1):
                got = init_form_module(relation_quad(a, b, c, i, k).times(p=S.rows), ws)
                if not got.same_up_to_scalar(init_quadratic(S, i, k)):
                    bad.append({"S": S.to_json(), "i": i, "k": k})
    return bad


def b_weight_steps(S: PlanePartition, z: Lozenge) -> List[Tuple[Fraction, Fraction]]:
    """(actual, predicted) weight differences between consecutive terms of
    the B relation attached to a type-B lozenge, using the row-ordered w."""
    a = S.a
    ws = WeightSystem(a, S.b, S.c)
    ell, i, j = z.path, z.first, z.second
    s_plus = tuple(sorted(S.rows[ell - 1] + (j,)))

    def val(h):
        jj = s_plus[h - 1]
        rows = list(S.rows)
        rows[ell - 1] = tuple(x for x in s_plus if x != jj)
        return ws.w_array(rows) + ws.wt_var(B(i, jj))

    out = []
    for h in range(1, len(s_plus)):
        pred = (s_plus[h] - s_plus[h - 1]) * (h - i + Fraction(1, 2) + a - ell)
        out.append((val(h + 1) - val(h), pred))
    return out


def c_weight_steps(S: PlanePartition, z: Lozenge) -> List[Tuple[Fraction, Fraction]]:
    ws = WeightSystem(S.a, S.b, S.c)
    ell, j, k = z.path, z.first, z.second
    s_minus = tuple(x for x in S.rows[ell - 1] if x != j)
    comp = [x for x in range(1, S.b + S.c + 1) if x not in s_minus]

    def val(h):
        jj = comp[h - 1]
        rows = list(S.rows)
        rows[ell - 1] = tuple(sorted(s_minus + (jj,)))
        return ws.w_array(rows) + ws.wt_var(C(jj, k))

    out = []
    for h in range(1, len(comp)):
        pred = (comp[h] - comp[h - 1]) * (h - k - Fraction(1, 2) + ell)
        out.append((val(h + 1) - val(h), pred))
    return out


# ---------------------------------------------------------------------------
# Pluecker degeneration


def pluecker_monomials(a: int, b: int, c: int) -> List[PMono]:
    return list(combinations_with_replacement(pl_subsets(b, c), a))


def is_standard(p: PMono) -> bool:
    return all(all(x <= y for x, y in zip(s, t)) for s, t in zip(p, p[1:]))


def _rref_rows(rows: List[Dict[int, Fraction]], ncols: int) -> Tuple[flint.fmpq_mat, int]:
    M = flint.fmpq_mat(len(rows), ncols)
    for r, row in enumerate(rows):
        for col, val in row.items():
            M[r, col] = flint.fmpq(val.numerator, val.denominator)
    R, rank = M.rref()
    return R, rank


def straighten_all(a: int, b: int, c: int) -> Dict[PMono, Dict[PMono, Fraction]]:
    """p_S (S not standard) as a combination of standard monomials, modulo
    the span of Pluecker relations times degree a-2 spectators."""
    monos = pluecker_monomials(a, b, c)
    nonstd = [p for p in monos if not is_standard(p)]
    std = [p for p in monos if is_standard(p)]
    order = nonstd + std
    col = {p: n for n, p in enumerate(order)}
    rows = []
    if a >= 2:
        for rel in plucker_relations(b, c):
            for spec in combinations_with_replacement(pl_subsets(b, c), a - 2):
                row: Dict[int, Fraction] = defaultdict(Fraction)
                for (_, p), co in rel.times(p=spec).terms.items():
                    row[col[p]] += co
                rows.append({k: v for k, v in row.items() if v})
    if not rows:
        if nonstd:
            raise ValueError("nonstandard monomials without relations")
        return {}
    R, rank = _rref_rows(rows, len(order))
    if rank != len(nonstd):
        raise ValueError(f"Pluecker relation space has rank {rank}, expected {len(nonstd)}")
    out = {}
    for r in range(rank):
        pivot = next(cidx for cidx in range(len(order)) if R[r, cidx] != 0)
        if pivot >= len(nonstd) or R[r, pivot] != 1:
            raise ValueError("a standard monomial became a pivot")
        expansion = {}
        for cidx in range(len(nonstd), len(order)):
            v = R[r, cidx]
            if v != 0:
                expansion[order[cidx]] = -Fraction(int(v.p), int(v.q))
        out[order[pivot]] = expansion
    return out


def plucker_init_check(a: int, b: int, c: int) -> dict:
    """Every nonstandard p_S is the unique lowest-weight term of its
    straightening relation p_S - sum c_T p_T."""
    ws = WeightSystem(a, b, c)
    expansions = straighten_all(a, b, c)
    bad = []
    for p, exp in expansions.items():
        wp = ws.wt_p(p)
        if not all(wp < ws.wt_p(t) for t in exp):
            bad.append({"S": [list(s) for s in p], "terms": [[list(s) for s in t] for t in exp]})
    nonstd = sum(1 for p in pluecker_monomials(a, b, c) if not is_standard(p))
    return {
        "nonstandard": nonstd,
        "straightened": len(expansions),
        "failures": bad,
        "pass": not bad and len(expansions) == nonstd,
    }


# ---------------------------------------------------------------------------
# hexagon geometry


Point = Tuple[int, int]


def edge_of(v: Var, a: int) -> Tuple[Point, Point]:
    """(upper, lower) endpoints of the lattice edge carrying B or C."""
    kind, x, y = v
    if kind == "B":
        i, j = x, y
        Y = 2 * j - 4 * (i - a) + 2
        return (2 * j - 1, Y + 1), (2 * j + 1, Y - 1)
    if kind == "C":
        j, k = x, y
        Y = 4 * k - 2 * j
        return (2 * j + 1, Y + 1), (2 * j - 1, Y - 1)
    raise ValueError(f"no edge for {v}")


def var_of_edge(p: Point, q: Point, a: int) -> Optional[Var]:
    """Inverse of edge_of; None for vertical edges."""
    (x1, y1), (x2, y2) = sorted([p, q])
    if x1 == x2:
        return None
    j = (x1 + 1) // 2
    if y1 > y2:
        Y = y1 - 1
        return B(a + (2 * j + 2 - Y) // 4, j)
    Y = y1 + 1
    return C(j, (Y + 2 * j) // 4)


def lozenge_triangles(z: Lozenge, a: int) -> List[frozenset]:
    if z.kind == "BC":
        i, k = z.first, z.second
        X = 2 * (i + k - a) - 1
        Y = 2 * (k - i + a) + 1
        top, bot = (X, Y + 2), (X, Y - 2)
        return [frozenset({top, bot, (X - 2, Y)}), frozenset({top, bot, (X + 2, Y)})]
    var = B(z.first, z.second) if z.kind == "B" else C(z.first, z.second)
    up, low = edge_of(var, a)
    return [frozenset({up, low, (up[0], up[1] - 4)}), frozenset({up, low, (low[0], low[1] + 4)})]


@dataclass
class HexagonRegion:
    a: int
    b: int
    c: int
    vertices: List[Point]
    triangles: List[frozenset]
    edges: Dict[Var, Tuple[Point, Point]]

    def grade(self, v: Var) -> Dict[Point, int]:
        up, low = self.edges[v]
        return {up: 1, low: -1}


def hexagon_region(a: int, b: int, c: int) -> HexagonRegion:
    """Triangles, vertices (= partial hexagons of the dimer picture) and
    slanted edges of the a x b x c hexagon, read off from any tiling."""
    S = enumerate_pp(a, b, c)[0]
    tris = [t for z in S.lozenges() for t in lozenge_triangles(z, a)]
    verts = sorted({p for t in tris for p in t})
    edges = {}
    for t in tris:
        for p, q in combinations(sorted(t), 2):
            v = var_of_edge(p, q, a)
            if v is not None:
                up, low = (p, q) if p[1] > q[1] else (q, p)
                edges[v] = (up, low)
    return HexagonRegion(a, b, c, verts, sorted(tris, key=sorted), edges)


def tiling_failures(S: PlanePartition) -> List[str]:
    """The lozenges of S tile the common hexagon exactly once."""
    region = hexagon_region(S.a, S.b, S.c)
    tris = [t for z in S.lozenges() for t in lozenge_triangles(z, S.a)]
    bad = []
    if len(set(tris)) != len(tris):
        bad.append("overlapping lozenges")
    if set(tris) != set(region.triangles):
        bad.append("lozenges do not cover the hexagon")
    for z in S.lozenges():
        if z.kind == "BC":
            continue
        v = B(*z.center) if z.kind == "B" else C(*z.center)
        if edge_of(v, S.a) != region.edges.get(v):
            bad.append(f"edge mismatch at {v}")
    return bad


# ---------------------------------------------------------------------------
# component rings


@dataclass
class ComponentRing:
    S: PlanePartition
    killed: List[Var]
    binomials: List[Tuple[VarMono, VarMono]]
    relevant: List[Var]

    @property
    def live(self) -> List[Var]:
        dead = set(self.killed)
        return [v for v in self.relevant if v not in dead]

    @property
    def relation_count(self) -> int:
        return len(self.killed) + len(self.binomials)


def component_ring(S: PlanePartition) -> ComponentRing:
    a = S.a
    region = hexagon_region(S.a, S.b, S.c)
    killed = [B(*z.center) for z in S.b_lozenges()] + [C(*z.center) for z in S.c_lozenges()]
    binomials = []
    for z in S.bc_lozenges():
        i, k = z.first, z.second
        j = i + k - a
        west = tuple(sorted([B(i, j - 1), C(j - 1, k)]))
        east = tuple(sorted([B(i, j), C(j, k)]))
        binomials.append((west, east))
    return ComponentRing(S, killed, binomials, sorted(region.edges))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)

    def components(self) -> int:
        return len({self.find(x) for x in self.parent})


def _grade_vector(region: HexagonRegion, mono: Iterable[Var]) -> Tuple[int, ...]:
    idx = {p: n for n, p in enumerate(region.vertices)}
    vec = [0] * len(region.vertices)
    for v in mono:
        up, low = region.edges[v]
        vec[idx[up]] += 1
        vec[idx[low]] -= 1
    return tuple(vec)


def fine_grading_failures(S: PlanePartition, max_degree: int = 4) -> List[dict]:
    """Monomials of A'_S sharing an L-grade must be equal up to sign in A'_S,
    i.e. connected by binomial moves."""
    ring = component_ring(S)
    region = hexagon_region(S.a, S.b, S.c)
    live = ring.live
    moves = [(Counter(w), Counter(e)) for w, e in ring.binomials]
    groups: Dict[Tuple[int, ...], List[VarMono]] = defaultdict(list)
    for d in range(max_degree + 1):
        for mono in combinations_with_replacement(live, d):
            groups[_grade_vector(region, mono)].append(mono)
    bad = []
    for grade, monos in groups.items():
        if len(monos) == 1:
            continue
        # explore the binomial-move class of the first monomial
        start = monos[0]
        seen = {start}
        todo = [start]
        while todo:
            cur = Counter(todo.pop())
            for w, e in moves:
                for src, dst in ((w, e), (e, w)):
                    if all(cur[v] >= m for v, m in src.items()):
                        nxt = tuple(sorted((cur - src + dst).elements()))
                        if nxt not in seen:
                            seen.add(nxt)
                            todo.append(nxt)
        if set(monos) - seen:
            bad.append({"S": S.to_json(), "monomials": [list(map(list, m)) for m in monos]})
    return bad


def lattice_checks(S: PlanePartition, max_degree: int = 4) -> dict:
    """Lattice and relation counts for the component ring of S.  Needs a
    two-dimensional hexagon, i.e. at most one of a, b, c equal to zero."""
    a, b, c = S.a, S.b, S.c
    if a * b + b * c + c * a == 0:
        raise ValueError(f"degenerate hexagon {(a, b, c)} has no lozenges")
    region = hexagon_region(a, b, c)
    ring = component_ring(S)
    live = ring.live
    dim_L = len(region.vertices)
    uf = _UnionFind(region.vertices)
    for v in live:
        uf.union(*region.edges[v])
    perp = uf.components()
    # independent route: rank of the grade vectors
    if live:
        M = flint.fmpz_mat([list(_grade_vector(region, [v])) for v in live])
        rank_LS = M.rank()
    else:
        rank_LS = 0
    homogeneous = all(
        _grade_vector(region, w) == _grade_vector(region, e) for w, e in ring.binomials
    )
    nb_B = sum(1 for v in live if v[0] == "B")
    nb_C = sum(1 for v in live if v[0] == "C")
    fine = fine_grading_failures(S, max_degree)
    tiling = tiling_failures(S)
    expected = {
        "dim_L": a * b + a * c + b * c + a + b + c + 1,
        "dim_perp": a + 1,
        "dim_LS": a * b + a * c + b * c + b + c,
        "relevant_B": a * b + b * c + b,
        "relevant_C": a * c + b * c + c,
        "relations": a * b + a * c + b * c,
    }
    got = {
        "dim_L": dim_L,
        "dim_perp": perp,
        "dim_LS": rank_LS,
        "relevant_B": nb_B,
        "relevant_C": nb_C,
        "relations": ring.relation_count,
    }
    ok = got == expected and perp + rank_LS == dim_L and homogeneous and not fine and not tiling
    return {
        "S": S.to_json(),
        "expected": expected,
        "got": got,
        "homogeneous": homogeneous,
        "fine_grading_failures": fine,
        "tiling_failures": tiling,
        "pass": ok,
    }


# ---------------------------------------------------------------------------
# Hilbert functions


def _series_coeffs(num: Dict[int, int], free: int, D: int) -> List[int]:
    """Coefficients up to q^D of num(q) / (1-q)^free."""
    out = []
    for d in range(D + 1):
        out.append(sum(co * comb(d - e + free - 1, free - 1) if free else (co if d == e else 0)
                       for e, co in num.items() if e <= d))
    return out


def degenerate_hilbert(a: int, b: int, c: int, D: int) -> List[int]:
    """sum over PP of the complete-intersection Hilbert function of A_S."""
    nvars = len(all_variables(a, b, c))
    free = nvars - (a * b + a * c) - b * c
    num = {e: comb(b * c, e) for e in range(b * c + 1)}  # (1+q)^{bc}
    per = _series_coeffs(num, free, D)
    count = len(enumerate_pp(a, b, c))
    return [count * x for x in per]


def component_hilbert_direct(S: PlanePartition, D: int) -> List[int]:
    """Hilbert function of A_S by exact linear algebra (binomials times
    monomials in the surviving variables); used to test the CI formula."""
    a, b, c = S.a, S.b, S.c
    ring = component_ring(S)
    dead = set(ring.killed)
    variables = [v for v in all_variables(a, b, c) if v not in dead]
    out = []
    for d in range(D + 1):
        monos = [tuple(sorted(m)) for m in combinations_with_replacement(variables, d)]
        col = {m: n for n, m in enumerate(monos)}
        rows = []
        for w, e in ring.binomials:
            for mult in combinations_with_replacement(variables, d - 2) if d >= 2 else []:
                row = [0] * len(monos)
                row[col[tuple(sorted(w + mult))]] += 1
                row[col[tuple(sorted(e + mult))]] += 1
                rows.append(row)
        rank = flint.fmpz_mat(rows).rank() if rows else 0
        out.append(len(monos) - rank)
    return out


def undegenerate_hilbert(a: int, b: int, c: int, D: int) -> List[int]:
    """Graded dimension of F_r / M_r in B,C,star-degree d <= D, from the
    undegenerated relations B, C, BC = 0 and Pluecker, by exact rank."""
    variables = all_variables(a, b, c)
    subs = pl_subsets(b, c)
    pmonos = pluecker_monomials(a, b, c)
    gens: List[Tuple[ModuleElement, int, int]] = []  # (relation, var degree, p degree)
    if a >= 2:
        gens += [(r, 0, 2) for r in plucker_relations(b, c)]
    if a >= 1:
        for i in range(1, a + b + 1):
            for sp in combinations(range(1, b + c + 1), b + 1):
                gens.append((relation_B(a, b, c, sp, i), 1, 1))
        for k in range(1, a + c + 1):
            for sm in combinations(range(1, b + c + 1), b - 1) if b >= 1 else []:
                gens.append((relation_C(a, b, c, sm, k), 1, 1))
    for i in range(1, a + b + 1):
        for k in range(1, a + c + 1):
            gens.append((relation_quad(a, b, c, i, k), 2, 0))
    out = []
    for d in range(D + 1):
        vmonos = [tuple(sorted(m)) for m in combinations_with_replacement(variables, d)]
        basis = [(m, p) for m in vmonos for p in pmonos]
        col = {key: n for n, key in enumerate(basis)}
        rows = []
        for rel, dv, dp in gens:
            if dv > d or dp > a:
                continue
            for mult in combinations_with_replacement(variables, d - dv):
                for spec in combinations_with_replacement(subs, a - dp):
                    row = [0] * len(basis)
                    for key, co in rel.times(m=mult, p=spec).terms.items():
                        row[col[key]] += int(co)
                    if any(row):
                        rows.append(row)
        rank = flint.fmpz_mat(rows).rank() if rows else 0
        out.append(len(basis) - rank)
    return out


def hilbert_crosscheck(a: int, b: int, c: int, D: int, budget: int = 4) -> dict:
    if a + b + c > 3 or D > budget:
        raise ValueError(f"hilbert cross-check budget exceeded at {(a, b, c)}, D = {D}")
    lhs = degenerate_hilbert(a, b, c, D)
    rhs = undegenerate_hilbert(a, b, c, D)
    return {"size": [a, b, c], "D": D, "degenerate": lhs, "undegenerate": rhs, "pass": lhs == rhs}


# ---------------------------------------------------------------------------
# suite


def degeneration_suite(max_n: int = 3, max_degree: int = 4) -> dict:
    """leadterms and lattice checks for all a+b+c <= max_n, Pluecker at
    a = 2 with b, c <= 2."""
    report = {"leadterms": [], "lattice": [], "plucker": []}
    ok = True
    for n in range(1, max_n + 1):
        for a in range(n + 1):
            for b in range(n - a + 1):
                c = n - a - b
                lead = leadterms_failures(a, b, c) + quadratic_init_failures(a, b, c)
                report["leadterms"].append({"size": [a, b, c], "failures": lead})
                ok &= not lead
                if a * b + b * c + c * a == 0:
                    continue
                for S in enumerate_pp(a, b, c):
                    lat = lattice_checks(S, max_degree)
                    if not lat["pass"]:
                        report["lattice"].append(lat)
                        ok = False
    for b in range(1, 3):
        for c in range(1, 3):
            res = plucker_init_check(2, b, c)
            report["plucker"].append({"size": [2, b, c], **res})
            ok &= res["pass"]
    report["pass"] = ok
    return report
