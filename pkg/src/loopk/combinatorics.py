"""Subsets, Young diagrams, link patterns and plane partitions.

Conventions
-----------
* A subset r of [N] of size n lists the right steps of the boundary path of
  its Young diagram, read from bottom-left to top-right.
* ``YoungDiagram.parts`` has n entries (one per right step), each at most
  N - n; part i is the height of column i, so |r| = sum(parts).
* Link patterns are noncrossing partial matchings; unpaired vertices to the
  left of every "opening" belong to the subset.
* A plane partition in PP(a,b,c) is a weakly increasing a-tuple of
  b-subsets of [b+c].
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple


@dataclass(frozen=True, order=True)
class SubsetIndex:
    n: int
    N: int
    elements: Tuple[int, ...]

    def __post_init__(self):
        el = tuple(self.elements)
        object.__setattr__(self, "elements", el)
        if len(el) != self.n:
            raise ValueError(f"expected {self.n} elements, got {len(el)}")
        if any(x >= y for x, y in zip(el, el[1:])):
            raise ValueError("elements must be strictly increasing")
        if el and (el[0] < 1 or el[-1] > self.N):
            raise ValueError(f"elements must lie in 1..{self.N}")

    @classmethod
    def of(cls, elements: Sequence[int], N: int) -> "SubsetIndex":
        el = tuple(sorted(elements))
        return cls(len(el), N, el)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return self.n

    def __getitem__(self, k):
        return self.elements[k]

    @property
    def complement(self) -> Tuple[int, ...]:
        s = set(self.elements)
        return tuple(i for i in range(1, self.N + 1) if i not in s)

    def swap(self, i: int) -> "SubsetIndex":
        """Image under the transposition i <-> i+1."""
        img = [i + 1 if x == i else i if x == i + 1 else x for x in self.elements]
        return SubsetIndex.of(img, self.N)

    def __str__(self):
        return f"{','.join(map(str, self.elements))}@n={self.n},N={self.N}"

    @classmethod
    def parse(cls, text: str) -> "SubsetIndex":
        m = re.fullmatch(r"\s*([\d,\s]*)@n=(\d+),\s*N=(\d+)\s*", text)
        if not m:
            raise ValueError(f"bad subset literal {text!r}")
        body, n, N = m.group(1), int(m.group(2)), int(m.group(3))
        el = tuple(int(x) for x in body.split(",") if x.strip())
        return cls(n, N, el)


@dataclass(frozen=True)
class YoungDiagram:
    """Column heights inside the (N-n) x n rectangle."""

    n: int
    N: int
    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) != self.n:
            raise ValueError("need one part per column")
        if any(x < y for x, y in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")
        if any(p < 0 or p > self.N - self.n for p in self.parts):
            raise ValueError("diagram does not fit the rectangle")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def contains(self, other: "YoungDiagram") -> bool:
        return all(p >= q for p, q in zip(self.parts, other.parts))

    def rows(self) -> Tuple[int, ...]:
        """Row lengths from the top, the transpose of ``parts``."""
        return tuple(sum(1 for p in self.parts if p > h) for h in range(self.N - self.n))


def subset_to_young(r: SubsetIndex) -> YoungDiagram:
    return YoungDiagram(r.n, r.N, tuple(r.N - r.n - (x - i) for i, x in enumerate(r.elements, 1)))


def young_to_subset(y: YoungDiagram) -> SubsetIndex:
    return SubsetIndex(y.n, y.N, tuple(y.N - y.n - p + i for i, p in enumerate(y.parts, 1)))


def boxes(r: SubsetIndex) -> int:
    return r.n * (r.N - r.n) - sum(x - i for i, x in enumerate(r.elements, 1))


def leq(s: SubsetIndex, r: SubsetIndex) -> bool:
    """s <= r pointwise, i.e. Young(r) is contained in Young(s)."""
    if (s.n, s.N) != (r.n, r.N):
        raise ValueError("subsets from different universes")
    return all(x <= y for x, y in zip(s.elements, r.elements))


def young_subset(s: SubsetIndex, r: SubsetIndex) -> bool:
    """Young(s) contained in Young(r)."""
    return leq(r, s)


@dataclass(frozen=True)
class LinkPattern:
    N: int
    pairs: Tuple[Tuple[int, int], ...]
    n: int

    def __post_init__(self):
        pr = tuple(sorted((min(p), max(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pr)
        seen = [x for p in pr for x in p]
        if len(set(seen)) != len(seen) or any(x < 1 or x > self.N for x in seen):
            raise ValueError("pairs must be disjoint and within range")
        for (i, j), (k, l) in combinations(pr, 2):
            if i < k < j < l or k < i < l < j:
                raise ValueError("link pattern has crossing chords")
        unp = self.unpaired
        for i, j in pr:
            if any(i < u < j for u in unp):
                raise ValueError("an unpaired vertex sits under a chord")
        k = len(pr)
        if not (0 <= self.n - k <= self.N - 2 * k):
            raise ValueError("inconsistent n for this pattern")

    @property
    def unpaired(self) -> Tuple[int, ...]:
        used = {x for p in self.pairs for x in p}
        return tuple(i for i in range(1, self.N + 1) if i not in used)

    @property
    def unpaired_left(self) -> Tuple[int, ...]:
        return self.unpaired[: self.n - len(self.pairs)]

    @property
    def unpaired_right(self) -> Tuple[int, ...]:
        return self.unpaired[self.n - len(self.pairs):]

    @property
    def is_full(self) -> bool:
        return 2 * len(self.pairs) == self.N

    def partner(self, i: int):
        for x, y in self.pairs:
            if x == i:
                return y
            if y == i:
                return x
        return None

    def connected(self, i: int, j: int) -> bool:
        return self.partner(i) == j

    def rotate(self, k: int = 1) -> "LinkPattern":
        """Cyclic shift to the right by k (full patterns only)."""
        if not self.is_full:
            raise ValueError("rotation is defined for full patterns")
        f = lambda x: (x - 1 + k) % self.N + 1
        return LinkPattern(self.N, tuple((f(i), f(j)) for i, j in self.pairs), self.n)

    def __str__(self):
        body = ",".join(f"{i}-{j}" for i, j in self.pairs)
        return f"pairs={body};N={self.N}"

    def arcs(self) -> str:
        """Parenthesis word; '|' marks unpaired vertices."""
        out = ["|"] * self.N
        for i, j in self.pairs:
            out[i - 1], out[j - 1] = "(", ")"
        return "".join(out)

    @classmethod
    def parse(cls, text: str, n: int = None) -> "LinkPattern":
        m = re.fullmatch(r"\s*pairs=([\d,\-\s]*);\s*N=(\d+)(?:;\s*n=(\d+))?\s*", text)
        if not m:
            raise ValueError(f"bad link pattern literal {text!r}")
        N = int(m.group(2))
        pairs = tuple(tuple(int(x) for x in p.split("-")) for p in m.group(1).split(",") if p.strip())
        if m.group(3):
            n = int(m.group(3))
        if n is None:
            if N % 2:
                raise ValueError("n is required for odd N")
            n = N // 2
        return cls(N, pairs, n)


def subset_to_linkpattern(r: SubsetIndex) -> LinkPattern:
    # elements of r close chords, elements of the complement open them
    stack, pairs = [], []
    members = set(r.elements)
    for v in range(1, r.N + 1):
        if v in members:
            if stack:
                pairs.append((stack.pop(), v))
        else:
            stack.append(v)
    return LinkPattern(r.N, tuple(pairs), r.n)


def linkpattern_to_subset(lp: LinkPattern) -> SubsetIndex:
    closings = [j for _, j in lp.pairs]
    return SubsetIndex.of(closings + list(lp.unpaired_left), lp.N)


def staircase(n: int) -> SubsetIndex:
    return SubsetIndex(n, 2 * n, tuple(2 * i for i in range(1, n + 1)))


def staircase_test(r: SubsetIndex) -> bool:
    """Young(r) inside the staircase, i.e. the link pattern of r is full."""
    if r.N != 2 * r.n:
        raise ValueError("staircase test needs N = 2n")
    return leq(staircase(r.n), r)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def enumerate_subsets(n: int, N: int) -> List[SubsetIndex]:
    """All n-subsets of [N] in colexicographic order."""
    out = [SubsetIndex(n, N, c) for c in combinations(range(1, N + 1), n)]
    out.sort(key=lambda s: tuple(reversed(s.elements)))
    return out


def enumerate_full_patterns(n: int) -> List[SubsetIndex]:
    return [r for r in enumerate_subsets(n, 2 * n) if staircase_test(r)]


def rect_subset(a: int, b: int, c: int) -> SubsetIndex:
    """Subset whose Young diagram is the c x b rectangle, with N = 2(a+b+c)."""
    n = a + b + c
    N = 2 * n
    if b < 0 or c < 0 or n <= 0 or b > n or c > n:
        raise ValueError(f"no c x b rectangle for (a,b,c)=({a},{b},{c})")
    return young_to_subset(YoungDiagram(n, N, (c,) * b + (0,) * (n - b)))


def abc_pattern(a: int, b: int, c: int) -> LinkPattern:
    return subset_to_linkpattern(rect_subset(a, b, c))


def abc_type(lp: LinkPattern):
    """(a,b,c) if the full pattern is of rectangular type, else None."""
    if not lp.is_full:
        return None
    n = lp.n
    for b in range(n + 1):
        for c in range(n + 1 - b):
            if abc_pattern(n - b - c, b, c) == lp:
                return (n - b - c, b, c)
    return None


# ---------------------------------------------------------------------------
# plane partitions


@dataclass(frozen=True)
class Lozenge:
    kind: str  # "B", "C" or "BC"
    first: int
    second: int
    path: int = 0  # path index for B and C lozenges, 0 for BC

    @property
    def center(self):
        return (self.first, self.second)


@dataclass(frozen=True)
class PlanePartition:
    a: int
    b: int
    c: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(sorted(s)) for s in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.a:
            raise ValueError("need a subsets")
        for s in rows:
            if len(s) != self.b or len(set(s)) != self.b:
                raise ValueError("each subset needs b distinct elements")
            if s and (s[0] < 1 or s[-1] > self.b + self.c):
                raise ValueError("elements must lie in [b+c]")

    @property
    def is_ordered(self) -> bool:
        return all(all(x <= y for x, y in zip(s, t)) for s, t in zip(self.rows, self.rows[1:]))

    @property
    def n(self):
        return self.a + self.b + self.c

    def to_json(self):
        return [list(s) for s in self.rows]

    def __str__(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def parse(cls, text: str, b: int = None, c: int = None) -> "PlanePartition":
        rows = json.loads(text)
        a = len(rows)
        if b is None:
            b = len(rows[0]) if rows else 0
        if c is None:
            c = max((max(s) for s in rows if s), default=b) - b
        return cls(a, b, c, tuple(tuple(s) for s in rows))

    # -- lozenges ---------------------------------------------------------
    def b_lozenges(self) -> List[Lozenge]:
        out = []
        a = self.a
        for ell, s in enumerate(self.rows, 1):
            mem = set(s)
            for j in range(1, self.b + self.c + 1):
                if j not in mem:
                    below = sum(1 for x in s if x < j)
                    out.append(Lozenge("B", 1 + below + a - ell, j, ell))
        return out

    def c_lozenges(self) -> List[Lozenge]:
        out = []
        for ell, s in enumerate(self.rows, 1):
            for m, j in enumerate(s, 1):
                out.append(Lozenge("C", j, j - m + ell, ell))
        return out

    def bc_lozenges(self) -> List[Lozenge]:
        a, n = self.a, self.n
        bset = {(z.first, z.second) for z in self.b_lozenges()}
        cset = {(z.first, z.second) for z in self.c_lozenges()}
        out = []
        for i in range(1, a + self.b + 1):
            for k in range(1, a + self.c + 1):
                if not (a + 1 < i + k < n + 1):
                    continue
                lo, hi = i + k - a - 1, i + k - a
                if (i, lo) in bset or (lo, k) in cset or (i, hi) in bset or (hi, k) in cset:
                    continue
                out.append(Lozenge("BC", i, k))
        return out

    def lozenges(self) -> List[Lozenge]:
        return self.b_lozenges() + self.c_lozenges() + self.bc_lozenges()

    def nilp(self) -> List[str]:
        """Each path as a word in D (down) and R (right) over j = 1..b+c."""
        return ["".join("D" if j in set(s) else "R" for j in range(1, self.b + self.c + 1)) for s in self.rows]

    def dimers(self) -> List[Tuple[str, Tuple[int, int]]]:
        return [(z.kind, z.center) for z in self.lozenges()]


def pp_leq_key(S: PlanePartition):
    return tuple(x for s in S.rows for x in s)


def enumerate_pp(a: int, b: int, c: int) -> List[PlanePartition]:
    """All of PP(a,b,c), ordered lexicographically on the concatenated tuple."""
    if min(a, b, c) < 0:
        raise ValueError("a, b, c must be nonnegative")
    subs = [tuple(x) for x in combinations(range(1, b + c + 1), b)]
    out: List[Tuple[Tuple[int, ...], ...]] = []

    def rec(prefix):
        if len(prefix) == a:
            out.append(tuple(prefix))
            return
        for s in subs:
            if not prefix or all(x <= y for x, y in zip(prefix[-1], s)):
                prefix.append(s)
                rec(prefix)
                prefix.pop()

    rec([])
    pps = [PlanePartition(a, b, c, rows) for rows in out]
    pps.sort(key=pp_leq_key)
    return pps


def count_pp_macmahon(a: int, b: int, c: int) -> int:
    """MacMahon's box formula, used only as a cross-check."""
    num = den = 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                num *= i + j + k - 1
                den *= i + j + k - 2
    return num // den


# -- (i,j,k) -> y conversions ------------------------------------------------


def y_coordinate(kind: str, first: int, second: int, a: int) -> Fraction:
    if kind == "B":
        i, j = first, second
        return Fraction(j, 2) - (i - a) + Fraction(1, 2)
    if kind == "C":
        j, k = first, second
        return k - Fraction(j, 2)
    if kind == "BC":
        i, k = first, second
        return k - (i - a) + Fraction(1, 2)
    raise ValueError(f"unknown lozenge type {kind!r}")


def y_coordinates(z: Lozenge, a: int) -> Fraction:
    return y_coordinate(z.kind, z.first, z.second, a)


# ---------------------------------------------------------------------------
# honeycomb (dual) picture shared by the degeneration module
#
# Horizontal edge (i,k) has endpoints L(i,k) and R(i,k).  B(i,j) joins
# R(i, j-i+a) to L(i, j-i+a+1); C(j,k) joins R(j-k+a, k) to L(j-k+a+1, k).


@dataclass(frozen=True)
class Honeycomb:
    a: int
    b: int
    c: int

    def b_edge(self, i, j):
        a = self.a
        return (("R", i, j - i + a), ("L", i, j - i + a + 1))

    def c_edge(self, j, k):
        a = self.a
        return (("R", j - k + a, k), ("L", j - k + a + 1, k))

    def h_edge(self, i, k):
        return (("L", i, k), ("R", i, k))

    def edge(self, kind, first, second):
        if kind == "B":
            return self.b_edge(first, second)
        if kind == "C":
            return self.c_edge(first, second)
        return self.h_edge(first, second)

    def hexagon(self, i, k):
        """Sides (NW, NE, SE, SW) of the face with top edge (i,k), as variable labels."""
        J = i + k - self.a
        return (("B", i, J - 1), ("C", J, k), ("B", i + 1, J), ("C", J - 1, k - 1))

    def hexagon_vertices(self, i, k):
        return (("L", i, k), ("R", i, k), ("L", i + 1, k), ("R", i + 1, k - 1), ("L", i + 1, k - 1), ("R", i, k - 1))

    @cached_property
    def region(self) -> FrozenSet:
        """Vertices of the tiled region: those covered by the empty-tuple tiling's dimers."""
        S = min_pp(self.a, self.b, self.c)
        verts = set()
        for z in S.lozenges():
            verts.update(self.edge(z.kind, z.first, z.second))
        return frozenset(verts)

    def faces(self):
        """All hexagons touching the region, as (i,k) of their top edge."""
        cand = set()
        for v in self.region:
            _, i, k = v
            for di in (-1, 0, 1):
                for dk in (-1, 0, 1):
                    cand.add((i + di, k + dk))
        out = []
        for i, k in sorted(cand):
            if any(v in self.region for v in self.hexagon_vertices(i, k)):
                out.append((i, k))
        return out

    def interior_faces(self):
        return [f for f in self.faces() if all(v in self.region for v in self.hexagon_vertices(*f))]


def min_pp(a, b, c) -> PlanePartition:
    return PlanePartition(a, b, c, tuple(tuple(range(1, b + 1)) for _ in range(a)))


def pp_views(S: PlanePartition) -> Dict[str, object]:
    """Lozenges, dimers and lattice paths of a plane partition, with self-consistency data."""
    loz = S.lozenges()
    hc = Honeycomb(S.a, S.b, S.c)
    covered: Dict[tuple, int] = {}
    for z in loz:
        for v in hc.edge(z.kind, z.first, z.second):
            covered[v] = covered.get(v, 0) + 1
    counts = {k: sum(1 for z in loz if z.kind == k) for k in ("B", "C", "BC")}
    return {
        "lozenges": [
            {"type": z.kind, "center": list(z.center), "path": z.path, "y": str(y_coordinates(z, S.a))} for z in loz
        ],
        "dimers": S.dimers(),
        "nilp": S.nilp(),
        "counts": counts,
        "perfect_matching": set(covered) == set(hc.region) and all(v == 1 for v in covered.values()),
        "hexagons": len(hc.interior_faces()),
    }
