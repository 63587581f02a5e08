"""Fully packed loops on the n x n grid and their link-pattern counts.

Vertices are (i, j) with row i from the top and column j from the left.
External edges (stubs) are listed clockwise starting with the left stub
of row 1; even positions in that list are occupied.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .combinatorics import LinkPattern, SubsetIndex, abc_pattern, enumerate_pp, linkpattern_to_subset

DEFAULT_MAX_N = 6


def stubs(n: int) -> List[tuple]:
    """Clockwise list of external edges: ('L', i), ('T', j), ('R', i), ('B', j)."""
    out = [("L", 1)]
    out += [("T", j) for j in range(1, n + 1)]
    out += [("R", i) for i in range(1, n + 1)]
    out += [("B", j) for j in range(n, 0, -1)]
    out += [("L", i) for i in range(n, 1, -1)]
    return out


def occupied_stubs(n: int) -> List[tuple]:
    """Occupied external edges, numbered clockwise from the leftmost top one."""
    # clockwise from the top-left corner; at n = 1 the top stub is empty
    # and the first label goes to the right stub
    order = stubs(n)[1:] + stubs(n)[:1]
    state = _stub_state(n)
    return [s for s in order if state[s]]


@dataclass(frozen=True)
class FplConfig:
    """Occupation of horizontal edges h[i][j] (j = 0..n) and vertical edges v[i][j] (i = 0..n).

    h[i][0], h[i][n], v[0][j], v[n][j] are the external edges.
    """

    n: int
    h: Tuple[Tuple[bool, ...], ...]
    v: Tuple[Tuple[bool, ...], ...]

    def degree_ok(self) -> bool:
        n = self.n
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                deg = self.h[i][j - 1] + self.h[i][j] + self.v[i - 1][j] + self.v[i][j]
                if deg != 2:
                    return False
        return True


def _stub_state(n: int) -> Dict[tuple, bool]:
    return {s: k % 2 == 0 for k, s in enumerate(stubs(n))}


def _search(n: int):
    """Depth-first search over vertices in reading order; yields FplConfig."""
    state = _stub_state(n)
    # h[i][j]: edge between (i,j) and (i,j+1); rows 1..n, j 0..n
    h = [[False] * (n + 1) for _ in range(n + 1)]
    v = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        h[i][0] = state[("L", i)]
        h[i][n] = state[("R", i)]
    for j in range(1, n + 1):
        v[0][j] = state[("T", j)]
        v[n][j] = state[("B", j)]
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def rec(k):
        if k == len(cells):
            yield FplConfig(n, tuple(tuple(r) for r in h), tuple(tuple(r) for r in v))
            return
        i, j = cells[k]
        have = h[i][j - 1] + v[i - 1][j]
        right_opts = [h[i][j]] if j == n else [False, True]
        down_opts = [v[i][j]] if i == n else [False, True]
        for rt in right_opts:
            for dn in down_opts:
                if have + rt + dn != 2:
                    continue
                if j < n:
                    h[i][j] = rt
                if i < n:
                    v[i][j] = dn
                yield from rec(k + 1)
        if j < n:
            h[i][j] = False
        if i < n:
            v[i][j] = False

    yield from rec(0)


def _neighbours(cfg: FplConfig, node):
    """Occupied neighbours of a vertex; stubs appear as ('L', i) etc."""
    n = cfg.n
    i, j = node
    out = []
    if cfg.h[i][j - 1]:
        out.append((i, j - 1) if j > 1 else ("L", i))
    if cfg.h[i][j]:
        out.append((i, j + 1) if j < n else ("R", i))
    if cfg.v[i - 1][j]:
        out.append((i - 1, j) if i > 1 else ("T", j))
    if cfg.v[i][j]:
        out.append((i + 1, j) if i < n else ("B", j))
    return out


def _stub_vertex(n: int, s: tuple):
    side, k = s
    return {"L": (k, 1), "R": (k, n), "T": (1, k), "B": (n, k)}[side]


def connectivity(cfg: FplConfig, start: int = 0) -> LinkPattern:
    """Pairing of the occupied external edges, labelled clockwise from the
    leftmost top one (shifted by ``start`` positions)."""
    n = cfg.n
    occ = occupied_stubs(n)
    occ = occ[start:] + occ[:start]
    label = {s: k + 1 for k, s in enumerate(occ)}
    seen, pairs = set(), []
    for s in occ:
        if s in seen:
            continue
        prev, cur = s, _stub_vertex(n, s)
        while isinstance(cur[0], int):
            nb = [x for x in _neighbours(cfg, cur) if x != prev]
            prev, cur = cur, nb[0]
        seen.update((s, cur))
        pairs.append(tuple(sorted((label[s], label[cur]))))
    return LinkPattern(2 * n, tuple(sorted(pairs)), n)


def enumerate_fpl(n: int, max_n: int = DEFAULT_MAX_N, start: int = 0) -> Dict[SubsetIndex, int]:
    """|FPL_r| for every full pattern r, keyed by subset."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the enumeration budget {max_n}")
    counts: Counter = Counter()
    for cfg in _search(n):
        counts[linkpattern_to_subset(connectivity(cfg, start))] += 1
    return dict(sorted(counts.items(), key=lambda kv: kv[0].elements))


def fpl_total(n: int) -> int:
    return sum(enumerate_fpl(n).values())


def fpl_pp_cardinality_check(a: int, b: int, c: int) -> bool:
    """|FPL_(a,b,c)| = |PP(a,b,c)|."""
    n = a + b + c
    r = linkpattern_to_subset(abc_pattern(a, b, c))
    return enumerate_fpl(n).get(r, 0) == len(enumerate_pp(a, b, c))


def rotation_multisets_agree(n: int) -> bool:
    """The multiset of counts does not depend on the starting label."""
    base = sorted(enumerate_fpl(n).values())
    return all(sorted(enumerate_fpl(n, start=k).values()) == base for k in range(1, 2 * n))
