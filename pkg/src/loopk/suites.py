"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a Report.  Randomized identity tests draw their points
from ``seed, seed+1, ...``, so a report is a function of its arguments
(wall time aside).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence

from . import cpl, degeneration, fpl, geometry, qkz
from .combinatorics import catalan, enumerate_pp, enumerate_subsets

DEFAULT_SEED = 20240


@dataclass
class Report:
    suite: str
    parameters: Dict[str, object]
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    wall_time: float = 0.0
    seed: int = None
    extra: Dict[str, object] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        return {
            **self.extra,
            "suite": self.suite,
            "parameters": self.parameters,
            "pass": self.passed,
            "details": self.details,
            "wall_time": round(self.wall_time, 3) if timing else None,
            "seed": self.seed,
        }


def _pmap(fn: Callable, items: Sequence, workers: int = 1) -> List:
    """Order-preserving map, optionally over worker processes."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _seeds(seed: int, count: int) -> List[int]:
    return list(range(seed, seed + count))


def _timed(suite: str, parameters: dict, seed, body: Callable[[], tuple], limit: float = None) -> Report:
    start = time.perf_counter()
    passed, details = body()
    elapsed = time.perf_counter() - start
    if limit is not None:
        details["time_limit_s"] = limit
        details["within_time_limit"] = elapsed < limit
        passed = passed and elapsed < limit
    return Report(suite, parameters, bool(passed), details, elapsed, seed)


def triples(max_n: int, min_n: int = 1) -> List[tuple]:
    return [(a, b, n - a - b) for n in range(min_n, max_n + 1) for a in range(n + 1) for b in range(n - a + 1)]


# ---------------------------------------------------------------------------
# individual checks


def check_ybe(**_) -> Report:
    return _timed("ybe", {}, None, lambda: (cpl.verify_ybe(), {}))


def check_unitarity(**_) -> Report:
    return _timed("unitarity", {}, None, lambda: (cpl.verify_unitarity(), {}))


def check_special(**_) -> Report:
    def body():
        return cpl.verify_special(), {"factor": str(cpl.special_value_factor())}

    return _timed("special", {}, None, body)


def divdiff_cases(n: int, N: int) -> Dict[str, list]:
    literal, completed = [], []
    for r in enumerate_subsets(n, N):
        for i in range(1, N):
            lhs, rhs, corr = cpl.divdiff_sides(n, N, r, i)
            if lhs != rhs:
                literal.append({"r": str(r), "i": i})
            if lhs != rhs + corr:
                completed.append({"r": str(r), "i": i})
    return {"literal_failures": literal, "completed_failures": completed}


def check_divdiff(n: int = 2, N: int = 4, **_) -> Report:
    def body():
        res = divdiff_cases(n, N)
        return not res["literal_failures"], res

    return _timed("divdiff", {"n": n, "N": N}, None, body)


def y_symmetry_symbolic(n: int, N: int) -> List[str]:
    fails = []
    for r in enumerate_subsets(n, N):
        Z = cpl.partition_Z(n, N, r)
        for k in range(1, n):
            if Z.swap(f"y{k}", f"y{k + 1}") != Z:
                fails.append(f"{r} y{k}<->y{k + 1}")
    return fails


def check_gkm(n: int = 2, N: int = 4, seed: int = DEFAULT_SEED, points: int = 2, **_) -> Report:
    def body():
        if n <= 2:
            fails = [str(r) for r in enumerate_subsets(n, N) if not cpl.gkm_check(n, N, r)]
            return not fails, {"mode": "symbolic", "failures": fails}
        fails = cpl.gkm_check_random(n, N, _seeds(seed, points))
        return not fails, {"mode": "exact evaluation", "points": points, "failures": fails}

    return _timed("gkm", {"n": n, "N": N}, seed if n > 2 else None, body)


def qkz_checks(n: int, seed: int, points: int = 20) -> dict:
    vec = qkz.psi_basis(n)
    space = qkz.wheel_space(n)
    dets = {}
    for u in (2, 3):
        dets[str(u)] = str(qkz.dual_basis_matrix(n, Fraction(u)).det())
    symbolic = n <= 2
    seeds = None if symbolic else _seeds(seed, points)
    exchange = {i: qkz.qkz_exchange_check(vec, i, seeds) for i in range(1, 2 * n)}
    rotation = qkz.qkz_rotation_check(vec, seeds)
    dual = qkz.dual_basis_failures(vec)
    return {
        "dimension": space.dimension,
        "catalan": catalan(n),
        "dual_basis_det": dets,
        "dual_basis_failures": dual,
        "exchange": {str(i): ok for i, ok in exchange.items()},
        "rotation": rotation,
        "mode": "symbolic" if symbolic else f"exact evaluation at {points} points",
        "pass": (space.dimension == catalan(n) and all(d != "0" for d in dets.values()) and not dual
                 and all(exchange.values()) and rotation),
    }


def check_qkz(n: int = 2, seed: int = DEFAULT_SEED, **_) -> Report:
    def body():
        res = qkz_checks(n, seed)
        return res.pop("pass"), res

    return _timed("qkz", {"n": n}, seed if n > 2 else None, body)


def check_conj1(a: int, b: int, c: int, **_) -> Report:
    def body():
        fails = geometry.conj1_failures(a, b, c)
        return not fails, {"failures": fails}

    return _timed("conj1", {"a": a, "b": b, "c": c}, None, body)


def check_conj2(a: int, b: int, c: int, **_) -> Report:
    def body():
        fails = geometry.conj2_failures(a, b, c)
        return not fails, {"failures": fails}

    return _timed("conj2", {"a": a, "b": b, "c": c}, None, body)


def _shape_details(rep: geometry.ShapeReport) -> dict:
    return {
        "terms": rep.terms,
        "factors_per_term": sorted(set(rep.factor_counts)),
        "bad_exponents": list(rep.bad_exponents),
        "bad_monomials": list(rep.bad_monomials),
    }


def check_conj3(a: int, b: int, c: int, **_) -> Report:
    def body():
        rep = geometry.conj3_shape(a, b, c)
        return rep.passed, _shape_details(rep)

    return _timed("conj3", {"a": a, "b": b, "c": c}, None, body)


def check_wheel_abc(a: int, b: int, c: int, **_) -> Report:
    def body():
        rep = geometry.wheel_vanishing_check(a, b, c)
        return rep.passed, {
            "triples": rep.triples,
            "same_block": rep.same_block,
            "cross_block": rep.cross_block,
            "failures": list(rep.failures),
        }

    return _timed("wheel-abc", {"a": a, "b": b, "c": c}, None, body)


# ---------------------------------------------------------------------------
# acceptance criteria


def acceptance1(**_) -> Report:
    def body():
        res = {"ybe": cpl.verify_ybe(), "unitarity": cpl.verify_unitarity(), "special": cpl.verify_special()}
        return all(res.values()), res

    return _timed("acceptance1", {}, None, body, limit=10)


def acceptance2(seed: int = DEFAULT_SEED, points: int = 2, **_) -> Report:
    def body():
        d: Dict[str, object] = {}
        d["n2_y_symmetry"] = y_symmetry_symbolic(2, 4)
        d["n2_lemma_zero"] = cpl.lemma_zero_check(2, 4)
        d["n2_lemma_sym"] = cpl.lemma_sym_check(2, 4)
        d["n2_gkm"] = [str(r) for r in enumerate_subsets(2, 4) if not cpl.gkm_check(2, 4, r)]
        d["n2_specZ"] = [str(s) for s in enumerate_subsets(2, 4) if not cpl.specZ_check_direct(2, 4, s)]
        div = divdiff_cases(2, 4)
        d["n2_divdiff"] = div["literal_failures"]
        d["n2_divdiff_completed"] = div["completed_failures"]
        seeds = _seeds(seed, points)
        d["n3_y_symmetry"] = cpl.y_symmetry_check_random(3, 6, seeds)
        d["n3_lemma_zero"] = cpl.lemma_zero_check(3, 6)
        d["n3_lemma_sym"] = cpl.lemma_sym_check(3, 6)
        d["n3_gkm"] = cpl.gkm_check_random(3, 6, seeds)
        d["n3_specZ"] = cpl.specZ_check_random(3, 6, seeds)
        ok = not any(v for v in d.values())
        d["n3_mode"] = f"Z_r checks by exact evaluation at {points} points"
        return ok, d

    return _timed("acceptance2", {"sizes": [[2, 4], [3, 6]]}, seed, body, limit=300)


def acceptance3(seed: int = DEFAULT_SEED, points: int = 20, **_) -> Report:
    def body():
        d = {"n2": qkz_checks(2, seed, points), "n3": qkz_checks(3, seed, points)}
        ok = d["n2"]["pass"] and d["n3"]["pass"] and d["n2"]["dimension"] == 2 and d["n3"]["dimension"] == 5
        return ok, d

    return _timed("acceptance3", {"n": [2, 3], "points": points}, seed, body)


ACC4_CASES = [(0, 1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 1)]


def _conj1_case(abc):
    return abc, geometry.conj1_failures(*abc)


def acceptance4(workers: int = 1, **_) -> Report:
    def body():
        res = _pmap(_conj1_case, ACC4_CASES, workers)
        d = {str(list(abc)): fails for abc, fails in res}
        return not any(d.values()), d

    return _timed("acceptance4", {"cases": [list(x) for x in ACC4_CASES]}, None, body)


def acceptance5(**_) -> Report:
    def body():
        d = {str(list(abc)): geometry.conj2_failures(*abc) for abc in triples(3)}
        return not any(d.values()), d

    return _timed("acceptance5", {"max_n": 3}, None, body)


def acceptance6(**_) -> Report:
    def body():
        d = {}
        ok = True
        for abc in [(1, 1, 1), (1, 2, 1)]:
            rep = geometry.conj3_shape(*abc)
            d[str(list(abc))] = {"pass": rep.passed, **_shape_details(rep)}
            ok &= rep.passed
        return ok, d

    return _timed("acceptance6", {"cases": [[1, 1, 1], [1, 2, 1]]}, None, body)


def acceptance7(**_) -> Report:
    def body():
        d: Dict[str, object] = {}
        ok = True
        for n in (2, 3):
            counts = fpl.enumerate_fpl(n)
            psi = qkz.rs_counts(n)
            d[f"n{n}"] = {str(r): [psi.get(r), counts.get(r, 0)] for r in psi}
            ok &= all(psi.get(r) == counts.get(r, 0) for r in set(psi) | set(counts))
        d["n3_total"] = fpl.fpl_total(3)
        ok &= d["n3_total"] == 7
        counts4 = fpl.enumerate_fpl(4)
        ham4 = qkz.rs_counts_hamiltonian(4)
        d["n4_route"] = "ground state of the periodic Temperley-Lieb Hamiltonian at loop weight 1"
        d["n4"] = {str(r): [ham4[r], counts4.get(r, 0)] for r in ham4}
        ok &= all(ham4[r] == counts4.get(r, 0) for r in ham4) and sum(ham4.values()) == sum(counts4.values())
        card = {str(list(abc)): fpl.fpl_pp_cardinality_check(*abc) for abc in triples(4)}
        d["fpl_pp"] = card
        ok &= all(card.values())
        return ok, d

    return _timed("acceptance7", {"n": [2, 3, 4], "fpl_pp_max_n": 4}, None, body)


def acceptance8(**_) -> Report:
    def body():
        d = {}
        ok = True
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    deg = geometry.orbital_degree(a, b, c)
                    want = 2 ** (b * c) * len(enumerate_pp(a, b, c))
                    d[f"{a},{b},{c}"] = [deg, want]
                    ok &= deg == want
        return ok, d

    return _timed("acceptance8", {"max": 3}, None, body)


def _degen_size(job):
    abc, max_degree = job
    a, b, c = abc
    lead = degeneration.leadterms_failures(a, b, c) + degeneration.quadratic_init_failures(a, b, c)
    lattice = []
    if a * b + b * c + c * a:
        lattice = [r for r in (degeneration.lattice_checks(S, max_degree) for S in enumerate_pp(a, b, c)) if not r["pass"]]
    return abc, lead, lattice


def acceptance9(workers: int = 1, max_degree: int = 4, **_) -> Report:
    def body():
        d: Dict[str, object] = {"leadterms": {}, "lattice": {}, "plucker": {}}
        ok = True
        for abc, lead, lattice in _pmap(_degen_size, [(abc, max_degree) for abc in triples(3)], workers):
            d["leadterms"][str(list(abc))] = lead
            d["lattice"][str(list(abc))] = lattice
            ok &= not lead and not lattice
        for b in (1, 2):
            for c in (1, 2):
                res = degeneration.plucker_init_check(2, b, c)
                d["plucker"][f"2,{b},{c}"] = res
                ok &= res["pass"]
        return ok, d

    return _timed("acceptance9", {"max_n": 3, "max_degree": max_degree}, None, body)


def acceptance10(**_) -> Report:
    def body():
        d = {}
        ok = True
        for abc, D in [((0, 1, 1), 3), ((1, 1, 1), 2)]:
            res = degeneration.hilbert_crosscheck(*abc, D)
            d[str(list(abc))] = res
            ok &= res["pass"]
        return ok, d

    return _timed("acceptance10", {"cases": [[0, 1, 1, 3], [1, 1, 1, 2]]}, None, body, limit=600)


ACCEPTANCE = {f"acceptance{k}": globals()[f"acceptance{k}"] for k in range(1, 11)}

CHECKS = {
    "ybe": check_ybe,
    "unitarity": check_unitarity,
    "special": check_special,
    "divdiff": check_divdiff,
    "gkm": check_gkm,
    "qkz": check_qkz,
    "conj1": check_conj1,
    "conj2": check_conj2,
    "conj3": check_conj3,
    "wheel-abc": check_wheel_abc,
    **ACCEPTANCE,
}

RANDOMIZED = {"gkm", "qkz", "acceptance2", "acceptance3"}
