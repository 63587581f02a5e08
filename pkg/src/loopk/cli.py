"""Command line interface.

Every subcommand prints one report (suite, parameters, pass, details,
wall_time, seed) as JSON or CSV.  Exit status: 0 pass, 1 check failure,
2 usage or budget error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import List, Optional

from . import cpl, degeneration, fpl, geometry, qkz, suites
from .combinatorics import (
    LinkPattern,
    PlanePartition,
    SubsetIndex,
    abc_type,
    count_pp_macmahon,
    enumerate_pp,
    enumerate_subsets,
    linkpattern_to_subset,
    pp_views,
    subset_to_linkpattern,
)
from .laurent import LaurentPoly

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_subset(text: str, n: int = None, N: int = None) -> SubsetIndex:
    """A subset literal "1,4@n=2,N=4" or a link pattern "pairs=1-2,3-4;N=4"."""
    text = text.strip()
    try:
        r = linkpattern_to_subset(LinkPattern.parse(text, n)) if text.startswith("pairs=") else SubsetIndex.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if (n is not None and r.n != n) or (N is not None and r.N != N):
        raise UsageError(f"{r} does not match n={n}, N={N}")
    return r


def _need(args, *names):
    missing = [f"--{x}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"{args.command} requires {' '.join(missing)}")


def _poly(p: LaurentPoly) -> dict:
    return {"text": str(p), **p.to_json()}


# ---------------------------------------------------------------------------
# subcommands; each returns (pass, parameters, details)


def cmd_enumerate(args):
    _need(args, "n", "N")
    rows = []
    for r in enumerate_subsets(args.n, args.N):
        lp = subset_to_linkpattern(r)
        rows.append({"subset": str(r), "pattern": str(lp), "arcs": lp.arcs()})
    return True, {"n": args.n, "N": args.N}, {"count": len(rows), "rows": rows}


def cmd_zr(args):
    _need(args, "r")
    r = parse_subset(args.r, args.n, args.N)
    method = args.method or "transfer"
    if method not in ("transfer", "brute"):
        raise UsageError("zr --method must be transfer or brute")
    Z = cpl.partition_Z(r.n, r.N, r, method, budget=args.budget)
    return True, {"r": str(r), "method": method}, {"Z": _poly(Z)}


def cmd_zrs(args):
    _need(args, "r", "s")
    r = parse_subset(args.r)
    s = parse_subset(args.s, r.n, r.N)
    Z = cpl.partition_Z_rs(r, s)
    return True, {"r": str(r), "s": str(s)}, {"Z": _poly(Z)}


def cmd_psi(args):
    _need(args, "r")
    r = parse_subset(args.r, args.n, 2 * args.n if args.n else None)
    if r.N != 2 * r.n:
        raise UsageError(f"{r} is not a full pattern (N must be 2n)")
    n = r.n
    method = args.method or "wheel"
    scale = qkz.scale_exponent(n)
    if method == "wheel":
        vec = qkz.psi_basis(n)
        p = vec[r]
    elif method == "abc":
        abc = abc_type(subset_to_linkpattern(r))
        if abc is None:
            raise UsageError(f"{r} is not of type (a,b,c)")
        p = qkz.psi_abc(*abc)
    else:
        raise UsageError("psi --method must be wheel or abc")
    details = {"scaled_by": f"(1-t)^{scale}", "psi": _poly(p), "rs_count": qkz.rs_count(p, scale)}
    return True, {"n": n, "r": str(r), "method": method}, details


def _abc(args):
    _need(args, "a", "b", "c")
    if min(args.a, args.b, args.c) < 0:
        raise UsageError("a, b, c must be non-negative")
    return args.a, args.b, args.c


def cmd_pushforward(args):
    a, b, c = _abc(args)
    form = args.form or "final"
    if form == "phi":
        p = geometry.phi_r(a, b, c)
    elif form in ("final", "final2"):
        p = geometry.mu_pushforward_abc(a, b, c, form)
    else:
        raise UsageError("--form must be final, final2 or phi")
    return True, {"a": a, "b": b, "c": c, "form": form}, {"class": _poly(p)}


def cmd_degree(args):
    a, b, c = _abc(args)
    deg = geometry.orbital_degree(a, b, c)
    pp = len(enumerate_pp(a, b, c))
    want = 2 ** (b * c) * pp
    return deg == want, {"a": a, "b": b, "c": c}, {"degree": deg, "pp": pp, "expected": want}


def cmd_fpl(args):
    _need(args, "n")
    counts = fpl.enumerate_fpl(args.n, max_n=args.max_n)
    params = {"n": args.n}
    if args.pattern:
        r = parse_subset(args.pattern, args.n, 2 * args.n)
        params["pattern"] = str(r)
        return True, params, {"count": counts.get(r, 0)}
    rows = [{"subset": str(r), "pattern": str(subset_to_linkpattern(r)), "count": k} for r, k in counts.items()]
    return True, params, {"total": sum(counts.values()), "rows": rows}


def cmd_pp(args):
    a, b, c = _abc(args)
    pps = enumerate_pp(a, b, c)
    mac = count_pp_macmahon(a, b, c)
    details = {"count": len(pps), "macmahon": mac}
    if args.pattern:
        S = PlanePartition.parse(args.pattern, b, c)
        if (S.a, S.b, S.c) != (a, b, c) or not S.is_ordered:
            raise UsageError(f"{args.pattern} is not an element of PP({a},{b},{c})")
        details["views"] = pp_views(S)
        details["weight"] = _poly(geometry.pp_weight(S, geometry.roster(a, b, c)))
    else:
        details["rows"] = [{"pp": json.dumps(S.to_json(), separators=(",", ":"))} for S in pps]
    return len(pps) == mac, {"a": a, "b": b, "c": c}, details


def cmd_degen(args):
    a, b, c = _abc(args)
    check = args.check or "leadterms"
    params = {"a": a, "b": b, "c": c, "check": check}
    if check == "leadterms":
        fails = degeneration.leadterms_failures(a, b, c) + degeneration.quadratic_init_failures(a, b, c)
        return not fails, params, {"failures": fails}
    if check == "lattice":
        if a * b + b * c + c * a == 0:
            raise UsageError(f"the hexagon {(a, b, c)} has no lozenges")
        D = args.max_degree if args.max_degree is not None else 4
        params["max_degree"] = D
        res = [degeneration.lattice_checks(S, D) for S in enumerate_pp(a, b, c)]
        return all(x["pass"] for x in res), params, {"components": res}
    if check == "hilbert":
        D = args.max_degree if args.max_degree is not None else 2
        params["max_degree"] = D
        res = degeneration.hilbert_crosscheck(a, b, c, D, budget=args.budget_degree)
        return res["pass"], params, res
    if check == "plucker":
        res = degeneration.plucker_init_check(a, b, c)
        return res["pass"], params, res
    raise UsageError("--check must be leadterms, lattice, hilbert or plucker")


def cmd_rs_count(args):
    _need(args, "n")
    method = args.method or ("wheel" if args.n <= 3 else "hamiltonian")
    if method == "wheel":
        counts = qkz.rs_counts(args.n)
    elif method == "hamiltonian":
        counts = qkz.rs_counts_hamiltonian(args.n)
    else:
        raise UsageError("rs-count --method must be wheel or hamiltonian")
    rows = [{"subset": str(r), "pattern": str(subset_to_linkpattern(r)), "count": k} for r, k in counts.items()]
    return True, {"n": args.n, "method": method}, {"sum": sum(counts.values()), "rows": rows}


COMMANDS = {
    "enumerate": cmd_enumerate,
    "zr": cmd_zr,
    "zrs": cmd_zrs,
    "psi": cmd_psi,
    "pushforward": cmd_pushforward,
    "degree": cmd_degree,
    "fpl": cmd_fpl,
    "pp": cmd_pp,
    "degen": cmd_degen,
    "rs-count": cmd_rs_count,
}


def run_verify(args) -> suites.Report:
    name = args.suite
    if name not in suites.CHECKS:
        raise UsageError(f"unknown suite {name!r}")
    randomized = name in suites.RANDOMIZED and not (name in ("gkm", "qkz") and (args.n or 2) <= 2)
    if randomized and args.seed is None and args.ci:
        raise UsageError(f"{name} draws random points; --seed is required in CI mode")
    seed = args.seed if args.seed is not None else suites.DEFAULT_SEED
    kw = {"seed": seed, "workers": args.workers}
    if name in ("conj1", "conj2", "conj3", "wheel-abc"):
        kw.update(zip("abc", _abc(args)))
    elif name in ("divdiff", "gkm"):
        n = args.n or 2
        kw.update(n=n, N=args.N or 2 * n)
    elif name == "qkz":
        _need(args, "n")
        kw["n"] = args.n
    if name == "acceptance9" and args.max_degree is not None:
        kw["max_degree"] = args.max_degree
    return suites.CHECKS[name](**kw)


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    return str(x)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=_jsonable)
    buf = io.StringIO()
    rows = report["details"].get("rows") if isinstance(report["details"], dict) else None
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k in ("suite", "pass", "seed", "wall_time"):
            w.writerow([k, json.dumps(report[k])])
        for k, v in sorted(report["parameters"].items()):
            w.writerow([f"parameters.{k}", json.dumps(v, sort_keys=True, default=_jsonable)])
        for k, v in sorted(report["details"].items()):
            w.writerow([f"details.{k}", json.dumps(v, sort_keys=True, default=_jsonable)])
    return buf.getvalue().rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag in ("n", "N", "a", "b", "c"):
        common.add_argument(f"--{flag}", type=int)
    common.add_argument("--r", help='subset "1,4@n=2,N=4" or pattern "pairs=1-4,2-3;N=4"')
    common.add_argument("--s", help="fixed point, same formats as --r")
    common.add_argument("--pattern", help="link pattern / subset (fpl) or plane partition JSON (pp)")
    common.add_argument("--method")
    common.add_argument("--form")
    common.add_argument("--check")
    common.add_argument("--max-degree", type=int)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--budget", type=int, default=cpl.DEFAULT_BUDGET, help="brute-force cell budget")
    common.add_argument("--max-n", type=int, default=fpl.DEFAULT_MAX_N, help="FPL enumeration budget")
    common.add_argument("--budget-degree", type=int, default=4, help="Hilbert cross-check degree budget")
    common.add_argument("--ci", action="store_true", default=bool(os.environ.get("LOOPK_CI")),
                        help="CI mode: randomized suites need --seed (also set by LOOPK_CI)")
    common.add_argument("--reproducible", action="store_true", help="omit wall time so output is byte-stable")

    parser = argparse.ArgumentParser(prog="loopk", description="Exact loop-model and qKZ computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", help=", ".join(suites.CHECKS))
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "verify":
            report = run_verify(args)
        else:
            start = time.perf_counter()
            ok, params, details = COMMANDS[args.command](args)
            report = suites.Report(args.command, params, ok, details, time.perf_counter() - start, args.seed)
            if args.command == "degen":
                report.extra = {"check": params["check"], "size": [args.a, args.b, args.c]}
    except UsageError as exc:
        print(f"loopk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"loopk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report.to_dict(timing=not args.reproducible), args.format))
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
