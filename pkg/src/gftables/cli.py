"""Command line front end.

    gftables compute --family vec --q 3 --n 2 --method all
    gftables verify gauss --q 3,5,7,9,11,13
    gftables export --family mat --q 3 --n 2 --m 3 --format csv --out m.csv

Exit codes: 0 success, 1 a cross-check or verification failed, 2 invalid
input. Identical invocations produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import os
import sys

from .gfq import CharSpec, is_prime, make_field
from .pascal import closed_form_table, family_table
from .reporting import Report
from .serialize import (
    canonical_matrix_obj,
    family_table_obj,
    matrix_csv,
    psi_blocks_obj,
    symbolic_csv,
    to_json,
)
from .spaces import BudgetError, make_space
from .symmetric import psi_brute, psi_closed, scaled_canonical_from_blocks
from .transform import DEFAULT_BUDGET, brute_force_phi
from .verify import SUITES, GridFilter, run_suite


class _Once(argparse.Action):
    """Reject a flag that is passed more than once."""

    def __call__(self, parser, namespace, values, option_string=None):
        if getattr(namespace, f"_seen_{self.dest}", False):
            parser.error(f"{option_string} given more than once")
        setattr(namespace, f"_seen_{self.dest}", True)
        setattr(namespace, self.dest, values)


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    if not is_prime(p):
        raise ValueError("not a prime")
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError("not a prime power")
    return p, e


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("GFTABLES_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _build_compute_output(args) -> tuple[str, bool]:
    """Returns (payload text, cross_checks_ok)."""
    p, e = _factor_prime_power(args.q)
    field = make_field(p, e)
    if args.twist < 1 or args.twist >= field.q:
        raise ValueError("twist must index a nonzero field element")
    char = CharSpec(field, field.element_at(args.twist))
    budget = _budget(args)
    fam = args.family
    fmt = args.format or "json"

    if args.symbolic:
        if fam not in ("vec", "mat", "alt"):
            raise ValueError("symbolic tables exist for vec, mat, and alt only")
        tab = family_table(fam, args.n, args.m)
        if fmt == "csv":
            return symbolic_csv(tab, args.q), True
        return to_json(family_table_obj(tab, args.q)), True

    if fam in ("vec", "mat", "alt"):
        space = make_space(fam, field, args.n, args.m)
        method = args.method
        ok = True
        if method in ("brute", "all"):
            phi = brute_force_phi(space, char, budget)
            grid = phi.integer_entries()
        if method in ("recursion", "all"):
            rec = family_table(fam, args.n, args.m).at_q_int(args.q)
            grid = rec if method == "recursion" else grid
            if method == "all":
                ok = ok and rec == grid
        if method in ("closed", "all"):
            clo = closed_form_table(fam, args.n, args.m, args.q)
            if any(v.denominator != 1 for row in clo for v in row):
                raise AssertionError("closed form produced non-integers")
            cgrid = [[int(v) for v in row] for row in clo]
            grid = cgrid if method == "closed" else grid
            if method == "all":
                ok = ok and cgrid == grid
        labels = [str(l) for l in space.labels()]
        if fmt == "csv":
            return matrix_csv(labels, grid), ok
        obj = {
            "kind": "canonical-matrix",
            "method": method,
            "space": space.to_obj(),
            "q": args.q,
            "field": field.to_obj(),
            "twist": list(char.twist.coeffs),
            "labels": labels,
            "entries": grid,
        }
        if method == "all":
            obj["cross_checked"] = ok
        return to_json(obj), ok

    if fam == "sym":
        if args.method == "recursion":
            raise ValueError(
                "symmetric families have no integer recursion; use brute, closed, or all"
            )
        if fmt == "csv":
            raise ValueError("sign blocks contain Gauss-sum entries; use JSON")
        ok = True
        if args.method in ("brute", "all"):
            blocks, _phi = psi_brute(args.n, char, budget)
        if args.method in ("closed", "all"):
            closed = psi_closed(args.n, char)
            if args.method == "closed":
                blocks = closed
            else:
                ok = blocks.same_blocks(closed)
        obj = psi_blocks_obj(blocks, args.method)
        if args.method == "all":
            obj["cross_checked"] = ok
        return to_json(obj), ok

    if fam == "symscaled":
        if args.method == "recursion":
            raise ValueError(
                "symmetric families have no integer recursion; use brute, closed, or all"
            )
        space = make_space(fam, field, args.n)
        ok = True
        if args.method in ("brute", "all"):
            phi = brute_force_phi(space, char, budget)
        if args.method in ("closed", "all"):
            cphi = scaled_canonical_from_blocks(psi_closed(args.n, char))
            if args.method == "closed":
                phi = cphi
            else:
                ok = phi.entries == cphi.entries
        if fmt == "csv":
            return matrix_csv([str(l) for l in phi.labels], [[e.as_int() for e in row] for row in phi.entries]), ok
        obj = canonical_matrix_obj(phi, args.method)
        if args.method == "all":
            obj["cross_checked"] = ok
        return to_json(obj), ok

    raise ValueError(f"unknown family {fam!r}")


def cmd_compute(args, require_out: bool = False) -> int:
    if require_out and not args.out:
        print("export needs --out", file=sys.stderr)
        return 2
    payload, ok = _build_compute_output(args)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if not ok:
        print("cross-check FAILED", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    flt = GridFilter(
        qs=frozenset(int(t) for t in args.q.split(",")) if args.q else None,
        family=args.family,
        n=args.n,
        m=args.m,
    )
    budget = _budget(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rep = Report()
    if args.jobs > 1 and len(names) > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for part in pool.map(_run_one_suite, [(n, budget, flt) for n in names]):
                rep.extend(part)
    else:
        for name in names:
            rep.extend(run_suite(name, budget, flt))
    for line in rep.lines():
        print(line)
    failures = rep.failures
    print(f"{len(rep.checks)} checks, {len(failures)} failures")
    return 1 if failures else 0


def _run_one_suite(item) -> Report:
    name, budget, flt = item
    return run_suite(name, budget, flt)


def _add_compute_args(sub) -> None:
    sub.add_argument("--family", required=True, choices=["vec", "mat", "alt", "sym", "symscaled"])
    sub.add_argument("--q", type=int, required=True, help="field order, a prime power")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--m", type=int, default=None, help="column count for mat")
    sub.add_argument("--method", choices=["brute", "recursion", "closed", "all"], default="brute")
    sub.add_argument("--twist", type=int, default=1, help="index of the character twist element")
    sub.add_argument("--symbolic", action="store_true", help="emit entries as polynomials in q")
    sub.add_argument("--format", action=_Once, choices=["json", "csv"], default=None)
    sub.add_argument("--out", default=None)
    sub.add_argument("--budget", type=int, default=None)
    sub.add_argument("--jobs", type=int, default=1)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="gftables", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    pc = subs.add_parser("compute", help="compute a table by any method")
    _add_compute_args(pc)

    pe = subs.add_parser("export", help="compute and write a table (bit-stable)")
    _add_compute_args(pe)

    pv = subs.add_parser("verify", help="run an identity suite")
    pv.add_argument("suite", choices=["gauss", "orthogonality", "multi", "genfun", "diagrams", "sym-relations", "limits", "oracle", "all"])
    pv.add_argument("--q", default=None, help="comma-separated field orders")
    pv.add_argument("--family", default=None)
    pv.add_argument("--n", type=int, default=None)
    pv.add_argument("--m", type=int, default=None)
    pv.add_argument("--budget", type=int, default=None)
    pv.add_argument("--jobs", type=int, default=1)

    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "export":
            return cmd_compute(args, require_out=True)
        return cmd_verify(args)
    except (ValueError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
