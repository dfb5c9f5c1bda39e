"""Command-line interface.

Three subcommands:

  eigen  — recompute the conductor column of a Hecke-eigenvalue fixture
  curve  — run the full pipeline on a genus-2 model over a prime range
  sigma  — build and verify one integral Frobenius matrix from (a_p, p, u, b)

With --check the exit code is nonzero iff the output disagrees with the
fixture (beyond conjugation, consistent label swaps, u-classes, and the
recorded fixture errata).
"""

import argparse
import sys

from .arith import primes_up_to
from .frobdata import make_hp
from .orders import make_order_spec
from .pipeline import (
    diff_against_fixture,
    load_fixture,
    parse_minpoly,
    render_table,
    run_curve_mode,
    run_eigen_mode,
    validate_fixture,
)
from .realquad import CLASS_NUMBER_ONE_D, RQField, RQIdeal, parse_element
from .sigma import build_sigma, decompose_sigma, verify_sigma


def _parse_primes(text):
    lo, _, hi = text.partition("..")
    if hi:
        return [p for p in primes_up_to(int(hi)) if p >= int(lo)]
    return [int(lo)]


def _parse_model_file(path):
    """First data line: "f0,f1,...,f6" or "p; f0,...,f6" (p ignored here)."""
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            _, _, rest = line.rpartition(";")
            return [int(c) for c in rest.split(",")]
    raise ValueError(f"no model line in {path}")


def _field_for(args, fix):
    if fix is not None:
        return fix.field
    t, n = parse_minpoly(args.minpoly)
    return RQField(args.d, t, n)


def cmd_eigen(args):
    fix = load_fixture(args.fixture)
    problems = validate_fixture(fix)
    for p, msg in problems:
        print(f"fixture warning: p={p}: {msg}", file=sys.stderr)
    rows = run_eigen_mode(fix)
    sys.stdout.write(render_table(rows, args.format))
    if args.check:
        report = diff_against_fixture(rows, fix)
        _print_check(report)
        return 0 if report.ok else 1
    return 0


def cmd_curve(args):
    fix = load_fixture(args.fixture) if args.fixture else None
    coeffs = _parse_model_file(args.model)
    field = _field_for(args, fix)
    rows = run_curve_mode(
        coeffs,
        _parse_primes(args.primes),
        args.level,
        fix=fix,
        field=field,
        kmax=args.kmax,
        budget=args.budget,
        force_nonordinary=args.force_nonordinary,
    )
    sys.stdout.write(render_table(rows, args.format))
    if args.verbose:
        for r in rows:
            if r.bail_reason:
                print(f"p={r.p}: {r.bail_reason}", file=sys.stderr)
    if args.check:
        if fix is None:
            print("--check requires --fixture", file=sys.stderr)
            return 2
        report = diff_against_fixture(rows, fix)
        _print_check(report)
        return 0 if report.ok else 1
    return 0


def cmd_sigma(args):
    t, n = parse_minpoly(args.minpoly)
    d = args.d if args.d else _guess_d(t, n)
    E = RQField(d, t, n)
    a_p = parse_element(E, args.ap)
    u = parse_element(E, args.u)
    b = parse_element(E, args.b)
    frob = make_hp(a_p, args.p)
    spec = make_order_spec(RQIdeal.principal(b), frob, u=u)
    m = build_sigma(spec)
    report = verify_sigma(m, spec)
    print(f"sigma_p = {m}")
    print(f"(sigma_p - u)/b = {decompose_sigma(m, spec)}")
    if not report.ok:
        for f in report.failures:
            print(f"verification failure: {f}", file=sys.stderr)
        return 1
    return 0


def _guess_d(t, n):
    disc = t * t - 4 * n
    for d in sorted(CLASS_NUMBER_ONE_D):
        base = d if d % 4 == 1 else 4 * d
        if disc % base == 0:
            q, r = divmod(disc, base)
            s = int(q**0.5)
            if any((s + k) ** 2 == q for k in (-1, 0, 1)):
                return d
    raise ValueError(f"cannot infer the field from discriminant {disc}")


def _print_check(report):
    for p in sorted(report.verdicts):
        print(f"check p={p}: {report.verdicts[p]}", file=sys.stderr)
    status = "OK" if report.ok else "MISMATCH"
    print(f"check: {status} ({len(report.mismatches)} mismatching rows)", file=sys.stderr)


def build_parser():
    ap = argparse.ArgumentParser(prog="frobint", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eigen", help="recompute conductor data from an eigenvalue fixture")
    pe.add_argument("--fixture", required=True)
    pe.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    pe.add_argument("--check", action="store_true")
    pe.set_defaults(func=cmd_eigen)

    pc = sub.add_parser("curve", help="full pipeline from a genus-2 model")
    pc.add_argument("--model", required=True)
    pc.add_argument("--primes", required=True, help='range "2..1997" or a single prime')
    pc.add_argument("--level", type=int, required=True)
    pc.add_argument("--fixture")
    pc.add_argument("--minpoly", default="x^2+x-1")
    pc.add_argument("--d", type=int, default=5)
    pc.add_argument("--kmax", type=int, default=36)
    pc.add_argument("--budget", type=int, default=64)
    pc.add_argument("--force-nonordinary", action="store_true")
    pc.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    pc.add_argument("--check", action="store_true")
    pc.add_argument("--verbose", action="store_true")
    pc.set_defaults(func=cmd_curve)

    ps = sub.add_parser("sigma", help="build one integral Frobenius matrix")
    ps.add_argument("--ap", required=True)
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--u", required=True)
    ps.add_argument("--b", required=True)
    ps.add_argument("--minpoly", default="x^2+x-1")
    ps.add_argument("--d", type=int, default=0)
    ps.set_defaults(func=cmd_sigma)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
