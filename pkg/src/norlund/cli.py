"""Command-line frontend.

Subcommands::

    norlund compute bernoulli|norlund|modified --n N [--ell L]
    norlund density --ell L --x X [--x X ...] [--method M]
    norlund verify --suite all | --id ID [--id ID ...] [--ell L] [--x X ...]
    norlund table density|modified ...

Exit codes: 0 success, 1 a verification failed, 2 bad input.
Output is JSON, CSV (RFC 4180) or aligned text; numbers never depend on
the locale.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import sys

import numpy as np

from .density import DensityMethod, MethodError, density
from .exact import bernoulli_numbers, modified_norlund, norlund_poly
from .quadrature import QuadratureError, fourier_density
from .report import format_value, reports_to_csv, reports_to_json
from .special import DomainError
from .verify import REGISTRY, UnknownIdentity, run_identity, run_suite

N_MAX = 200
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _emit_rows(header, rows, fmt):
    if fmt == "json":
        # exact rationals stay strings, plain numbers stay numbers
        data = [{h: (v if isinstance(v, (int, float)) else format_value(v)) for h, v in zip(header, r)} for r in rows]
        return json.dumps(data, indent=2) + "\n"
    rows = [[format_value(v) for v in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).ljust(wd) for c, wd in zip(line, widths)).rstrip() for line in [header, *rows]]
    return "\n".join(lines) + "\n"


def _emit_reports(reports, fmt):
    if fmt == "json":
        return reports_to_json(reports) + "\n"
    if fmt == "csv":
        return reports_to_csv(reports)
    out = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        out.append(
            f"{status}  {r.identity_id}  {json.dumps(r.parameters)}  "
            f"residual={format_value(r.residual)}  tolerance={format_value(r.tolerance)}"
        )
        if r.notes:
            out.append(f"      {r.notes}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _check_n(n):
    if not 0 <= n <= N_MAX:
        raise UsageError(f"--n must lie in [0, {N_MAX}]")


def cmd_compute(args):
    _check_n(args.n)
    if args.kind == "bernoulli":
        rows = [[n, b] for n, b in enumerate(bernoulli_numbers(args.n))]
        return _emit_rows(["n", "B_n"], rows, args.format)
    if args.kind == "norlund":
        if args.ell is None:
            rows = [[n, str(norlund_poly(n))] for n in range(args.n + 1)]
            return _emit_rows(["n", "B_n^(alpha)"], rows, args.format)
        rows = [[n, norlund_poly(n)(args.ell)] for n in range(args.n + 1)]
        return _emit_rows(["n", f"B_n^({args.ell})"], rows, args.format)
    if args.ell is None:
        raise UsageError("compute modified needs --ell")
    if args.n < 1:
        raise UsageError("modified Nörlund numbers start at n = 1")
    rows = [[n, modified_norlund(n, args.ell)] for n in range(1, args.n + 1)]
    return _emit_rows(["n", f"B_n^({args.ell})*"], rows, args.format)


def cmd_density(args):
    try:
        method = DensityMethod(args.method)
    except ValueError:
        raise UsageError(f"unknown method {args.method!r}") from None
    xs = _floats(args.x) or [0.0]
    rows = []
    for x in xs:
        if method is DensityMethod.FOURIER:
            r = fourier_density(args.ell, x)
            rows.append([x, r.value, r.error_estimate])
        else:
            rows.append([x, density(args.ell, x, method), ""])
    return _emit_rows(["x", "value", "error_estimate"], rows, args.format)


def _parse_params(items):
    out = {}
    for item in items or ():
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected KEY=VALUE, got {item!r}")
        try:
            out[key] = ast.literal_eval(raw)
        except (ValueError, SyntaxError):
            out[key] = raw
    return out


def _parse_tolerances(items):
    out = {}
    for key, value in _parse_params(items).items():
        if key not in REGISTRY:
            raise UnknownIdentity(key)
        if not isinstance(value, (int, float)) or not value > 0:
            raise UsageError(f"tolerance for {key} must be a positive number")
        out[key] = float(value)
    return out


def cmd_verify(args):
    tolerances = _parse_tolerances(args.tolerance)
    extra = _parse_params(args.param)
    if args.suite:
        if args.id or args.ell is not None or args.x or extra:
            raise UsageError("--suite all cannot be combined with --id, --ell, --x or --param")
        reports = run_suite(tolerances=tolerances)
    else:
        if not args.id:
            raise UsageError("give --suite all or at least one --id")
        xs = _floats(args.x)
        reports = []
        for ident in args.id:
            if ident not in REGISTRY:
                raise UnknownIdentity(ident)
        for ident in sorted(set(args.id), key=list(REGISTRY).index):
            reports += run_identity(ident, args.ell, xs or None, extra or None, tolerances.get(ident))
    return _emit_reports(reports, args.format), all(r.passed for r in reports)


def cmd_table(args):
    if args.kind == "density":
        ells = args.ell or [1, 2, 3, 4, 5, 6]
        if args.points < 2 or not args.x_max > args.x_min:
            raise UsageError("need --points >= 2 and --x-max > --x-min")
        xs = np.linspace(args.x_min, args.x_max, args.points)
        cols = [density(l, xs, args.method) for l in ells]
        rows = [[float(x)] + [float(c[i]) for c in cols] for i, x in enumerate(xs)]
        return _emit_rows(["x"] + [f"rho_{l}" for l in ells], rows, args.format)
    _check_n(args.n)
    ells = args.ell or [1, 2, 3]
    rows = [[n] + [modified_norlund(n, l) for l in ells] for n in range(1, args.n + 1)]
    return _emit_rows(["n"] + [f"B_n^({l})*" for l in ells], rows, args.format)


def _floats(values):
    out = []
    for v in values or ():
        for part in str(v).split(","):
            if part.strip():
                try:
                    out.append(float(part))
                except ValueError:
                    raise UsageError(f"not a number: {part!r}") from None
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "text"), default=None, help="output format")
    fmt.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")

    p = argparse.ArgumentParser(
        prog="norlund",
        description="Exact Nörlund tables, sech^2 convolution densities and identity checks.",
        epilog="Tolerances are multiplied by the NORLUND_TOLERANCE_SCALE environment variable (default 1).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[fmt], help="exact rational tables (default format: text)")
    c.add_argument("kind", choices=("bernoulli", "norlund", "modified"))
    c.add_argument("--n", type=int, required=True, help=f"largest index, at most {N_MAX}")
    c.add_argument("--ell", type=int, help="order: evaluates norlund at alpha=ell; required for modified")
    c.set_defaults(func=cmd_compute, default_format="text")

    d = sub.add_parser("density", parents=[fmt], help="evaluate rho_ell (default format: text)")
    d.add_argument("--ell", type=int, required=True)
    d.add_argument("--x", action="append", help="abscissa; repeat or comma-separate (default 0)")
    d.add_argument("--method", default="closed_form", help="one of " + ", ".join(m.value for m in DensityMethod))
    d.set_defaults(func=cmd_density, default_format="text")

    v = sub.add_parser("verify", parents=[fmt], help="run identity checks (default format: json)")
    v.add_argument("--suite", choices=("all",), help="run every registered identity")
    v.add_argument("--id", action="append", help="identity id (repeatable): " + ", ".join(REGISTRY))
    v.add_argument("--ell", type=int, help="restrict to one ell")
    v.add_argument("--x", action="append", help="custom grid; repeat or comma-separate")
    v.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra verifier keyword, e.g. psi_argument=printed")
    v.add_argument("--tolerance", action="append", metavar="ID=VALUE", help="override the tolerance of one identity")
    v.set_defaults(func=cmd_verify, default_format="json")

    t = sub.add_parser("table", parents=[fmt], help="plot-ready tables (default format: csv)")
    t.add_argument("kind", choices=("density", "modified"))
    t.add_argument("--ell", type=int, action="append", help="order (repeatable)")
    t.add_argument("--x-min", type=float, default=0.0)
    t.add_argument("--x-max", type=float, default=3.0)
    t.add_argument("--points", type=int, default=61)
    t.add_argument("--method", default="closed_form")
    t.add_argument("--n", type=int, default=12, help="modified table: largest n")
    t.set_defaults(func=cmd_table, default_format="csv")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = args.format or args.default_format
    try:
        result = args.func(args)
    except (UsageError, UnknownIdentity, DomainError, MethodError, ValueError) as e:
        msg = f"unknown identity id {e.args[0]!r}" if isinstance(e, UnknownIdentity) else str(e)
        print(f"norlund: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, ArithmeticError) as e:
        print(f"norlund: numerical failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
