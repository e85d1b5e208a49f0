"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import tsurf
from ._tol import default_tol
from .affine import verify_iota_conjugacy, verify_mu, verify_nu
from .algebraic import algebraic_model, sc_ratio_check
from .closed_forms import grid_stratum, quotient_stratum
from .obstruction import excluded_triangle_group
from .rectangles import grid_surface
from .reports import PreconditionError
from .ribbon_graph import GraphError
from .semiregular import semiregular_quotient, semiregular_surface
from .surface import SurfaceError, stratum, validate
from .veech import is_arithmetic, relation_check, verify_generators

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3
MODELS = ("grid", "semiregular", "quotient")
CSV_HEADER = ["m", "n", "gamma", "model", "genus", "zeros", "zero_order", "arithmetic", "excluded"]


class UsageError(Exception):
    pass


def _params(m: int, n: int) -> None:
    if m < 2 or n < 2 or m * n < 6:
        raise UsageError(f"need m, n >= 2 and mn >= 6, got ({m}, {n})")


def build_model(m: int, n: int, model: str):
    _params(m, n)
    if model == "grid":
        return grid_surface(m, n)
    if model == "semiregular":
        return semiregular_surface(m, n)
    if model == "quotient":
        if m % 2 or n % 2:
            raise UsageError("the quotient model needs m and n even")
        return semiregular_quotient(m, n)
    raise UsageError(f"unknown model {model!r}")


def cmd_build(args) -> int:
    s = build_model(args.m, args.n, args.model)
    text = tsurf.dumps(s)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _angle(a: float) -> str:
    k = a / (2 * math.pi)
    return f"2pi*{round(k)}" if abs(k - round(k)) < 1e-6 else repr(a)


def cmd_analyze(args) -> int:
    s = tsurf.read(args.path)
    report = validate(s)
    print(f"valid: {'true' if report.ok else 'false'}")
    if not report.ok:
        print(f"problem: {report.first()}")
        return EXIT_FAIL
    st = stratum(s)
    print(f"polygons: {len(s.polygons)}")
    print(f"edges: {s.num_glued_edges()}")
    print(f"genus: {st.genus}")
    print(f"zeros: {st.zeros_label()}")
    print(f"zero_orders: {' '.join(map(str, st.zero_orders))}")
    print(f"cone_angles: {' '.join(_angle(a) for a in st.cone_angles)}")
    print(f"marked_points: {st.marked_points}")
    print(f"components: {st.components}")
    print(f"area: {s.area()!r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    m, n = args.m, args.n
    _params(m, n)
    if args.which == "mu":
        reports = [verify_mu(m, n, geometric=args.geometric)]
    elif args.which == "nu":
        reports = [verify_nu(m, n, geometric=args.geometric)]
    elif args.which == "iota":
        reports = [verify_iota_conjugacy(m, n)]
    elif args.which == "veech":
        reports = [relation_check(m, n, projective=True), verify_generators(m, n)]
        literal = relation_check(m, n)
        if not literal.ok:
            reports[0].notes.append("literal sign fails for: " + ", ".join(literal.failures))
    else:
        reports = [sc_ratio_check(m, n, tol=args.tol)]
        model = algebraic_model(m, n)
        reports[0].notes.append(f"curve: {model.curve()}")
        reports[0].notes.append(f"curve exact: {model.curve(exact=True)}")
        reports[0].notes.append(f"form: {model.form()}")
    for r in reports:
        print("\n".join(r.lines()))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def sweep_rows(max_m: int, max_n: int) -> tuple:
    """Table rows plus a list of mismatches against the closed forms."""
    rows, mismatches = [], []
    for m in range(2, max_m + 1):
        for n in range(2, max_n + 1):
            if m * n < 6:
                continue
            models = ["grid", "semiregular"] + (["quotient"] if m % 2 == 0 and n % 2 == 0 else [])
            for model in models:
                st = stratum(build_model(m, n, model))
                zeros = st.zeros
                row = dict(m=m, n=n, gamma=math.gcd(m, n), model=model, genus=st.genus,
                           zeros=len(zeros), zero_order=max(zeros, default=0),
                           arithmetic=is_arithmetic(m, n),
                           excluded=excluded_triangle_group(m, n))
                want = quotient_stratum(m, n) if model == "quotient" else grid_stratum(m, n)
                if len(set(zeros)) > 1 or (row["genus"], row["zeros"], row["zero_order"]) != tuple(want):
                    mismatches.append((m, n, model))
                rows.append(row)
    return rows, mismatches


def _fmt(v) -> str:
    return ("true" if v else "false") if isinstance(v, bool) else str(v)


def cmd_table(args) -> int:
    rows, mismatches = sweep_rows(args.max_m, args.max_n)
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([_fmt(r[k]) for k in CSV_HEADER])
    if not args.no_figure:
        from .plotting import sweep_figure

        sweep_figure(rows, args.figure or out.with_suffix(".png"))
    for m, n, model in mismatches:
        print(f"mismatch with closed form: m={m} n={n} model={model}", file=sys.stderr)
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_render(args) -> int:
    from .render import render_svg

    s = tsurf.read(args.path)
    Path(args.out).write_text(render_svg(s))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flatgrid", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a surface as TSURF v1")
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--model", choices=MODELS, default="grid")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="validate a TSURF file and print its stratum")
    a.add_argument("path")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run one verification")
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--which", choices=("mu", "nu", "iota", "veech", "sc"), required=True)
    v.add_argument("--geometric", action="store_true",
                   help="also compare the mapped rectangle surface with the polygon model")
    v.add_argument("--tol", type=float, default=1e-6, help="tolerance for the sc check")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="CSV sweep of strata and predicates, plus a PNG figure")
    t.add_argument("--max-m", type=int, required=True)
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--figure", help="PNG path (default: CSV path with .png suffix)")
    t.add_argument("--no-figure", action="store_true")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("render", help="draw a TSURF file as SVG")
    r.add_argument("path")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    try:
        default_tol()
        return args.func(args)
    except (UsageError, PreconditionError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except tsurf.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SurfaceError as exc:
        print(f"invalid surface: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
