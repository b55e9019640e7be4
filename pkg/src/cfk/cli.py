"""Command-line interface: invariant reports, relation checks, and plots.

All reports are deterministic: a fixed input produces byte-identical output
except for the optional timing field, which --no-timing suppresses.  With
--cache DIR invariant reports are stored keyed by the canonical form of the
expression, so cached and fresh runs emit identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from math import gcd

from .complexes import (
    InvalidTorusKnotError,
    KnotExpressionError,
    canonical_expression,
    dual,
    tensor,
    torus_knot_complex,
)
from .exactnum import PiecewiseLinear
from .semigroup import alexander_torus, step_vector
from .upsilon import upsilon
from .upsilon2 import upsilon2_at

SCHEMA_VERSION = 1
CACHE_ENV_VAR = "CFK_CACHE_DIR"

EXIT_OK = 0
EXIT_NOT_DISTINGUISHED = 1
EXIT_UNEQUAL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _fmt(x: Fraction) -> str:
    return str(Fraction(x))


def _build_complex_from_canonical(canonical: str):
    out = None
    for factor in canonical.split(" # "):
        negate = factor.startswith("-")
        body = factor[1:] if negate else factor
        p, q = body[2:-1].split(",")
        c = torus_knot_complex(int(p), int(q))
        if negate:
            c = dual(c)
        out = c if out is None else tensor(out, c)
    return out


def build_invariant_report(expression: str, grid: int = 0) -> dict:
    """Invariant report for a knot expression, without the timing field."""
    canonical = canonical_expression(expression)
    complex_ = _build_complex_from_canonical(canonical)
    ups = upsilon(complex_)
    entries = []
    for t0, jump in ups.singularities():
        entry = {"t": _fmt(t0), "slope_jump": _fmt(jump)}
        if jump > 0:
            entry["upsilon2"] = _fmt(upsilon2_at(complex_, t0, ups=ups))
        else:
            entry["upsilon2"] = None
            entry["reason"] = "slope jump is not positive"
        entries.append(entry)
    if grid > 0:
        _grid_check(complex_, ups, grid)
    return {
        "schema_version": SCHEMA_VERSION,
        "expression": canonical,
        "generator_count": len(complex_.generators),
        "upsilon": {
            "breakpoints": [[_fmt(t), _fmt(v)] for t, v in ups.breakpoints]
        },
        "singularities": entries,
    }


def _grid_check(complex_, ups: PiecewiseLinear, grid: int) -> None:
    from .upsilon import BreakpointVerificationError, _SectorEngine

    engine = _SectorEngine(complex_)
    for k in range(1, grid):
        t = Fraction(2 * k, grid)
        if engine.gamma(t)[0] != -ups.evaluate(t) / 2:
            raise BreakpointVerificationError(
                f"dense-grid verification failed at t={t}"
            )


def _emit_json(payload: dict, timing_ms=None) -> None:
    out = dict(payload)
    if timing_ms is not None:
        out["timing_ms"] = timing_ms
    sys.stdout.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")


def _cache_path(cache_dir: str, canonical: str) -> str:
    digest = hashlib.sha256(canonical.encode()).hexdigest()[:24]
    return os.path.join(cache_dir, digest + ".json")


def cmd_invariants(args) -> int:
    started = time.perf_counter()
    try:
        canonical = canonical_expression(args.expression)
    except KnotExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cache_dir = args.cache or os.environ.get(CACHE_ENV_VAR)
    report = None
    if cache_dir:
        path = _cache_path(cache_dir, canonical)
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                report = json.load(fh)
    if report is None:
        try:
            report = build_invariant_report(args.expression, grid=args.grid)
        except (KnotExpressionError, InvalidTorusKnotError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            with open(_cache_path(cache_dir, canonical), "w", encoding="utf-8") as fh:
                json.dump(report, fh, indent=2, ensure_ascii=False)
    timing = None
    if not args.no_timing:
        timing = int((time.perf_counter() - started) * 1000)
    _emit_json(report, timing)
    return EXIT_OK


def recursion_report(p: int, q: int) -> dict:
    """Compare upsilon of T(p,q) against T(p,q-p) plus T(p,p+1).

    Parameters equal to 1 denote the unknot complex, which makes the
    recursion bottom out.
    """
    if not (1 <= p < q) or gcd(p, q) != 1:
        raise InvalidTorusKnotError(f"need coprime 1 <= p < q, got ({p}, {q})")
    lhs = upsilon(torus_knot_complex(p, q))
    rhs = upsilon(torus_knot_complex(p, q - p)) + upsilon(torus_knot_complex(p, p + 1))
    ts = sorted({t for t, _ in lhs.breakpoints} | {t for t, _ in rhs.breakpoints})
    gap = max(abs(lhs.evaluate(t) - rhs.evaluate(t)) for t in ts)
    return {
        "schema_version": SCHEMA_VERSION,
        "p": p,
        "q": q,
        "equal": lhs == rhs,
        "max_breakpoint_gap": _fmt(gap),
        "lhs_breakpoints": [[_fmt(t), _fmt(v)] for t, v in lhs.breakpoints],
        "rhs_breakpoints": [[_fmt(t), _fmt(v)] for t, v in rhs.breakpoints],
    }


def cmd_verify_recursion(args) -> int:
    try:
        report = recursion_report(args.p, args.q)
    except InvalidTorusKnotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _emit_json(report)
    else:
        verdict = "EQUAL" if report["equal"] else "UNEQUAL"
        print(
            f"upsilon[T({args.p},{args.q})] vs upsilon[T({args.p},{args.q - args.p})]"
            f" + upsilon[T({args.p},{args.p + 1})]: {verdict}"
            f" (max breakpoint gap {report['max_breakpoint_gap']})"
        )
    return EXIT_OK if report["equal"] else EXIT_UNEQUAL


def distinguish_report(expr1: str, expr2: str) -> dict:
    """Compare upsilon and, where defined, secondary upsilon of two expressions."""
    canon1 = canonical_expression(expr1)
    canon2 = canonical_expression(expr2)
    c1 = _build_complex_from_canonical(canon1)
    c2 = _build_complex_from_canonical(canon2)
    ups1 = upsilon(c1)
    ups2 = upsilon(c2)
    report = {
        "schema_version": SCHEMA_VERSION,
        "expression_1": canon1,
        "expression_2": canon2,
    }
    if ups1 != ups2:
        ts = sorted({t for t, _ in ups1.breakpoints} | {t for t, _ in ups2.breakpoints})
        witness = next(t for t in ts if ups1.evaluate(t) != ups2.evaluate(t))
        report.update(
            distinguished=True,
            by="upsilon",
            t=_fmt(witness),
            values=[_fmt(ups1.evaluate(witness)), _fmt(ups2.evaluate(witness))],
        )
        return report
    separating = []
    for t0, jump in ups1.singularities():
        if jump <= 0:
            continue
        v1 = upsilon2_at(c1, t0, ups=ups1)
        v2 = upsilon2_at(c2, t0, ups=ups2)
        if v1 != v2:
            separating.append({"t": _fmt(t0), "values": [_fmt(v1), _fmt(v2)]})
    if separating:
        report.update(
            distinguished=True,
            by="upsilon2",
            t=separating[0]["t"],
            values=separating[0]["values"],
            separating_singularities=separating,
        )
    else:
        report.update(
            distinguished=False,
            note="not distinguished by these invariants; "
                 "this is not a proof of stable equivalence",
        )
    return report


def _print_distinguish(report: dict, as_json: bool) -> int:
    if as_json:
        _emit_json(report)
    elif report["distinguished"]:
        print(
            f"DISTINGUISHED at t0={report['t']} via {report['by']}: "
            f"{report['values'][0]} vs {report['values'][1]}"
        )
    else:
        print("NOT DISTINGUISHED BY THESE INVARIANTS")
        print("(upsilon and secondary upsilon agree; this does not prove stable equivalence)")
    return EXIT_OK if report["distinguished"] else EXIT_NOT_DISTINGUISHED


def cmd_distinguish(args) -> int:
    try:
        report = distinguish_report(args.expression_1, args.expression_2)
    except (KnotExpressionError, InvalidTorusKnotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _print_distinguish(report, args.json)


def cmd_conjecture(args) -> int:
    p, k = args.p, args.k
    if p < 5 or not 2 <= k <= p - 2 or gcd(p, k) != 1:
        print(
            "error: conjecture test needs p >= 5 and coprime 2 <= k <= p-2",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        report = distinguish_report(f"T({p},{p + k})", f"T({k},{p}) # T({p},{p + 1})")
    except (KnotExpressionError, InvalidTorusKnotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _print_distinguish(report, args.json)


def _svg_plot(ups: PiecewiseLinear) -> str:
    width, height, margin = 640, 480, 48
    values = [v for _, v in ups.breakpoints]
    vmin = min(min(values), Fraction(0))
    vmax = max(max(values), Fraction(0))
    if vmin == vmax:
        vmin -= 1
        vmax += 1

    def sx(t: Fraction) -> str:
        return f"{float(margin + (width - 2 * margin) * t / 2):.2f}"

    def sy(v: Fraction) -> str:
        frac = (vmax - v) / (vmax - vmin)
        return f"{float(margin + (height - 2 * margin) * frac):.2f}"

    points = " ".join(f"{sx(t)},{sy(v)}" for t, v in ups.breakpoints)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{sx(Fraction(0))}" y1="{sy(Fraction(0))}" x2="{sx(Fraction(2))}" '
        f'y2="{sy(Fraction(0))}" stroke="#999" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#1f5fa8" stroke-width="2" points="{points}"/>',
    ]
    for t0, _ in ups.singularities():
        lines.append(
            f'<circle cx="{sx(t0)}" cy="{sy(ups.evaluate(t0))}" r="4" fill="#c03020">'
            f"<title>t={t0}</title></circle>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_plot(args) -> int:
    try:
        canonical = canonical_expression(args.expression)
        complex_ = _build_complex_from_canonical(canonical)
        ups = upsilon(complex_)
    except (KnotExpressionError, InvalidTorusKnotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = ups.to_csv() if args.format == "csv" else _svg_plot(ups)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_staircase(args) -> int:
    try:
        complex_ = torus_knot_complex(args.p, args.q)
    except InvalidTorusKnotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    a, b = min(args.p, args.q), max(args.p, args.q)
    steps = [] if a == 1 else list(step_vector(alexander_torus(a, b)).steps)
    _emit_json(
        {
            "schema_version": SCHEMA_VERSION,
            "p": args.p,
            "q": args.q,
            "steps": steps,
            "complex": complex_.to_json_dict(),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfk",
        description="Exact upsilon and secondary upsilon invariants of "
                    "staircase knot complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="full invariant report for an expression")
    p_inv.add_argument("expression")
    p_inv.add_argument("--grid", type=int, default=0, metavar="N",
                       help="verify upsilon on N extra evenly spaced parameters")
    p_inv.add_argument("--cache", metavar="DIR", default=None,
                       help=f"report cache directory (or ${CACHE_ENV_VAR})")
    p_inv.add_argument("--no-timing", action="store_true",
                       help="omit the timing field for byte-stable output")
    p_inv.set_defaults(func=cmd_invariants)

    p_fk = sub.add_parser(
        "verify-recursion",
        help="check upsilon[T(p,q)] = upsilon[T(p,q-p)] + upsilon[T(p,p+1)]",
    )
    p_fk.add_argument("p", type=int)
    p_fk.add_argument("q", type=int)
    p_fk.add_argument("--json", action="store_true")
    p_fk.set_defaults(func=cmd_verify_recursion)

    p_dis = sub.add_parser("distinguish",
                           help="compare the invariants of two expressions")
    p_dis.add_argument("expression_1")
    p_dis.add_argument("expression_2")
    p_dis.add_argument("--json", action="store_true")
    p_dis.set_defaults(func=cmd_distinguish)

    p_conj = sub.add_parser(
        "conjecture",
        help="compare T(p,p+k) against T(k,p) # T(p,p+1)",
    )
    p_conj.add_argument("p", type=int)
    p_conj.add_argument("k", type=int)
    p_conj.add_argument("--json", action="store_true")
    p_conj.set_defaults(func=cmd_conjecture)

    p_plot = sub.add_parser("plot", help="write upsilon as CSV breakpoints or SVG")
    p_plot.add_argument("expression")
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--format", choices=("csv", "svg"), default="csv")
    p_plot.set_defaults(func=cmd_plot)

    p_st = sub.add_parser("staircase", help="step vector and generators of T(p,q)")
    p_st.add_argument("p", type=int)
    p_st.add_argument("q", type=int)
    p_st.set_defaults(func=cmd_staircase)

    return parser


def _pad_dash_expressions(argv):
    # argparse reads "-T(2,3)" as an option; a leading space makes it a
    # positional, and the knot grammar ignores whitespace anyway.
    return [" " + a if a.startswith("-T(") or a.startswith("-(") else a for a in argv]


def run(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_pad_dash_expressions(list(argv)))
    return args.func(args)


def main() -> None:
    sys.exit(run())
