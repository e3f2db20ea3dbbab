"""Command-line front end: ``thetasum {eval,grid,fit,verify,bench}``.

Exit codes: 0 success, 1 verification or convergence failure, 2 usage
error, 3 domain error.
"""

import argparse
import io
import json
import math
import sys
import time

import numpy as np

from . import core, fits, verify
from ._accel import BACKEND
from .errors import DomainError, FitConvergenceError
from .grid import GridSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

GRID_COLUMNS = ("s", "y0", "yhalf", "e", "efit", "diff", "diffit")


class UsageError(Exception):
    pass


def fmt(x):
    """17 significant digits for floats (lossless round trip), plain ints and strings."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return "" if x is None else str(x)


def _json_default(x):
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def render_table(header, rows, kind):
    if kind == "json":
        return json.dumps({"columns": list(header), "rows": [list(r) for r in rows]}, default=_json_default) + "\n"
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def render_record(record, kind):
    if kind == "json":
        return json.dumps(record, default=_json_default) + "\n"
    return render_table(list(record), [list(record.values())], "csv")


def emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


# -- eval --------------------------------------------------------------------


def cmd_eval(args):
    rep = core.evaluate(args.a, args.s, args.tol, args.method)
    record = {"a": args.a, "s": args.s, "tol": args.tol, **rep.as_dict()}
    emit(render_record(record, args.format), args.out)
    return EXIT_OK


# -- grid --------------------------------------------------------------------


def parse_columns(text):
    cols = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in cols if c not in GRID_COLUMNS]
    if unknown or not cols:
        raise UsageError(f"unknown column(s) {','.join(unknown) or '(none)'}; choose from {','.join(GRID_COLUMNS)}")
    return cols


def grid_table(points, columns, tol):
    producers = {
        "s": lambda s: s,
        "y0": lambda s: core.y_values(0.0, s, tol),
        "yhalf": lambda s: core.y_values(0.5, s, tol),
        "e": lambda s: np.array([core.e_of_s(x, tol) for x in s]),
        "efit": lambda s: fits.efit(s),
        "diff": lambda s: np.array([core.diff0_half(x, tol) for x in s]),
        "diffit": lambda s: fits.diffit(s),
    }
    data = [np.asarray(producers[c](points), dtype=float) for c in columns]
    return [tuple(float(col[i]) for col in data) for i in range(len(points))]


def cmd_grid(args):
    columns = parse_columns(args.columns)
    points = GridSpec.linear(args.start, args.stop, args.step).points()
    rows = grid_table(points, columns, args.tol)
    emit(render_table(columns, rows, args.format), args.out)
    return EXIT_OK


# -- fit ---------------------------------------------------------------------


def _self_test(args):
    s = GridSpec.linear(0.3, 0.9, 0.02).points()
    params, stats = fits.fit_sigmoid(np.column_stack([s, fits.efit(s)]))
    want = fits.PUBLISHED_EFIT.as_array()
    err = float(np.max(np.abs(params.as_array() - want)))
    record = {**vars(params), **stats.as_dict(), "max_param_error": err, "passed": err <= 1e-6}
    emit(render_record(record, args.format), args.out)
    return EXIT_OK if err <= 1e-6 else EXIT_FAIL


def cmd_fit(args):
    if args.target != "e":
        raise UsageError(f"unsupported fit target {args.target!r}; only 'e' can be refitted")
    if args.self_test:
        return _self_test(args)
    s = GridSpec.linear(args.start, args.stop, args.step).points()
    y = np.array([core.e_of_s(x, args.tol) for x in s])
    try:
        params, stats = fits.fit_sigmoid(np.column_stack([s, y]))
    except FitConvergenceError as exc:
        print(f"error: {exc}; best so far {exc.best}", file=sys.stderr)
        return EXIT_FAIL
    emit(render_record({**vars(params), **stats.as_dict()}, args.format), args.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(args):
    reports = verify.run_suite(args.tol)
    if args.format == "json":
        emit(json.dumps({"passed": all(r.passed for r in reports), "checks": [r.as_dict() for r in reports]},
                        default=_json_default) + "\n", args.out)
    else:
        header = ("name", "passed", "worst_residual", "worst_s", "worst_a", "threshold")
        rows = []
        for r in reports:
            p = tuple(r.worst_point) + (None, None)
            rows.append((r.name, r.passed, r.worst_residual, p[0], p[1], r.threshold))
        emit(render_table(header, rows, "csv"), args.out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.name}: worst residual {fmt(r.worst_residual)} at {r.worst_point} "
              f"exceeds {fmt(r.threshold)}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# -- bench -------------------------------------------------------------------


def _best_time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rows(points, tol, repeat=5):
    rows = []
    for s in points:
        s = float(s)
        kd = core.truncation_K(core.Method.DIRECT, s, tol)
        kt = core.truncation_K(core.Method.TRANSFORMED, s, tol)
        auto = core.eval_auto(0.0, s, tol)
        times = [
            _best_time(lambda f=f: f(0.0, s, tol), repeat) * 1e6
            for f in (core.eval_direct, core.eval_transformed, core.eval_auto)
        ]
        rows.append((s, kd, kt, auto.terms, auto.method.value, *times))
    return rows


def cmd_bench(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    points = GridSpec.log(args.start, args.stop, args.points).points()
    core.eval_auto(0.0, 1.0, args.tol)  # warm the kernels before timing
    rows = bench_rows(points, args.tol, args.repeat)
    header = ("s", "K_direct", "K_transformed", "K_auto", "method_auto",
              "t_direct_us", "t_transformed_us", "t_auto_us")
    emit(render_table(header, rows, args.format), args.out)
    print(f"backend: {BACKEND}", file=sys.stderr)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p, with_format=True):
    p.add_argument("--tol", type=float, default=core.DEFAULT_TOL, help="absolute tolerance (default 1e-12)")
    if with_format:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser():
    parser = _Parser(prog="thetasum", description="Gaussian lattice sums y_a(s) and their dual series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate y_a(s) at one point")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--method", choices=("auto", "direct", "transformed"), default="auto")
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("grid", help="tabulate columns over a linear s-grid")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--columns", default="s,y0", help=f"comma list from {','.join(GRID_COLUMNS)}")
    _common(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("fit", help="refit the Boltzmann sigmoid to e(s)")
    p.add_argument("--target", default="e")
    p.add_argument("--from", dest="start", type=float, default=0.35)
    p.add_argument("--to", dest="stop", type=float, default=0.85)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--self-test", action="store_true", help="recover the published constants from exact samples")
    _common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="run the identity, bound and limit checks")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="term counts and timings of the two representations")
    p.add_argument("--from", dest="start", type=float, default=0.05)
    p.add_argument("--to", dest="stop", type=float, default=20.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--repeat", type=int, default=5)
    _common(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"thetasum {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"thetasum {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
