"""Command-line front end.

Examples::

    hptm table --problem builtin:ex1 --alpha 1 --order 4
    hptm solve --problem file:my_problem.txt --order 3
    hptm bound --problem builtin:ex1 --order 4 --xmax 1 --tmax 0.5
    hptm residual --problem builtin:ex2 --alpha 0.8 --order 6 --h 0.0125
    hptm plotdata --problem builtin:ex3 --alpha 0.9 --order 6

Exit status: 0 success, 2 usage error, 3 parse diagnostic, 4 resource error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Sequence

import numpy as np

from .errors import ParseDiagnostic, ResourceError, UsageError
from .problems import ProblemSpec, builtin, load_problem
from .residual import GridSpec, compare_exact, residual_norm
from .solver import DEFAULT_MAX_TERMS, error_bound, partial_sum, solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4

# Truncation orders that reproduce the alpha = 1 reference tables: u_0..u_4
# for ex1 (not six terms) and u_0..u_6 for ex2 and ex3.
TABLE_ORDER = {"ex1": 4, "ex2": 6, "ex3": 6}
FALLBACK_ORDER = 6

# Number style of the exact/approximate columns in the reference tables.
_VALUE_STYLE = {"ex1": ("f", 6), "ex2": ("f", 7), "ex3": ("E", 6)}
_DEFAULT_VALUE_STYLE = ("E", 6)
_ERR_STYLE = ("E", 6)

DEFAULT_XS = (0.25, 0.5, 0.75)
DEFAULT_TS = (0.25, 0.5, 0.75, 1.0)

_ORDER_HELP = (
    "truncation order N (default: 4 for ex1, 6 for ex2/ex3 and file problems; "
    "the ex1 reference table uses u_0..u_4, not the first six terms)"
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hptm",
        description="Series solutions of time-fractional PDEs with proportional delay.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p: argparse.ArgumentParser, xmax: float, tmax: float) -> None:
        p.add_argument("--problem", required=True, help="builtin:<ex1|ex2|ex3> or file:<path>")
        p.add_argument("--alpha", type=float, help="override the problem's alpha, in (0, 1]")
        p.add_argument("--order", type=int, help=_ORDER_HELP)
        p.add_argument("--xmax", type=float, default=xmax)
        p.add_argument("--tmax", type=float, default=tmax)
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "pretty"), default="csv")
        p.add_argument(
            "--max-terms",
            type=int,
            default=DEFAULT_MAX_TERMS,
            help="cap on stored monomials across u_0..u_N (default %(default)s)",
        )

    p = sub.add_parser("solve", help="print u_0 .. u_N")
    common(p, 1.0, 1.0)

    p = sub.add_parser("table", help="compare the partial sum with the closed form")
    common(p, 1.0, 1.0)
    p.add_argument("--xs", type=_float_list, default=DEFAULT_XS)
    p.add_argument("--ts", type=_float_list, default=DEFAULT_TS)

    p = sub.add_parser("residual", help="equation residual of S_ell for ell = 1..N")
    common(p, 1.0, 0.5)
    p.add_argument("--h", type=float, default=0.0125, help="time step of the residual grid")
    p.add_argument("--nx", type=int, default=21, help="number of x points")
    p.add_argument(
        "--substeps",
        type=int,
        default=1,
        help="run the L1 sum on a grid this many times finer than --h",
    )

    p = sub.add_parser("bound", help="ratio-test truncation bound on [0,xmax]x[0,tmax]")
    common(p, 1.0, 1.0)

    p = sub.add_parser("plotdata", help="(x, t, u) samples of the partial sum")
    common(p, 1.0, 1.0)
    p.add_argument("--xs", type=_float_list)
    p.add_argument("--ts", type=_float_list)
    p.add_argument("--points", type=int, default=21, help="grid points per axis")
    return parser


def _load(source: str, alpha: float | None) -> ProblemSpec:
    kind, sep, ref = source.partition(":")
    if not sep or not ref:
        raise UsageError(f"--problem must be builtin:<name> or file:<path>, got {source!r}")
    if kind == "builtin":
        spec = builtin(ref)
    elif kind == "file":
        try:
            spec = load_problem(ref)
        except OSError as err:
            raise UsageError(f"cannot read problem file: {err}") from None
    else:
        raise UsageError(f"unknown problem source {kind!r}")
    return spec if alpha is None else spec.with_alpha(alpha)


def _emit_rows(header: Sequence[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(r) for r in rows]
    else:
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _half_up(v: float, style: tuple[str, int]) -> str:
    """Format with round-half-up on the exact binary value of ``v``."""
    kind, digits = style
    d = Decimal(v)
    q = Decimal(1).scaleb(-digits)
    if kind == "f":
        return str(d.quantize(q, rounding=ROUND_HALF_UP))
    if d == 0:
        return f"{0:.{digits}f}E+00"
    exp = d.adjusted()
    mant = d.scaleb(-exp).quantize(q, rounding=ROUND_HALF_UP)
    if abs(mant) >= 10:
        exp += 1
        mant = d.scaleb(-exp).quantize(q, rounding=ROUND_HALF_UP)
    return f"{mant}E{exp:+03d}"


def _g(v: float) -> str:
    return f"{v:.7g}"


def _cmd_solve(args, spec: ProblemSpec, order: int) -> str:
    sol = solve(spec, order, args.max_terms)
    out = []
    for n, term in enumerate(sol.terms):
        out.append(f"# u_{n}")
        if term:
            out.append(term.to_text())
    return "\n".join(out) + "\n"


def _cmd_table(args, spec: ProblemSpec, order: int) -> str:
    sol = solve(spec, order, args.max_terms)
    rows = compare_exact(spec, sol, order, args.xs, args.ts)
    style = _VALUE_STYLE.get(spec.name, _DEFAULT_VALUE_STYLE)
    body = [
        [
            f"{r.x:.2f}",
            f"{r.t:.2f}",
            _half_up(r.exact, style),
            _half_up(r.approx, style),
            _half_up(r.abs_err, _ERR_STYLE),
        ]
        for r in rows
    ]
    return _emit_rows(("x", "t", "exact", "hptm", "abs_err"), body, args.format)


def _cmd_residual(args, spec: ProblemSpec, order: int) -> str:
    grid = GridSpec.box(args.xmax, args.tmax, args.h, args.nx)
    sol = solve(spec, order, args.max_terms)
    body = [
        [str(ell), f"{residual_norm(spec, sol, ell, grid, args.substeps):.6E}"]
        for ell in range(1, order + 1)
    ]
    return _emit_rows(("ell", "residual"), body, args.format)


def _cmd_bound(args, spec: ProblemSpec, order: int) -> str:
    sol = solve(spec, order, args.max_terms)
    est = error_bound(sol, order, args.xmax, args.tmax)
    na = "not applicable"
    body = [[f"gamma_{n}", na if g is None else _g(g)] for n, g in enumerate(est.gammas, 1)]
    body.append(["gamma", na if est.gamma is None else _g(est.gamma)])
    body.append(["bound", na if est.bound is None else _g(est.bound)])
    return _emit_rows(("quantity", "value"), body, args.format)


def _cmd_plotdata(args, spec: ProblemSpec, order: int) -> str:
    xs = args.xs or tuple(np.linspace(0.0, args.xmax, args.points))
    ts = args.ts or tuple(np.linspace(0.0, args.tmax, args.points))
    s = partial_sum(solve(spec, order, args.max_terms), order)
    body = [[_g(x), _g(t), f"{s.evaluate(x, t):.6E}"] for x in xs for t in ts]
    return _emit_rows(("x", "t", "u"), body, args.format)


_COMMANDS: dict[str, Callable[..., str]] = {
    "solve": _cmd_solve,
    "table": _cmd_table,
    "residual": _cmd_residual,
    "bound": _cmd_bound,
    "plotdata": _cmd_plotdata,
}


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Run one command; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            try:
                args = parser.parse_args(list(argv))
            except SystemExit as exc:  # --help
                return int(exc.code or 0)
        spec = _load(args.problem, args.alpha)
        order = args.order if args.order is not None else TABLE_ORDER.get(spec.name, FALLBACK_ORDER)
        if order < 1:
            raise UsageError(f"--order must be >= 1, got {order}")
        text = _COMMANDS[args.command](args, spec, order)
    except ParseDiagnostic as err:
        print(f"hptm: parse error: {err}", file=stderr)
        return EXIT_PARSE
    except ResourceError as err:
        print(f"hptm: {err}", file=stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError) as err:
        print(f"hptm: error: {err}", file=stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
