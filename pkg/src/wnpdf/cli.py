"""Command-line front end.

Exit codes: 0 success, 1 runtime or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys

from . import __version__
from .angles import make_wn, wrap
from .bounds import plan_theoretical, required_n
from .errors import WNError
from .reports import SweepSpec, bench_rows, min_n_rows, sweep_rows
from .series import evaluate, pdf_f, pdf_g, pdf_reference, pdf_uniform
from .tables import crossover_search, format_float, plan_empirical


def _int_list(text: str) -> list[int]:
    """Parse ``"1-11"``, ``"0,2,5"`` or a mix such as ``"0,3-5"``."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError(f"need non-negative integers: {text!r}")
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a float list: {text!r}") from None


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_csv(path: str, header, rows) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_float(v) if isinstance(v, float) else v for v in row])


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def cmd_eval(args, parser) -> int:
    if args.method in ("f", "g") and args.n is None:
        parser.error(f"--method {args.method} requires --n")
    if args.method == "auto" and args.accuracy is None:
        parser.error("--method auto requires --accuracy")
    wn = make_wn(args.mu, args.sigma)
    wrap(args.x)
    if args.method == "f":
        print(_fmt(pdf_f(args.x, wn, args.n)))
    elif args.method == "g":
        print(_fmt(pdf_g(args.x, wn, args.n)))
    elif args.method == "uniform":
        print(_fmt(pdf_uniform()))
    elif args.method == "reference":
        print(_fmt(pdf_reference(args.x, wn).density))
    else:
        plan = plan_empirical(wn.sigma, args.accuracy)
        print(_fmt(evaluate(plan, args.x, wn)))
        print(plan)
    return 0


def cmd_plan(args, parser) -> int:
    sigma = make_wn(0.0, args.sigma).sigma
    if args.source == "theoretical":
        req = required_n(sigma, args.accuracy)
        print(plan_theoretical(sigma, args.accuracy))
        print(f"n_f={format_float(req.n_f)} n_g={format_float(req.n_g)}")
    else:
        print(plan_empirical(sigma, args.accuracy))
    return 0


def cmd_sweep(args, parser) -> int:
    spec = SweepSpec(args.sigma_min, args.sigma_max, args.steps, tuple(args.n), args.grid_size, args.log)
    _write_csv(args.out, ("sigma", "n", "error"), sweep_rows(spec, args.kind))
    return 0


def cmd_crossover(args, parser) -> int:
    table = crossover_search(args.accuracy, args.n_max, args.sigma_max, args.tol,
                             sigma_min=args.sigma_min, grid_size=args.grid_size, decimals=args.decimals)
    with _open_out(args.out) as fh:
        fh.write(table.to_csv())
    return 0


def cmd_min_n(args, parser) -> int:
    _write_csv(args.out, ("sigma", "n_f", "n_g", "n_combined", "kind"),
               min_n_rows(args.accuracy, args.sigma_min, args.sigma_max, args.steps, args.log))
    return 0


def cmd_bench(args, parser) -> int:
    _write_csv(args.out, ("sigma", "kind", "n", "ns_per_eval"),
               bench_rows(args.sigma, args.accuracy, args.repetitions, args.inner))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wnpdf", description="Wrapped normal density evaluation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate the density at one point")
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--mu", type=float, default=0.0)
    e.add_argument("--sigma", type=float, required=True)
    e.add_argument("--method", choices=("f", "g", "uniform", "auto", "reference"), default="reference")
    e.add_argument("--n", type=int)
    e.add_argument("--accuracy", type=float)
    e.set_defaults(func=cmd_eval)

    pl = sub.add_parser("plan", help="print the evaluation plan for a sigma and accuracy")
    pl.add_argument("--sigma", type=float, required=True)
    pl.add_argument("--accuracy", type=float, required=True)
    pl.add_argument("--source", choices=("empirical", "theoretical"), default="empirical")
    pl.set_defaults(func=cmd_plan)

    s = sub.add_parser("sweep", help="worst-case error over sigma and n (CSV sigma,n,error)")
    s.add_argument("--kind", choices=("f", "g"), required=True)
    s.add_argument("--sigma-min", type=float, default=0.1)
    s.add_argument("--sigma-max", type=float, default=10.0)
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--n", type=_int_list, default=list(range(1, 12)), help="e.g. 1-11 or 0,2,4")
    s.add_argument("--grid-size", type=int, default=1000)
    s.add_argument("--log", action="store_true", help="log-spaced sigma grid")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("crossover", help="regenerate a piecewise plan table (CSV sigma_upper,kind,n)")
    c.add_argument("--accuracy", type=float, required=True)
    c.add_argument("--n-max", type=int, default=5)
    c.add_argument("--sigma-min", type=float, default=0.1)
    c.add_argument("--sigma-max", type=float, default=20.0)
    c.add_argument("--tol", type=float, default=1e-3)
    c.add_argument("--grid-size", type=int, default=1024)
    c.add_argument("--decimals", type=int, help="round boundaries half-up for reporting")
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_crossover)

    m = sub.add_parser("min-n", help="bound-derived orders over sigma (CSV sigma,n_f,n_g,n_combined,kind)")
    m.add_argument("--accuracy", type=float, required=True)
    m.add_argument("--sigma-min", type=float, default=0.01)
    m.add_argument("--sigma-max", type=float, default=20.0)
    m.add_argument("--steps", type=int, default=2000)
    m.add_argument("--log", action="store_true")
    m.add_argument("--out", default="-")
    m.set_defaults(func=cmd_min_n)

    b = sub.add_parser("bench", help="time planned, per-series and reference evaluation")
    b.add_argument("--sigma", type=_float_list, default=[0.5, 1.0, 2.0, 4.0, 10.0])
    b.add_argument("--accuracy", type=float, default=1e-5)
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--inner", type=int, default=200, help="evaluations per timed repetition")
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (WNError, OSError) as exc:
        print(f"wnpdf: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
