"""Command-line front end.

    fracspline eval spline --n 1:5 --x0 -0.5 --x1 5.5 --step 0.01 --out fig1.csv
    fracspline eval fracspline --alpha 1.25:4:0.25 --x0 -1 --x1 8 --step 0.01 --out fig2.csv
    fracspline eval polyspline --alpha 0.25,1.5,sqrt5 --nmax 3 --x0 0 --x1 5 --step 0.01 --out fig3.csv
    fracspline symbol --alpha 2.5 --omega0 -10 --omega1 10 --step 0.05
    fracspline delta --alpha 3 --x 0.5 --order 8 --shifted
    fracspline verify --suite combinatorics --max-n 12 --out report.json
    fracspline figures --outdir figs

Exit codes: 0 success, 1 failed check or established identity, 2 bad
flags, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import distributional as dist
from . import serialize
from . import spectral as spec
from . import splines as spl
from . import verify as ver

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_NAMED = {"pi": math.pi, "e": math.e, "tau": math.tau}
_SQRT = re.compile(r"^sqrt\(?(\d+(?:\.\d+)?)\)?$")


class UsageError(ValueError):
    pass


def parse_real(token: str) -> float:
    """Real flag value: decimals, ``p/q``, ``pi``, ``e``, ``sqrtN`` (with optional sign)."""
    t = token.strip().lower()
    sign = 1.0
    if t.startswith("-"):
        sign, t = -1.0, t[1:]
    elif t.startswith("+"):
        t = t[1:]
    if t in _NAMED:
        return sign * _NAMED[t]
    m = _SQRT.match(t)
    if m:
        return sign * math.sqrt(float(m.group(1)))
    try:
        v = float(Fraction(t)) if "/" in t else float(t)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {token!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {token!r}")
    return sign * v


def parse_real_list(text: str) -> list[float]:
    """Comma-separated reals; each item may be a range ``start:stop[:step]`` (inclusive, step 1 by default)."""
    out: list[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise argparse.ArgumentTypeError(f"empty item in {text!r}")
        if ":" in item:
            parts = item.split(":")
            if len(parts) not in (2, 3):
                raise argparse.ArgumentTypeError(f"bad range {item!r}")
            a, b = parse_real(parts[0]), parse_real(parts[1])
            h = parse_real(parts[2]) if len(parts) == 3 else 1.0
            if not h > 0 or b < a:
                raise argparse.ArgumentTypeError(f"bad range {item!r}")
            count = int(math.floor((b - a) / h + 1e-9)) + 1
            out.extend(a + i * h for i in range(count))
        else:
            out.append(parse_real(item))
    return out


def parse_int_list(text: str) -> list[int]:
    vals = parse_real_list(text)
    if any(not v.is_integer() for v in vals):
        raise argparse.ArgumentTypeError(f"integers required: {text!r}")
    return [int(v) for v in vals]


def _positive(token: str) -> float:
    v = parse_real(token)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(token: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {token!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos_int(token: str) -> int:
    v = _nonneg_int(token)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


# ---------------------------------------------------------------------------
# config file


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; keys use flag spelling (``max-n`` or ``max_n``)."""
    cfg: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def _apply_config(sub: argparse.ArgumentParser, cfg: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, raw in cfg.items():
        if key not in actions:
            raise UsageError(f"unknown config key {key!r}")
        act = actions[key]
        if act.nargs == 0:  # store_true
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            continue
        try:
            value = act.type(raw) if act.type else raw
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"config key {key!r}: {exc}") from None
        if act.choices is not None and value not in act.choices:
            raise UsageError(f"config key {key!r}: {value!r} not in {sorted(act.choices)}")
        defaults[key] = value
        act.required = False
    sub.set_defaults(**defaults)


# ---------------------------------------------------------------------------
# sanity checks embedded in figure data


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _argmax(xs, ys):
    i = max(range(len(ys)), key=lambda j: ys[j])
    return xs[i], ys[i]


def spline_checks(xs: Sequence[float], columns: dict[str, list[float]], orders: Sequence[int], step: float) -> list[Check]:
    out = []
    for n in orders:
        ys = columns[f"B_{n}"]
        outside = max((abs(y) for x, y in zip(xs, ys) if x < 0 or x > n), default=0.0)
        out.append(Check(f"B_{n} support [0,{n}]", outside == 0.0, f"max |B| outside = {outside:.3g}"))
        neg = min(ys)
        out.append(Check(f"B_{n} nonnegative", neg >= 0.0, f"min = {neg:.3g}"))
        if n == 1:
            inside = [y for x, y in zip(xs, ys) if 0 <= x < 1]
            ok = bool(inside) and all(y == 1.0 for y in inside)
            out.append(Check("B_1 = 1 on [0,1)", ok))
        else:
            xp, _ = _argmax(xs, ys)
            out.append(Check(f"B_{n} peak at {n / 2}", abs(xp - n / 2) <= step / 2 + 1e-12, f"argmax x = {xp:.6g}"))
    return out


def fracspline_checks(xs, columns: dict[str, list[float]], alphas: Sequence[float]) -> list[Check]:
    out = []
    for a in alphas:
        ys = columns[_alpha_label("B", a)]
        left = max((abs(y) for x, y in zip(xs, ys) if x <= 0), default=0.0)
        out.append(Check(f"B_{a:g} vanishes for x <= 0", left == 0.0, f"max = {left:.3g}"))
        if float(a).is_integer():
            n = int(a)
            dev = max(abs(y - spl.bspline_int(n, x)) for x, y in zip(xs, ys))
            out.append(Check(f"B_{a:g} equals integer-order spline", dev <= 1e-12, f"max dev = {dev:.3g}"))
            xp, _ = _argmax(xs, ys)
            step = xs[1] - xs[0] if len(xs) > 1 else 1.0
            out.append(Check(f"B_{a:g} peak at {n / 2}", abs(xp - n / 2) <= step / 2 + 1e-12, f"argmax x = {xp:.6g}"))
    return out


def polyspline_checks(xs, columns: dict[str, list[float]], alphas: Sequence[float], nmax: int) -> list[Check]:
    out = []
    for a in alphas:
        s0 = columns[_poly_label(0, a)]
        ref = [spl.bspline_frac(a + 1, x) for x in xs]
        dev = max(abs(u - v) for u, v in zip(s0, ref))
        out.append(Check(f"S_0^({a:g}) = B_{a + 1:g}", dev <= 1e-12, f"max dev = {dev:.3g}"))
        for n in range(nmax + 1):
            ys = columns[_poly_label(n, a)]
            left = max((abs(y) for x, y in zip(xs, ys) if x <= 0), default=0.0)
            out.append(Check(f"S_{n}^({a:g}) vanishes for x <= 0", left == 0.0, f"max = {left:.3g}"))
    return out


# ---------------------------------------------------------------------------
# table building


def _alpha_label(prefix: str, a: float) -> str:
    return f"{prefix}_{serialize.fmt(a)}"


def _poly_label(n: int, a: float) -> str:
    return f"S_{n}_{serialize.fmt(a)}"


def build_table(kind: str, args) -> tuple[list[float], dict[str, list[float]], list[Check]]:
    count = spl.grid_count(args.x0, args.x1, args.step)
    xs = [args.x0 + i * args.step for i in range(count)]
    columns: dict[str, list[float]] = {}

    def sample(fn: Callable[[float], float]) -> list[float]:
        return list(spl.sample_grid(fn, args.x0, args.step, count, args.threads).values)

    if kind == "spline":
        for n in args.n:
            columns[f"B_{n}"] = sample(spl.evaluator("spline", n))
        checks = spline_checks(xs, columns, args.n, args.step)
    elif kind == "fracspline":
        for a in args.alpha:
            columns[_alpha_label("B", a)] = sample(spl.evaluator("fracspline", a))
        checks = fracspline_checks(xs, columns, args.alpha)
    elif kind == "polyspline":
        for a in args.alpha:
            for n in range(args.nmax + 1):
                columns[_poly_label(n, a)] = sample(spl.evaluator("polyspline", a, n))
        checks = polyspline_checks(xs, columns, args.alpha, args.nmax)
    elif kind == "kernel":
        for a in args.alpha:
            columns[_alpha_label("K", a)] = sample(spl.evaluator("kernel", a))
        checks = []
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    return xs, columns, checks


def table_csv(xs, columns: dict[str, list[float]]) -> str:
    if len(columns) == 1:
        (vals,) = columns.values()
        return serialize.grid_to_csv(spl.GridFunction(xs[0], xs[1] - xs[0] if len(xs) > 1 else 1.0, tuple(vals)))
    header = ["x", *columns]
    rows = ([x, *(col[i] for col in columns.values())] for i, x in enumerate(xs))
    return serialize.table_to_csv(header, rows)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        serialize.atomic_write_text(out, text)


def _report_checks(checks: list[Check], stream=None) -> bool:
    stream = stream or sys.stderr
    for c in checks:
        print(f"[{'ok' if c.ok else 'FAIL'}] {c.name}" + (f" ({c.detail})" if c.detail else ""), file=stream)
    return all(c.ok for c in checks)


# ---------------------------------------------------------------------------
# commands


def _validate_grid(args) -> None:
    if not args.x1 > args.x0:
        raise UsageError("--x1 must exceed --x0")


def cmd_eval(args) -> int:
    _validate_grid(args)
    if args.kind == "spline":
        if not args.n:
            raise UsageError("eval spline needs --n")
        if any(n < 1 for n in args.n):
            raise UsageError("--n must be >= 1")
    else:
        if not args.alpha:
            raise UsageError(f"eval {args.kind} needs --alpha")
        lower = 1.0 if args.kind == "fracspline" else 0.0
        if any(not a > lower for a in args.alpha):
            raise UsageError(f"--alpha must exceed {lower:g} for {args.kind}")
    if args.kind != "polyspline" and args.nmax != 0:
        raise UsageError("--nmax only applies to polyspline")
    xs, columns, checks = build_table(args.kind, args)
    _emit(table_csv(xs, columns), args.out)
    ok = _report_checks(checks)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_symbol(args) -> int:
    if not args.omega1 > args.omega0:
        raise UsageError("--omega1 must exceed --omega0")
    count = spl.grid_count(args.omega0, args.omega1, args.step)
    grid = spl.sample_grid(lambda w: complex(spec.fourier_symbol_frac(args.alpha, w)), args.omega0, args.step, count, 1)
    _emit(serialize.grid_to_csv(grid, x_name="omega"), args.out)
    return EXIT_OK


def cmd_delta(args) -> int:
    if args.shifted:
        base = dist.delta_coeffs(args.alpha, 0.0, args.order)
        doc = {"expansion": base.to_dict(), "shifted": dist.shifted_coeffs(base, args.x).to_dict()}
    else:
        base = dist.delta_coeffs(args.alpha, args.x, args.order)
        doc = {"expansion": base.to_dict()}
    if float(args.alpha).is_integer():
        xr = Fraction(0) if args.shifted else Fraction(args.x)
        doc["exact_coeffs"] = [str(c) for c in dist.delta_coeffs_exact(int(args.alpha), xr, args.order)]
    _emit(serialize.dumps(doc), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = ver.SuiteConfig(
        max_m=args.max_m if args.max_m is not None else args.max_n,
        max_n=args.max_n,
        alphas=tuple(args.alphas),
        output=args.out,
        suites=(args.suite,),
    )
    result = ver.run_suite(cfg)
    print(ver.residual_table(result.reports))
    s = result.summary
    counts = ", ".join(f"{k}={v}" for k, v in s["counts"].items())
    print(f"total={s['total']} {counts} failed_established={s['failed_established']} "
          f"documented_discrepancies={s['documented_discrepancies']}")
    for f in s["failures"]:
        print(f"FAILED {f['identity_id']} {f['params']} [{f['variant']}]")
    return result.exit_code


FIGURES = {
    "1": ("fig1_bsplines.csv", dict(kind="spline", n=[1, 2, 3, 4, 5], x0=-0.5, x1=5.5)),
    "2": ("fig2_fractional_bsplines.csv", dict(kind="fracspline", alpha=[1 + m * 0.25 for m in range(1, 13)], x0=-1.0, x1=8.0)),
    "3": ("fig3_spline_polynomials.csv", dict(kind="polyspline", alpha=[0.25, 1.5, math.sqrt(5)], nmax=3, x0=-0.5, x1=5.0)),
}


def cmd_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    ok = True
    for key in args.which:
        name, spec_ = FIGURES[key]
        ns = argparse.Namespace(**{"n": None, "alpha": None, "nmax": 0, **spec_, "step": args.step, "threads": args.threads})
        xs, columns, checks = build_table(ns.kind, ns)
        path = outdir / name
        serialize.atomic_write_text(path, table_csv(xs, columns))
        print(f"figure {key}: {path} ({len(xs)} rows, {len(columns)} columns)")
        ok &= _report_checks(checks, sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _figure_keys(text: str) -> list[str]:
    keys = [k.strip() for k in text.split(",")] if text != "all" else sorted(FIGURES)
    bad = [k for k in keys if k not in FIGURES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown figure(s) {bad}; choose from {sorted(FIGURES)}")
    return keys


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value file; explicit flags take precedence")
    common.add_argument("--threads", type=_pos_int, default=None, help="worker threads (default: FRACSPLINE_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="fracspline", description="Fractional B-splines, their symbols and identity checks.")
    subs = parser.add_subparsers(dest="command", required=True)
    table = {}

    p = subs.add_parser("eval", parents=[common], help="sample spline families on a grid (CSV)")
    p.add_argument("kind", choices=["spline", "fracspline", "polyspline", "kernel"])
    p.add_argument("--n", type=parse_int_list, help="integer orders, e.g. 3 or 1:5")
    p.add_argument("--alpha", type=parse_real_list, help="real orders, e.g. 2.5, 1.25:4:0.25, 0.25,1.5,sqrt5")
    p.add_argument("--nmax", type=_nonneg_int, default=0, help="polyspline: degrees 0..nmax")
    p.add_argument("--x0", type=parse_real, required=True)
    p.add_argument("--x1", type=parse_real, required=True)
    p.add_argument("--step", type=_positive, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_eval)
    table["eval"] = p

    p = subs.add_parser("symbol", parents=[common], help="principal-branch Fourier symbol on a grid (CSV omega,re,im)")
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--omega0", type=parse_real, required=True)
    p.add_argument("--omega1", type=parse_real, required=True)
    p.add_argument("--step", type=_positive, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_symbol)
    table["symbol"] = p

    p = subs.add_parser("delta", parents=[common], help="delta-derivative expansion coefficients (JSON)")
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--x", type=parse_real, default=0.0)
    p.add_argument("--order", type=_nonneg_int, default=16)
    p.add_argument("--shifted", action="store_true", help="also re-expand around t = x")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_delta)
    table["delta"] = p

    p = subs.add_parser("verify", parents=[common], help="run the identity verification suite")
    p.add_argument("--suite", choices=["all", "combinatorics", "spectral", "distributional"], default="all")
    p.add_argument("--max-n", type=_pos_int, default=15)
    p.add_argument("--max-m", type=_pos_int, default=None, help="defaults to --max-n")
    p.add_argument("--alphas", type=parse_real_list, default=[1.5, 2.5, math.pi])
    p.add_argument("--out", metavar="PATH", help="JSON report")
    p.set_defaults(func=cmd_verify)
    table["verify"] = p

    p = subs.add_parser("figures", parents=[common], help="write the data behind the three figures, with sanity checks")
    p.add_argument("--outdir", default=".")
    p.add_argument("--which", type=_figure_keys, default=sorted(FIGURES), help="1,2,3 or all")
    p.add_argument("--step", type=_positive, default=0.01)
    p.set_defaults(func=cmd_figures)
    table["figures"] = p
    return parser, table


def _config_path(argv: Sequence[str]) -> str | None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        path = _config_path(argv)
        if path and command in subparsers:
            _apply_config(subparsers[command], read_config(path))
    except UsageError as exc:
        print(f"fracspline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fracspline: I/O error reading config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        subparsers[args.command].print_usage(sys.stderr)
        print(f"fracspline {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fracspline: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
