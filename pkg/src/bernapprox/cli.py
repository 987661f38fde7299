"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 a verification or bound check failed,
3 input/output error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import verify
from .discrepancy import brute_discrepancy, et_bound, read_points
from .hermitian import GapError, read_form_input, verify_bounds
from .polycore import DegreeCapError, bernoulli_periodic
from .trigpoly import build

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_IO = 0, 1, 2, 3

_KINDS = {"minorant": "minorant", "majorant": "majorant", "bestl1": "best-L1"}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = verify.DEFAULT_TOL
    grid: int = verify.DEFAULT_GRID
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not 1e-14 <= self.tolerance <= 1e-3:
            raise UsageError(f"tolerance {self.tolerance!r} outside [1e-14, 1e-3]")
        if self.grid < 64:
            raise UsageError(f"grid {self.grid} must be >= 64")
        if self.fmt not in ("json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_tol() -> float:
    env = os.environ.get("EXTREMAL_TOL")
    if env is None:
        return verify.DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise UsageError(f"EXTREMAL_TOL is not a number: {env!r}") from None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-9 or $EXTREMAL_TOL)")

    p = _Parser(prog="bernapprox", description="Extremal trigonometric approximations of Bernoulli functions.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    c = sub.add_parser("coeffs", parents=[common], help="Fourier coefficients c_0..c_N")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--kind", choices=sorted(_KINDS), required=True)
    c.add_argument("--out", default=None)

    e = sub.add_parser("eval", parents=[common], help="evaluate an approximant against B_{n+1}")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--kind", choices=sorted(_KINDS), required=True)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", type=int, dest="eval_grid")
    g.add_argument("--points")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=sorted(verify.SUITES) + ["all"], required=True)
    v.add_argument("--grid", type=int, default=verify.DEFAULT_GRID)

    d = sub.add_parser("discrepancy", parents=[common], help="discrepancy bound and brute-force value")
    d.add_argument("--points", required=True)
    d.add_argument("--order", type=int, required=True)
    d.add_argument("--degree", type=int, required=True)
    d.add_argument("--brute-grid", type=int, default=20000)

    h = sub.add_parser("hilbert", parents=[common], help="Hermitian form against its bounds")
    h.add_argument("--m", type=int, required=True)
    h.add_argument("--kernel", choices=("p", "q"), required=True)
    h.add_argument("--input", required=True)
    return p


def _num(x: float) -> str:
    return repr(float(x))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_cell(v) for v in r) + "\n")
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _num(v)
    s = str(v)
    return '"' + s.replace('"', '""') + '"' if ("," in s or '"' in s) else s


def _json(obj) -> str:
    return json.dumps(obj, allow_nan=False) + "\n"


def _cmd_coeffs(a, cfg: RunConfig) -> tuple[int, str]:
    T = build(a.n, a.N, _KINDS[a.kind])
    if cfg.fmt == "json":
        text = _json(T.to_dict())
    else:
        text = _csv(["k", "re", "im"], [(r["k"], r["re"], r["im"]) for r in T.to_dict()["coeffs"]])
    if a.out:
        try:
            with open(a.out, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {a.out}: {exc.strerror}") from None
        return EXIT_OK, ""
    return EXIT_OK, text


def _read_eval_points(path) -> np.ndarray:
    vals = []
    try:
        lines = open(path).read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    for i, line in enumerate(lines, 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            vals.append(float(s))
        except ValueError:
            raise InputError(f"{path}:{i}: not a number: {s!r}") from None
    return np.array(vals, dtype=float)


def _cmd_eval(a, cfg: RunConfig) -> tuple[int, str]:
    T = build(a.n, a.N, _KINDS[a.kind])
    if a.points is not None:
        x = _read_eval_points(a.points)
    else:
        if a.eval_grid < 1:
            raise UsageError("--grid must be positive")
        x = np.arange(a.eval_grid) / a.eval_grid
    approx = np.atleast_1d(T(x))
    b = np.atleast_1d(bernoulli_periodic(a.n + 1, x))
    rows = [(float(xi), float(ti), float(bi), float(ti - bi)) for xi, ti, bi in zip(x, approx, b)]
    if cfg.fmt == "json":
        return EXIT_OK, _json({"rows": [dict(zip(("x", "approx", "bernoulli", "diff"), r)) for r in rows]})
    return EXIT_OK, _csv(["x", "approx", "bernoulli", "diff"], rows)


def _cmd_verify(a, cfg: RunConfig) -> tuple[int, str]:
    names = list(verify.SUITES) if a.suite == "all" else [a.suite]
    results = [verify.run_suite(name, cfg.seed, cfg.tolerance, cfg.grid) for name in names]
    ok = all(r.passed for r in results)
    if cfg.fmt == "json":
        text = _json({"seed": cfg.seed, "pass": ok, "suites": [r.to_dict() for r in results]})
    else:
        rows = [(r.suite, c.name, c.value, c.limit, c.passed) for r in results for c in r.checks]
        text = _csv(["suite", "name", "value", "limit", "pass"], rows)
    return (EXIT_OK if ok else EXIT_FAIL), text


def _cmd_discrepancy(a, cfg: RunConfig) -> tuple[int, str]:
    try:
        ps = read_points(a.points)
    except OSError as exc:
        raise InputError(f"cannot read {a.points}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if a.order < 0 or a.degree < 0:
        raise UsageError("--order and --degree must be nonnegative")
    if a.brute_grid < 10:
        raise UsageError("--brute-grid must be >= 10")
    bound = et_bound(ps, a.order, a.degree)
    brute = brute_discrepancy(ps, a.order, a.brute_grid)
    rec = {"bound": bound, "brute": brute}
    if cfg.fmt == "json":
        return EXIT_OK, _json(rec)
    return EXIT_OK, _csv(["bound", "brute"], [(bound, brute)])


def _cmd_hilbert(a, cfg: RunConfig) -> tuple[int, str]:
    if a.m < 1:
        raise UsageError("--m must be a positive integer")
    try:
        fi = read_form_input(a.input, a.m, a.kernel)
    except OSError as exc:
        raise InputError(f"cannot read {a.input}: {exc.strerror}") from None
    except GapError as exc:
        raise InputError(f"{a.input}: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = verify_bounds(fi)
    rec = rep.to_dict()
    if cfg.fmt == "json":
        text = _json(rec)
    else:
        text = _csv(list(rec), [tuple(rec.values())])
    return (EXIT_OK if rep.passed else EXIT_FAIL), text


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "discrepancy": _cmd_discrepancy,
    "hilbert": _cmd_hilbert,
}


def run(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = _build_parser().parse_args(argv)
        tol = args.tol if args.tol is not None else _default_tol()
        grid = getattr(args, "grid", None)
        cfg = RunConfig(tolerance=tol, grid=grid if grid is not None else verify.DEFAULT_GRID, fmt=args.fmt, seed=args.seed)
        code, text = _COMMANDS[args.cmd](args, cfg)
    except UsageError as exc:
        print(f"bernapprox: error: {exc}", file=stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"bernapprox: error: {exc}", file=stderr)
        return EXIT_IO
    except (DegreeCapError, ValueError) as exc:
        print(f"bernapprox: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    return code


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
