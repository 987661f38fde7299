"""Self-checks of every sharp constant, grouped into suites.

Each suite returns a :class:`SuiteResult` holding one :class:`Check` per
verified quantity. Randomized suites draw from ``numpy.random.default_rng``
seeded by (seed, suite index), so a suite's output does not depend on which
other suites ran before it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import oracles
from .critpoints import bernoulli_even_zero_exact, in_lehmer_bracket, shifts
from .discrepancy import PointSet, brute_discrepancy, et_bound, zero_weyl_bound
from .hermitian import FormInput, sine_sum_checks, optimal_constants, riemann_zeta, verify_bounds
from .kernels import dhat, eval_d, phihat
from .polycore import bernoulli_periodic, bernoulli_polynomial
from .trigpoly import (
    TrigPoly,
    build_best_l1,
    build_extremal,
    interpolation_nodes,
    l1_error,
    mean_error,
    sharp_l1,
    sharp_mean_gap,
    sup_violation,
)

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "run_all", "DEFAULT_TOL", "DEFAULT_GRID"]

DEFAULT_TOL = 1e-9
DEFAULT_GRID = 4096

SIDED_N = tuple(range(9))
SIDED_DEG = (0, 1, 2, 3, 7, 15)
SMALL_N = tuple(range(5))
SMALL_DEG = (0, 1, 3)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "limit": self.limit, "pass": self.passed}


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, value: float, limit: float, ok: bool | None = None) -> None:
        value = float(value)
        self.checks.append(Check(name, value, float(limit), bool(value <= limit if ok is None else ok)))

    def to_dict(self) -> dict:
        return {"suite": self.suite, "pass": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def suite_extremal(tol: float = DEFAULT_TOL, grid: int = DEFAULT_GRID, **_) -> SuiteResult:
    """One-sidedness of the extremal pair and their sharp mean gaps."""
    res = SuiteResult("extremal")
    for n in SIDED_N:
        for N in SIDED_DEG:
            for side in ("minorant", "majorant"):
                v = sup_violation(build_extremal(n, N, side), n, side, grid)
                res.add(f"sided n={n} N={N} {side}", max(v, 0.0), tol)
    for n in SMALL_N:
        Bp = bernoulli_polynomial(n + 1)
        for N in SMALL_DEG:
            for side in ("minorant", "majorant"):
                T = build_extremal(n, N, side)
                want = sharp_mean_gap(n, N, side)
                res.add(f"gap n={n} N={N} {side}", _rel(mean_error(T, n), want), 1e-12)
                nodes = (_node_shift(n, side) + np.arange(N + 1)) / (N + 1)
                quad = oracles.adaptive_integral(
                    lambda x: float(_bpoly(Bp, x) - T(x)), 0.0, 1.0, breakpoints=list(nodes), tol=1e-13
                )
                res.add(f"gap quadrature n={n} N={N} {side}", abs(quad - want), 1e-8)
    return res


def _node_shift(n: int, side: str) -> float:
    sh = shifts(n)
    return sh.beta if side == "minorant" else sh.alpha


def _bpoly(Bp, x: float) -> float:
    acc = 0.0
    for c in reversed(Bp.coeffs):
        acc = acc * x + float(c)
    return acc


def suite_interp(tol: float = DEFAULT_TOL, **_) -> SuiteResult:
    """The minorant touches B_{n+1} at (beta_n + m)/(N+1); R meets it at its nodes."""
    res = SuiteResult("interp")
    for n in SIDED_N:
        for N in SIDED_DEG:
            x = (shifts(n).beta + np.arange(N + 1)) / (N + 1)
            P = build_extremal(n, N, "minorant")
            d = _touch_gap(n, P, x)
            res.add(f"minorant nodes n={n} N={N}", d, tol)
            xr = interpolation_nodes(n, N)
            R = build_best_l1(n, N)
            res.add(f"best-L1 nodes n={n} N={N}", _touch_gap(n, R, xr), tol)
    return res


def _touch_gap(n: int, T: TrigPoly, x: np.ndarray) -> float:
    # for n = 0 the node x = 0 sits on the jump; the minorant touches the lower value there
    b = bernoulli_periodic(n + 1, x)
    return float(np.max(np.abs(T(x) - b)))


def suite_l1(seed: int = 0, **_) -> SuiteResult:
    """Sharp L1 error of R and a random perturbation probe of its optimality."""
    res = SuiteResult("l1")
    rng = np.random.default_rng([seed, 2])
    for n in SMALL_N:
        for N in SMALL_DEG:
            R = build_best_l1(n, N)
            base = l1_error(R, n)
            want = sharp_l1(n, N)
            res.add(f"sharp n={n} N={N}", _rel(base, want), 1e-6)
            if n == 0:
                res.add(f"vaaler n=0 N={N}", _rel(base, 1.0 / (4 * N + 4)), 1e-12)
            incs = perturbation_probe(n, N, rng, 20)
            low = min(incs)
            res.add(f"perturb n={n} N={N} min increase", -low, 0.0, ok=low > 0)
    return res


def perturbation_probe(n: int, N: int, rng, count: int) -> list:
    """L1 increase after ``count`` random single-coefficient perturbations of R.

    The size is 1e-3 max|c_k|, or 1e-3 times the sharp error when all
    coefficients vanish (even n with N = 0, where R is identically 0).
    """
    R = build_best_l1(n, N)
    base = l1_error(R, n)
    cmax = float(np.max(np.abs(R.coeffs)))
    eps = 1e-3 * (cmax if cmax > 0 else sharp_l1(n, N))
    out = []
    for _ in range(count):
        k = int(rng.integers(0, N + 1))
        c = np.array(R.coeffs)
        if k == 0:
            c[0] += eps * (1.0 if rng.random() < 0.5 else -1.0)
        else:
            ph = 2 * math.pi * rng.random()
            c[k] += eps * complex(math.cos(ph), math.sin(ph))
        out.append(l1_error(TrigPoly(c), n) - base)
    return out


def suite_poisson(seed: int = 0, **_) -> SuiteResult:
    """Lattice sums of d_n against (2/(n+1))(B_{n+1} - P_minorant)."""
    res = SuiteResult("poisson")
    rng = np.random.default_rng([seed, 3])
    l = np.arange(-10000, 10001, dtype=float)
    for n in SMALL_N:
        for N in (1, 3):
            beta = shifts(n).beta
            P = build_extremal(n, N, "minorant")
            xs = rng.random(100)
            lhs = np.array([math.fsum(eval_d(n, x + l, N + 1, beta)) for x in xs])
            rhs = 2.0 / (n + 1) * (bernoulli_periodic(n + 1, xs) - P(xs))
            res.add(f"lattice n={n} N={N}", float(np.max(np.abs(lhs - rhs))), 1e-5)
    return res


def suite_lehmer(**_) -> SuiteResult:
    """z_{2n} lies strictly inside (1/4 - 1/(pi 2^{2n+1}), 1/4)."""
    res = SuiteResult("lehmer")
    for n in range(1, 21):
        z = bernoulli_even_zero_exact(n)
        ok = in_lehmer_bracket(n, z)
        res.add(f"bracket n={n}", 0.0 if ok else 1.0, 0.0, ok=ok)
    return res


def suite_zeta(**_) -> SuiteResult:
    """B_{2k}(0) against zeta(2k) by direct series, and the exact half-point relation."""
    res = SuiteResult("zeta")
    for k in range(1, 9):
        B = bernoulli_polynomial(2 * k)
        b0 = B(0)
        z = oracles.zeta_series(2 * k)
        pred = (-1) ** (k - 1) * math.factorial(2 * k) * z / (2 ** (2 * k - 1) * math.pi ** (2 * k))
        res.add(f"B_{2 * k}(0) vs zeta({2 * k})", _rel(float(b0), pred), 1e-12)
        exact = B(Fraction(1, 2)) == -(1 - Fraction(1, 2 ** (2 * k - 1))) * b0
        res.add(f"B_{2 * k}(1/2) exact", 0.0 if exact else 1.0, 0.0, ok=exact)
    return res


def suite_fourier(**_) -> SuiteResult:
    """Closed-form transforms against panel quadrature of the time-domain functions."""
    res = SuiteResult("fourier")
    delta = 4.0
    for n in SMALL_N:
        sh = shifts(n)
        for label, a in (("alpha", sh.alpha), ("beta", sh.beta)):
            for t in (0.0, 0.3 * delta, 0.9 * delta, 1.5 * delta):
                d = abs(dhat(n, t, delta, a) - oracles.fourier_quadrature_d(n, t, delta, a))
                res.add(f"dhat n={n} {label} t={t:g}", d, 1e-6)
        for t in (0.0, 0.3 * delta, 0.45 * delta, 0.9 * delta, 1.5 * delta):
            d = abs(phihat(n, t, delta) - oracles.fourier_quadrature_phi(n, t, delta))
            res.add(f"phihat n={n} t={t:g}", d, 1e-6)
    return res


def suite_et(seed: int = 0, brute_grid: int = 20000, **_) -> SuiteResult:
    """The discrepancy bound dominates a brute-force sup on random sets."""
    res = SuiteResult("et")
    rng = np.random.default_rng([seed, 8])
    worst = {}
    for _ in range(100):
        ps = PointSet(rng.random(20))
        for n in (0, 1, 2):
            b = brute_discrepancy(ps, n, brute_grid)
            for N in (4, 16):
                s = et_bound(ps, n, N) - b
                worst[(n, N)] = min(worst.get((n, N), math.inf), s)
    for (n, N), s in sorted(worst.items()):
        res.add(f"dominance n={n} N={N}", -s, 1e-9)
    for n in (0, 1, 2):
        for M, N in ((20, 4), (20, 16), (7, 3)):
            ps = PointSet(np.arange(M) / M)
            res.add(f"equispaced n={n} M={M} N={N}", _rel(et_bound(ps, n, N), zero_weyl_bound(M, n, N)), 1e-12)
    return res


def random_well_spaced(rng, count: int, gap: float):
    """Lattice nodes k/count pushed right by less than 1/count - gap, and weights in the unit disc."""
    step = 1.0 / count
    if step < gap - 1e-15:
        raise ValueError("too many nodes for the requested gap")
    lam = (np.arange(count) + rng.random(count) * (1.0 - gap / step)) * step
    r = np.sqrt(rng.random(count))
    a = r * np.exp(2j * np.pi * rng.random(count))
    return lam, a


def suite_hilbert(seed: int = 0, **_) -> SuiteResult:
    """Periodic Hermitian-form bounds and the sine-sum bounds on random well-spaced nodes."""
    res = SuiteResult("hilbert")
    rng = np.random.default_rng([seed, 9])
    worst = {}
    for _ in range(200):
        lam, a = random_well_spaced(rng, 32, 1.0 / 64)
        for m in (1, 2, 3, 4):
            for kern in ("p", "q"):
                rep = verify_bounds(FormInput(lam, a, m, kern))
                key = f"m={m} {kern}"
                worst[key] = min(worst.get(key, math.inf), rep.slack / rep.energy)
        cor = sine_sum_checks(lam, a)
        for key in ("cosecant", "cotangent", "cosecant_sq"):
            worst[key] = min(worst.get(key, math.inf), cor[key] / cor["energy"])
    for key in sorted(worst):
        res.add(f"slack {key}", -worst[key], 1e-9)
    delta = 1.0 / 64
    L1, U1 = optimal_constants(1, delta)
    res.add("m=1 L", _rel(L1, math.pi / delta), 1e-12)
    res.add("m=1 U", _rel(U1, math.pi / delta), 1e-12)
    L2, U2 = optimal_constants(2, delta)
    res.add("m=2 L", _rel(L2, math.pi**2 / (3 * delta**2)), 1e-12)
    res.add("m=2 U", _rel(U2, math.pi**2 / (6 * delta**2)), 1e-12)
    for m in range(2, 9):
        res.add(f"zeta({m}) series", _rel(riemann_zeta(m), oracles.zeta_series(m)), 1e-12)
    return res


SUITES = {
    "extremal": suite_extremal,
    "interp": suite_interp,
    "l1": suite_l1,
    "poisson": suite_poisson,
    "lehmer": suite_lehmer,
    "zeta": suite_zeta,
    "fourier": suite_fourier,
    "et": suite_et,
    "hilbert": suite_hilbert,
}


def run_suite(name: str, seed: int = 0, tol: float = DEFAULT_TOL, grid: int = DEFAULT_GRID) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(seed=seed, tol=tol, grid=grid)


def run_all(seed: int = 0, tol: float = DEFAULT_TOL, grid: int = DEFAULT_GRID) -> list:
    return [run_suite(name, seed, tol, grid) for name in SUITES]
