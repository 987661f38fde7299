"""Extremal trigonometric polynomials for the periodic Bernoulli functions.

For the (n+1)-st Bernoulli function and degree N this builds

* the minorant and majorant with the smallest mean gap (shift beta_n / alpha_n,
  scale delta = N + 1), and
* the best L1 approximant (shift theta_n, scale delta = 2N + 2),

from the Fourier transforms of the real-line error functions in
:mod:`bernapprox.kernels`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Literal

import numpy as np
from scipy import integrate, optimize

from .critpoints import shifts
from .kernels import dhat_band, phihat_band
from .polycore import (
    DEGREE_CAP,
    DegreeCapError,
    bernoulli_periodic,
    bernoulli_polynomial,
    euler_polynomial,
    eval_poly,
)

__all__ = [
    "TrigPoly",
    "ApproxSpec",
    "ToleranceError",
    "build_extremal",
    "build_best_l1",
    "build",
    "eval_trig",
    "mean_error",
    "l1_error",
    "sup_violation",
    "check_grid",
    "monomial_approx",
    "monomial_weights",
    "sharp_mean_gap",
    "sharp_l1",
    "interpolation_nodes",
    "KINDS",
]

Kind = Literal["minorant", "majorant", "best-L1"]
KINDS = ("minorant", "majorant", "best-L1")


class ToleranceError(RuntimeError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, msg, estimate):
        super().__init__(msg)
        self.estimate = estimate


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Real trigonometric polynomial sum_{|k|<=N} c_k e(kx), stored as c_0..c_N.

    Negative frequencies are implied by c_{-k} = conj(c_k).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("need at least the constant coefficient")
        c[0] = c[0].real
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def full(self) -> dict:
        """{k: c_k} for k = -N..N."""
        out = {}
        for k, v in enumerate(self.coeffs):
            out[k] = complex(v)
            if k:
                out[-k] = complex(v).conjugate()
        return dict(sorted(out.items()))

    def mass(self) -> float:
        return float(abs(self.coeffs[0]) + 2 * np.sum(np.abs(self.coeffs[1:])))

    def __call__(self, x):
        return eval_trig(self, x)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        a, b = self.coeffs, other.coeffs
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] += b
        return TrigPoly(out)

    def scale(self, c: float) -> "TrigPoly":
        return TrigPoly(self.coeffs * c)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [
                {"k": k, "re": float(v.real), "im": float(v.imag)} for k, v in enumerate(self.coeffs)
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrigPoly":
        N = int(d["degree"])
        c = np.zeros(N + 1, dtype=complex)
        seen = set()
        for rec in d["coeffs"]:
            k = int(rec["k"])
            if not 0 <= k <= N:
                raise ValueError(f"coefficient index {k} outside 0..{N}")
            if k in seen:
                raise ValueError(f"duplicate coefficient index {k}")
            seen.add(k)
            c[k] = complex(float(rec["re"]), float(rec["im"]))
        return cls(c)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> "TrigPoly":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class ApproxSpec:
    n: int
    N: int
    kind: Kind

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 0 or self.N < 0:
            raise ValueError("n and N must be nonnegative")
        if self.n > DEGREE_CAP - 1:
            raise DegreeCapError(f"degree cap exceeded: {self.n + 1} > {DEGREE_CAP}")


def _shift_for(n: int, side: str) -> float:
    sh = shifts(n)
    if side == "minorant":
        return sh.beta
    if side == "majorant":
        return sh.alpha
    raise ValueError(f"side must be 'minorant' or 'majorant', got {side!r}")


@lru_cache(maxsize=512)
def build_extremal(n: int, N: int, side: str) -> TrigPoly:
    """Extremal minorant (side='minorant') or majorant of B_{n+1}, degree <= N."""
    ApproxSpec(n, N, side)
    alpha = _shift_for(n, side)
    delta = N + 1
    c = np.empty(N + 1, dtype=complex)
    c[0] = float(bernoulli_polynomial(n + 1)(Fraction(alpha))) / delta ** (n + 1)
    for k in range(1, N + 1):
        # dhat(k) + 2 n!/(2 pi i k)^{n+1} is the smooth band part scaled by delta^{-n-1}
        c[k] = -0.5 * (n + 1) * dhat_band(n, k / delta, alpha) / delta ** (n + 1)
    return TrigPoly(c)


@lru_cache(maxsize=512)
def build_best_l1(n: int, N: int) -> TrigPoly:
    """Best L1 approximation of B_{n+1} by trigonometric polynomials of degree <= N."""
    ApproxSpec(n, N, "best-L1")
    delta = 2 * N + 2
    theta = shifts(n).theta
    c = np.empty(N + 1, dtype=complex)
    b = float(bernoulli_polynomial(n + 1)(Fraction(theta)))
    # -(n+1) phihat(0; delta)
    c[0] = (b + (0.5 if n == 0 else 0.0)) / delta ** (n + 1)
    for k in range(1, N + 1):
        c[k] = -(n + 1) * phihat_band(n, k / delta) / delta ** (n + 1)
    return TrigPoly(c)


def build(n: int, N: int, kind: str) -> TrigPoly:
    ApproxSpec(n, N, kind)
    if kind == "best-L1":
        return build_best_l1(n, N)
    return build_extremal(n, N, kind)


def eval_trig(T: TrigPoly, x):
    """c_0 + 2 Re sum_{k>=1} c_k e(kx), summed from high to low frequency."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    xr = xa - np.floor(xa)
    acc = np.zeros_like(xr)
    for k in range(T.degree, 0, -1):
        ck = T.coeffs[k]
        ph = 2 * np.pi * ((k * xr) % 1.0)
        acc += ck.real * np.cos(ph) - ck.imag * np.sin(ph)
    out = T.coeffs[0].real + 2.0 * acc
    return float(out[0]) if np.ndim(x) == 0 else out


def mean_error(T: TrigPoly, n: int) -> float:
    """int_0^1 (B_{n+1} - T) = -c_0, since B_{n+1} has mean zero."""
    return -float(T.coeffs[0].real)


def interpolation_nodes(n: int, N: int) -> np.ndarray:
    """Points in [0, 1) where the best L1 approximant of degree N meets B_{n+1}.

    These are (theta_n + k)/(2N + 2); for odd n they sit half a step off the
    lattice k/(2N + 2). For n = 0 the jump at 0 is excluded.
    """
    theta = shifts(n).theta
    k = np.arange(0, 2 * N + 2)
    x = (theta + k) / (2 * N + 2)
    if n == 0:
        x = x[1:]
    return x


def _sign_change_nodes(n: int, N: int) -> np.ndarray:
    inner = interpolation_nodes(n, N)
    return np.unique(np.concatenate([[0.0], inner[(inner > 0) & (inner < 1)], [1.0]]))


def l1_error(T: TrigPoly, n: int, tol: float = 1e-12) -> float:
    """int_0^1 |T - B_{n+1}| split at the interpolation nodes and at any extra sign change.

    Extra roots are located by a 64-point scan per panel followed by brentq,
    so perturbed polynomials are handled as accurately as the extremal one.
    """
    if tol < 1e-13:
        raise ValueError("tol must be >= 1e-13")
    N = max(T.degree, 0)

    Bp = bernoulli_polynomial(n + 1)

    # the plain polynomial on [0, 1], so B_1 has no jump at the right endpoint
    def err(x):
        return eval_trig(T, x) - eval_poly(Bp, x)

    nodes = _sign_change_nodes(n, N)
    pts = [0.0]
    for a, b in zip(nodes[:-1], nodes[1:]):
        # endpoints included: a perturbed root may sit just inside a panel edge
        xs = np.linspace(a, b, 65)
        ys = err(xs)
        for i in range(len(xs) - 1):
            if ys[i] == 0.0:
                pts.append(float(xs[i]))
            elif ys[i] * ys[i + 1] < 0:
                pts.append(optimize.brentq(lambda v: float(err(v)), xs[i], xs[i + 1], xtol=1e-15))
        pts.append(float(b))
    pts = sorted(set(pts))
    total = 0.0
    est = 0.0
    per = tol / max(1, len(pts) - 1)
    for a, b in zip(pts[:-1], pts[1:]):
        if b - a < 1e-12:
            # rounding can report a double root a few ulps from a node
            total += (b - a) * abs(float(err(0.5 * (a + b))))
            continue
        val, e = integrate.quad(lambda v: abs(float(err(v))), a, b, epsabs=per, epsrel=1e-14, limit=200)
        total += val
        est += e
    if est > tol:
        raise ToleranceError(f"l1_error estimate {est:.3e} exceeds tol {tol:.1e}", est)
    return total


def check_grid(N: int, n: int, side: str, gridsize: int) -> np.ndarray:
    """Uniform grid plus the touching nodes and 16 jittered points around each."""
    alpha = _shift_for(n, side)
    delta = N + 1
    nodes = (alpha + np.arange(0, N + 1)) / delta % 1.0
    jitter = np.linspace(-1.0, 1.0, 16) * (0.25 / (delta * gridsize))
    pts = np.concatenate(
        [np.arange(gridsize) / gridsize, nodes, (nodes[:, None] + jitter[None, :]).ravel()]
    )
    return np.unique(pts % 1.0)


def sup_violation(T: TrigPoly, n: int, side: str, gridsize: int = 4096) -> float:
    """Largest wrong-side deviation of T from B_{n+1} on the check grid.

    For n = 0 the jump of B_1 at the integers is tested against both
    one-sided limits (-1/2 from the right, +1/2 from the left).
    """
    if gridsize < 2 * T.degree + 2:
        raise ValueError("gridsize must be >= 2N + 2")
    x = check_grid(T.degree, n, side, gridsize)
    t = eval_trig(T, x)
    b = bernoulli_periodic(n + 1, x)
    if side == "minorant":
        viol = t - b
    elif side == "majorant":
        viol = b - t
    else:
        raise ValueError("side must be 'minorant' or 'majorant'")
    worst = float(np.max(viol))
    if n == 0:
        t0 = eval_trig(T, 0.0)
        worst = max(worst, t0 - 0.5 if side == "minorant" else 0.5 - t0)
        worst = max(worst, t0 + 0.5 if side == "minorant" else -0.5 - t0)
    return worst


def monomial_approx(n: int, N: int, kind: str) -> TrigPoly:
    """Approximant of the 1-periodic x^n on [0, 1) from x^n = (1/(n+1)) sum_k C(n+1, k) B_k.

    Each B_k (k >= 1) is replaced by the ``kind`` approximant of degree N; all
    weights are positive, so one-sidedness carries over.
    """
    ApproxSpec(n, N, kind)
    total = TrigPoly(np.array([1.0 / (n + 1)]))
    for k in range(1, n + 1):
        total = total + build(k - 1, N, kind).scale(comb(n + 1, k) / (n + 1))
    return total


def monomial_weights(n: int) -> list:
    return [Fraction(comb(n + 1, k), n + 1) for k in range(n + 1)]


def sharp_mean_gap(n: int, N: int, side: str) -> float:
    """The optimal mean gap B_{n+1}(shift) / (N+1)^{n+1} (signed as int(B - T))."""
    alpha = _shift_for(n, side)
    return -float(bernoulli_polynomial(n + 1)(Fraction(alpha))) / (N + 1) ** (n + 1)


def sharp_l1(n: int, N: int) -> float:
    theta = shifts(n).theta
    return abs(float(euler_polynomial(n + 1)(Fraction(theta)))) / (2 * N + 2) ** (n + 1)

