"""Hilbert-type bounds for Hermitian forms with periodized power kernels.

For well-spaced nodes lambda_r on R/Z (circular gap >= delta) and complex
weights a_r the form

    F = sum_{r != s} i^{-m} a_r conj(a_s) K(lambda_r - lambda_s)

with K = p_m (sum over k of (x+k)^-m) or K = q_m (alternating version) is real
and lies between explicit multiples of sum |a_r|^2. The multiples come from
the optimal constants L_m, U_m of the real-line inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .critpoints import shifts
from .polycore import DEGREE_CAP, DegreeCapError, bernoulli_numbers, bernoulli_polynomial

__all__ = [
    "GapError",
    "PoleError",
    "FormInput",
    "BoundReport",
    "circular_gap",
    "hurwitz_zeta",
    "riemann_zeta",
    "kernel_p",
    "kernel_q",
    "optimal_constants",
    "form_value",
    "form_value_direct",
    "form_bounds",
    "verify_bounds",
    "sine_sum_checks",
    "read_form_input",
]

_HEAD = 50
_EM_TERMS = 14


class GapError(ValueError):
    """Nodes coincide modulo 1, or the stated gap exceeds the actual one."""


class PoleError(ValueError):
    """Kernel evaluated at an integer."""


def circular_gap(lambdas) -> float:
    """min over r != s of the distance from lambda_r - lambda_s to the nearest integer."""
    x = np.sort(np.asarray(lambdas, dtype=float) % 1.0)
    if x.size < 2:
        return math.inf
    d = np.diff(np.append(x, x[0] + 1.0))
    return float(np.min(d))


@dataclass(frozen=True, eq=False)
class FormInput:
    lambdas: np.ndarray
    weights: np.ndarray
    m: int
    kernel: str = "p"

    def __post_init__(self):
        lam = np.array(self.lambdas, dtype=float).ravel()
        a = np.array(self.weights, dtype=complex).ravel()
        if lam.size != a.size:
            raise ValueError("lambdas and weights must have the same length")
        if lam.size == 0:
            raise ValueError("need at least one node")
        if not np.all(np.isfinite(lam)):
            raise ValueError("nodes must be finite")
        if int(self.m) < 1:
            raise ValueError("m must be a positive integer")
        if self.kernel not in ("p", "q"):
            raise ValueError("kernel must be 'p' or 'q'")
        lam = lam - np.floor(lam)
        lam[lam >= 1.0] = 0.0
        if lam.size > 1 and circular_gap(lam) <= 0.0:
            raise GapError("coincident nodes modulo 1")
        lam.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "weights", a)
        object.__setattr__(self, "m", int(self.m))

    @property
    def delta(self) -> float:
        return min(circular_gap(self.lambdas), 0.5)

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.weights) ** 2))


@lru_cache(maxsize=None)
def _em_coeffs(m: int) -> tuple:
    # B_{2j}/(2j)! * m (m+1) ... (m+2j-2), the Euler-Maclaurin weights for x^{-m}
    B = bernoulli_numbers(2 * _EM_TERMS)
    out = []
    rising = Fraction(1)
    for j in range(1, _EM_TERMS + 1):
        if j == 1:
            rising = Fraction(m)
        else:
            rising *= (m + 2 * j - 3) * (m + 2 * j - 2)
        out.append(float(B[2 * j] * rising / math.factorial(2 * j)))
    return tuple(out)


def hurwitz_zeta(m: int, a):
    """sum_{k>=0} (a+k)^{-m} for integer m >= 2 and a > 0.

    The first 50 terms are summed directly (smallest first); the rest is the
    Euler-Maclaurin expansion at a + 50.
    """
    if int(m) != m or m < 2:
        raise ValueError("hurwitz_zeta needs an integer m >= 2")
    m = int(m)
    if m > DEGREE_CAP:
        raise DegreeCapError(f"degree cap exceeded: {m} > {DEGREE_CAP}")
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("hurwitz_zeta is defined here only for a > 0")
    av = np.atleast_1d(arr)
    k = np.arange(_HEAD - 1, -1, -1, dtype=float)
    head = np.sum((av[:, None] + k[None, :]) ** (-float(m)), axis=1)
    x = av + _HEAD
    inv2 = x**-2.0
    corr = np.zeros_like(x)
    pw = x ** (-float(m) - 1.0)
    for c in _em_coeffs(m):
        corr += c * pw
        pw = pw * inv2
    tail = x ** (1.0 - m) / (m - 1) + 0.5 * x ** (-float(m)) + corr
    out = head + tail
    return float(out[0]) if arr.ndim == 0 else out


def riemann_zeta(m: int) -> float:
    return float(hurwitz_zeta(m, 1.0))


def _frac_checked(x):
    xa = np.asarray(x, dtype=float)
    f = xa - np.floor(xa)
    if np.any(f == 0.0):
        raise PoleError("kernel has a pole at integers")
    return xa, f


def kernel_p(m: int, x):
    """p_m(x) = sum_k (x+k)^{-m}; pi cot(pi x) for m = 1 (symmetric summation)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    xa, f = _frac_checked(x)
    if m == 1:
        out = np.pi / np.tan(np.pi * np.where(f > 0.5, f - 1.0, f))
    else:
        out = hurwitz_zeta(m, f) + (-1) ** m * hurwitz_zeta(m, 1.0 - f)
    return float(out) if np.ndim(out) == 0 else out


def kernel_q(m: int, x):
    """q_m(x) = sum_k (-1)^k (x+k)^{-m}; pi / sin(pi x) for m = 1.

    q_m(x + 1) = -q_m(x), so the value depends on the real x, not only on x mod 1.
    Splitting k into even and odd gives q_m(x) = 2^{-m} (p_m(x/2) - p_m((x+1)/2)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    xa, _f = _frac_checked(x)
    if m == 1:
        # reduce mod 2 so the sine is taken of an argument in [-1, 1)
        r = xa - 2.0 * np.floor((xa + 1.0) / 2.0)
        out = np.pi / np.sin(np.pi * r)
    else:
        out = 2.0**-m * (kernel_p(m, xa / 2.0) - kernel_p(m, (xa + 1.0) / 2.0))
    return float(out) if np.ndim(out) == 0 else out


def optimal_constants(m: int, delta: float) -> tuple[float, float]:
    """(L_m(delta), U_m(delta)) of the real-line inequality; both positive."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > DEGREE_CAP:
        raise DegreeCapError(f"degree cap exceeded: {m} > {DEGREE_CAP}")
    if not 0 < delta <= 0.5:
        raise ValueError("delta must lie in (0, 1/2]")
    sh = shifts(m - 1)
    B = bernoulli_polynomial(m)
    scale = (2 * math.pi) ** m / (math.factorial(m) * delta**m)
    return float(B(Fraction(sh.alpha))) * scale, -float(B(Fraction(sh.beta))) * scale


def _i_pow_neg(m: int) -> complex:
    return (1, -1j, -1, 1j)[m % 4]


def form_value(fi: FormInput) -> complex:
    """sum_{r != s} i^{-m} a_r conj(a_s) K(lambda_r - lambda_s), K in {p_m, q_m}.

    Pairs (r, s) and (s, r) are combined through K(-x) = (-1)^m K(x), which
    makes the Hermitian structure exact: the result is real up to the sign
    convention, and its imaginary part is returned as 0.
    """
    lam, a = fi.lambdas, fi.weights
    n = lam.size
    if n < 2:
        return 0j
    r, s = np.triu_indices(n, 1)
    diff = lam[r] - lam[s]
    K = kernel_p(fi.m, diff) if fi.kernel == "p" else kernel_q(fi.m, diff)
    w = a[r] * np.conj(a[s])
    if fi.m % 2 == 0:
        # i^{-m} (w + conj w) K = (-1)^{m/2} 2 Re(w) K
        terms = 2.0 * w.real * K * (-1) ** (fi.m // 2)
    else:
        # i^{-m} (w - conj w) K = i^{1-m} 2 Im(w) K
        terms = 2.0 * w.imag * K * (-1) ** ((fi.m - 1) // 2)
    return complex(math.fsum(terms), 0.0)


def form_value_direct(fi: FormInput) -> complex:
    """Same form summed over all ordered pairs without using kernel parity."""
    lam, a = fi.lambdas, fi.weights
    n = lam.size
    if n < 2:
        return 0j
    r, s = np.nonzero(~np.eye(n, dtype=bool))
    diff = lam[r] - lam[s]
    K = kernel_p(fi.m, diff) if fi.kernel == "p" else kernel_q(fi.m, diff)
    terms = a[r] * np.conj(a[s]) * K
    return _i_pow_neg(fi.m) * complex(math.fsum(terms.real), math.fsum(terms.imag))


def form_bounds(m: int, kernel: str, delta: float) -> tuple[float, float]:
    """Lower and upper multipliers of sum |a_r|^2 for the periodic form."""
    L, U = optimal_constants(m, delta)
    if m % 2 == 1:
        return -L, U
    sign = _i_pow_neg(m).real
    z = riemann_zeta(m)
    if kernel == "p":
        c = -2.0 * sign * z
    elif kernel == "q":
        c = (2.0 - 2.0 ** (2 - m)) * sign * z
    else:
        raise ValueError("kernel must be 'p' or 'q'")
    return c - L, c + U


@dataclass(frozen=True)
class BoundReport:
    form: complex
    lower: float
    upper: float
    slack_lower: float
    slack_upper: float
    energy: float
    delta: float
    passed: bool

    @property
    def slack(self) -> float:
        return min(self.slack_lower, self.slack_upper)

    def to_dict(self) -> dict:
        return {
            "form": self.form.real,
            "lower": self.lower,
            "upper": self.upper,
            "slack": self.slack,
            "pass": self.passed,
        }


def verify_bounds(fi: FormInput, rel_tol: float = 1e-9) -> BoundReport:
    """Evaluate the form and compare it with the bounds at the node set's own gap."""
    if fi.lambdas.size < 2:
        raise GapError("need at least two nodes to define a gap")
    delta = fi.delta
    lo, hi = form_bounds(fi.m, fi.kernel, delta)
    E = fi.energy
    F = form_value(fi)
    sl, su = F.real - lo * E, hi * E - F.real
    ok = min(sl, su) >= -rel_tol * E
    return BoundReport(F, lo * E, hi * E, sl, su, E, delta, bool(ok))


def sine_sum_checks(lambdas, weights) -> dict:
    """The three sine/tangent sums and their bounds, as slack values (>= 0 means satisfied)."""
    lam = np.asarray(lambdas, dtype=float) % 1.0
    a = np.asarray(weights, dtype=complex)
    n = lam.size
    r, s = np.nonzero(~np.eye(n, dtype=bool))
    d = lam[r] - lam[s]
    w = a[r] * np.conj(a[s])
    E = float(np.sum(np.abs(a) ** 2))
    delta = min(circular_gap(lam), 0.5)
    S_sin = complex(np.sum(w / np.sin(np.pi * d)))
    S_tan = complex(np.sum(w / np.tan(np.pi * d)))
    S_sin2 = complex(np.sum(w / np.sin(np.pi * d) ** 2))
    lo2 = -(1.0 / delta**2 + 2.0) / 6.0 * E
    hi2 = (1.0 / delta**2 - 1.0) / 3.0 * E
    return {
        "cosecant": E / delta - abs(S_sin),
        "cotangent": E / delta - abs(S_tan),
        "cosecant_sq": min(S_sin2.real - lo2, hi2 - S_sin2.real),
        "energy": E,
    }


def read_form_input(path, m: int, kernel: str) -> FormInput:
    """Lines of "lambda re im"; blank lines and '#' comments are skipped."""
    lam, a = [], []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.split("#", 1)[0].split()
        if not s:
            continue
        if len(s) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'lambda re im', got {line.strip()!r}")
        try:
            x, re, im = (float(v) for v in s)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: not a number in {line.strip()!r}") from exc
        lam.append(x)
        a.append(complex(re, im))
    return FormInput(np.array(lam), np.array(a), m, kernel)
