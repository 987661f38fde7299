"""Real-line interpolating functions H_n, G_n, their error functions and transforms.

``H_n(z; a)`` is the entire function of exponential type 2*pi interpolating
sgn(x) x^n at a + Z; ``G_n(z; theta_n)`` is the best L1 approximation of x_+^n
of exponential type pi. The error functions are

    d_n(x; delta, a) = delta^{-n} H_n(delta x; a) - sgn(x) x^n
    phi_n(x; delta)  = delta^{-n} G_n(delta x; theta_n) - x_+^n

Both decay like x^{-2}. Time-domain evaluation avoids the catastrophic
cancellation in the textbook formulas: poles of the lattice sums are removed
by reflection, and for |z| large the non-oscillating factor is summed from its
asymptotic expansion, whose leading n terms cancel identically.

The Fourier transforms inside the band use a closed form in the derivatives
of e^{a w} / (e^w - 1), evaluated with mpmath at a working precision that
covers the pole cancellation at both ends of the band.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .critpoints import shifts
from .polycore import (
    DEGREE_CAP,
    DegreeCapError,
    bernoulli_numbers,
    bernoulli_polynomial,
    euler_polynomial,
)

__all__ = [
    "PoleError",
    "KernelParams",
    "polygamma",
    "eval_H",
    "eval_d",
    "dhat",
    "dhat_band",
    "dhat_series",
    "eval_G",
    "eval_phi",
    "phihat",
    "phihat_band",
    "d_asymptotic_coeffs",
    "phi_asymptotic_coeffs",
]

_INTERNAL_CAP = 200
# |z| beyond which the asymptotic expansions are used
_Z_ASYM_H = 25.0
_Z_ASYM_G = 40.0


class PoleError(ValueError):
    """Argument sits on a pole of the function."""


class KernelParams:
    """Validated (n, delta, alpha) triple."""

    __slots__ = ("n", "delta", "alpha")

    def __init__(self, n: int, delta: float = 1.0, alpha: float = 0.0):
        if n < 0 or n > DEGREE_CAP - 1:
            raise DegreeCapError(f"n out of range: {n}")
        if not delta > 0:
            raise ValueError("delta must be positive")
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        self.n, self.delta, self.alpha = int(n), float(delta), float(alpha)

    def __repr__(self):
        return f"KernelParams(n={self.n}, delta={self.delta!r}, alpha={self.alpha!r})"


# ---------------------------------------------------------------- polygamma

_B2K = [float(b) for b in bernoulli_numbers(24)[2::2]]  # B_2, B_4, ..., B_24


def _digamma_pos(x):
    acc = np.zeros_like(x)
    x = x.copy()
    low = x < 10.0
    while low.any():
        with np.errstate(over="ignore", divide="ignore"):
            acc[low] -= 1.0 / x[low]
        x[low] += 1.0
        low = x < 10.0
    inv2 = 1.0 / (x * x)
    s = np.zeros_like(x)
    for k in range(len(_B2K), 0, -1):
        s = s * inv2 + _B2K[k - 1] / (2 * k)
    return acc + np.log(x) - 0.5 / x - s * inv2


def _trigamma_pos(x):
    acc = np.zeros_like(x)
    x = x.copy()
    low = x < 10.0
    while low.any():
        # 1/x^2 overflows to inf for tiny x, which is the right limit
        with np.errstate(over="ignore", divide="ignore"):
            acc[low] += 1.0 / (x[low] * x[low])
        x[low] += 1.0
        low = x < 10.0
    inv = 1.0 / x
    inv2 = inv * inv
    s = np.zeros_like(x)
    for k in range(len(_B2K), 0, -1):
        s = s * inv2 + _B2K[k - 1]
    return acc + inv + 0.5 * inv2 + s * inv2 * inv


def polygamma(k: int, x):
    """Digamma (k=0) or trigamma (k=1) of real ``x``.

    Upward recurrence to x >= 10 followed by the asymptotic series; negative
    arguments go through the reflection formulas.
    """
    if k not in (0, 1):
        raise ValueError("only k = 0 (digamma) and k = 1 (trigamma) are supported")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any((xa <= 0) & (xa == np.round(xa))):
        raise PoleError("polygamma pole at a nonpositive integer")
    out = np.empty_like(xa)
    pos = xa > 0
    f = _digamma_pos if k == 0 else _trigamma_pos
    if pos.any():
        out[pos] = f(xa[pos])
    neg = ~pos
    if neg.any():
        xn = xa[neg]
        # x - round(x) is exact, so the distance to the pole keeps full precision
        r = xn - np.round(xn)
        if k == 0:
            out[neg] = f(1.0 - xn) - np.pi / np.tan(np.pi * r)
        else:
            out[neg] = (np.pi / np.sin(np.pi * r)) ** 2 - f(1.0 - xn)
    return float(out[0]) if np.ndim(x) == 0 else out


def _beta_fn(w):
    """sum_{k>=0} (-1)^k / (w + k) for w > 0."""
    return 0.5 * (_digamma_pos(0.5 * (w + 1.0)) - _digamma_pos(0.5 * w))


# ---------------------------------------------------------- coefficient caches


@lru_cache(maxsize=None)
def _bern_values(alpha: float, m: int) -> np.ndarray:
    a = Fraction(alpha)
    return np.array([float(bernoulli_polynomial(j, _INTERNAL_CAP)(a)) for j in range(m + 1)])


@lru_cache(maxsize=None)
def _euler_values(alpha: float, m: int) -> tuple:
    a = Fraction(alpha)
    exact = [euler_polynomial(j, _INTERNAL_CAP)(a) for j in range(m + 1)]
    return np.array([float(v) for v in exact]), tuple(v == 0 for v in exact)


def _frac(alpha: float) -> float:
    return alpha - math.floor(alpha)


def _n_asym_terms(n: int, zmin: float, growth: float) -> int:
    # terms behave like j! / (growth * z)^j; stop once the ratio drops below 1e-18
    log_lead = math.lgamma(n + 2) - (n + 1) * math.log(growth)
    for J in range(1, 80):
        j = n + J
        log_term = math.lgamma(j + 1) - j * math.log(growth) - J * math.log(zmin)
        if log_term - log_lead < math.log(1e-18):
            return J
    return 80


def d_asymptotic_coeffs(n: int, alpha: float, terms: int) -> np.ndarray:
    """Coefficients a_p of z^{-p}, p = 0..terms+1, of the non-oscillating factor T.

    For |z| large, H_n(z; a) = sgn(z) z^n + (sin pi(z - a) / pi)^2 T(z).
    """
    bv = _bern_values(alpha, n + terms + 1)
    c = _frac(alpha)
    out = np.zeros(terms + 2)
    for j in range(n + 1, n + terms + 1):
        out[j - n + 1] -= 2.0 * bv[j]
    # B_n(a) (1/(z - c) - 1/z) = B_n(a) sum_{p>=2} c^{p-1} z^{-p}
    if c != 0.0:
        for p in range(2, terms + 2):
            out[p] += 2.0 * bv[n] * c ** (p - 1)
    return out


def phi_asymptotic_coeffs(n: int, alpha: float, terms: int) -> np.ndarray:
    """Coefficients of z^{-p} in the factor multiplying sin(pi(z - a))/pi in G_n for |z| large."""
    ev, _ = _euler_values(alpha, n + terms + 1)
    out = np.zeros(terms + 2)
    for j in range(n + 1, n + terms + 1):
        out[j - n + 1] = 0.5 * ev[j]
    return out


def _horner_inv(coeffs, w):
    s = np.zeros_like(w)
    for a in coeffs[::-1]:
        s = s * w + a
    return s


def _sin_pi(u):
    # reduce mod 2 before scaling by pi
    return np.sin(np.pi * (u - 2.0 * np.round(0.5 * u)))


# ----------------------------------------------------------------- H and d


def _H_parts(n: int, z: np.ndarray, alpha: float):
    """Return (lead, rem) with H_n(z; alpha) = lead * z^n + rem and lead in {-1, +1}."""
    c = _frac(alpha)
    eps = -1.0 if (alpha - c) % 2 == 1 else 1.0
    u = z - alpha
    s_pi = _sin_pi(u) / np.pi
    lead = np.where(u > -0.5, 1.0, -1.0)
    rem = np.empty_like(z)

    far = np.abs(z) >= _Z_ASYM_H
    if far.any():
        zf = z[far]
        J = _n_asym_terms(n, float(np.min(np.abs(zf))), 2 * math.pi)
        coeffs = d_asymptotic_coeffs(n, alpha, J)
        lead[far] = np.sign(zf)
        rem[far] = s_pi[far] ** 2 * _horner_inv(coeffs, 1.0 / zf)

    near = ~far
    if near.any():
        zn, un, sn = z[near], u[near], s_pi[near]
        bv = _bern_values(alpha, n)
        poly = np.zeros_like(zn)
        for j in range(n):  # sum_{j<n} B_j(a) z^{n-1-j}
            poly = poly * zn + bv[j]
        a_br = un > -0.5
        zn_pow = zn**n
        lattice = np.empty_like(zn)
        lattice[a_br] = -zn_pow[a_br] * _trigamma_pos(1.0 + un[a_br])
        lattice[~a_br] = zn_pow[~a_br] * _trigamma_pos(-un[~a_br])
        pole = 2.0 * bv[n] * sn * eps * np.sinc(zn - c)
        rem[near] = sn**2 * 2.0 * (lattice + poly) + pole
    return lead, rem


def eval_H(n: int, x, alpha: float):
    """H_n(x; alpha) for real ``x``."""
    KernelParams(n, 1.0, alpha)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    lead, rem = _H_parts(n, xa, alpha)
    out = lead * xa**n + rem
    return float(out[0]) if np.ndim(x) == 0 else out


def eval_d(n: int, x, delta: float, alpha: float):
    """d_n(x; delta, alpha) = delta^{-n} H_n(delta x; alpha) - sgn(x) x^n, with sgn(0) = 0."""
    KernelParams(n, delta, alpha)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    lead, rem = _H_parts(n, delta * xa, alpha)
    out = (lead - np.sign(xa)) * xa**n + rem / delta**n
    return float(out[0]) if np.ndim(x) == 0 else out


# -------------------------------------------------------------- G and phi


def _G_parts(n: int, z: np.ndarray, alpha: float):
    """Return (lead, rem) with G_n(z; alpha) = lead * z^n + rem, lead in {0, 1}."""
    ev, ev_zero = _euler_values(alpha, n)
    if not ev_zero[n] and alpha not in (0.0, 1.0):
        raise ValueError("G_n is only supported for shifts with E_n(alpha) = 0 or integer alpha")
    u = z - alpha
    s_pi = _sin_pi(u) / np.pi
    lead = np.where(u > -0.5, 1.0, 0.0)
    rem = np.empty_like(z)

    far = np.abs(z) >= _Z_ASYM_G
    if far.any():
        zf = z[far]
        J = _n_asym_terms(n, float(np.min(np.abs(zf))), math.pi)
        coeffs = phi_asymptotic_coeffs(n, alpha, J)
        lead[far] = (zf > 0).astype(float)
        rem[far] = s_pi[far] * _horner_inv(coeffs, 1.0 / zf)

    near = ~far
    if near.any():
        zn, un, sn = z[near], u[near], s_pi[near]
        poly = np.zeros_like(zn)
        for k in range(n):  # sum_{k<n} E_k(a) z^{n-1-k}
            poly = poly * zn + ev[k]
        a_br = un > -0.5
        zn_pow = zn**n
        lattice = np.empty_like(zn)
        lattice[a_br] = zn_pow[a_br] * _beta_fn(1.0 - alpha + zn[a_br])
        lattice[~a_br] = -zn_pow[~a_br] * _beta_fn(alpha - zn[~a_br])
        r = sn * (lattice - 0.5 * poly)
        if not ev_zero[n]:
            eps = -1.0 if int(alpha) % 2 == 1 else 1.0
            r = r - 0.5 * ev[n] * eps * np.sinc(zn)
        rem[near] = r
    return lead, rem


def eval_G(n: int, x):
    """G_n(x; theta_n)."""
    theta = shifts(n).theta
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    lead, rem = _G_parts(n, xa, theta)
    out = lead * xa**n + rem
    return float(out[0]) if np.ndim(x) == 0 else out


def eval_phi(n: int, x, delta: float):
    """phi_n(x; delta) = delta^{-n} G_n(delta x; theta_n) - x_+^n, with x_+^0 = 1 at 0."""
    KernelParams(n, delta, 0.0)
    theta = shifts(n).theta
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    lead, rem = _G_parts(n, delta * xa, theta)
    out = (lead - (xa >= 0)) * xa**n + rem / delta**n
    return float(out[0]) if np.ndim(x) == 0 else out


# ------------------------------------------------------ Fourier transforms


def _gf_derivatives(alpha, w, m: int):
    """[E^{(0)}(w), ..., E^{(m)}(w)] for E(w) = e^{alpha w} / (e^w - 1), in mpmath.

    Uses E^{(j)} = e^{alpha w} sum_i a_i / (y - 1)^{i+1} with y = e^w and the
    recursion a'_i = (alpha - i - 1) a_i - i a_{i-1} for y d/dy.
    """
    y1 = mpmath.expm1(w)
    ea = mpmath.exp(alpha * w)
    a = [mpmath.mpf(1)]
    out = []
    for _ in range(m + 1):
        acc = mpmath.mpc(0)
        p = 1 / y1
        for ai in a:
            acc += ai * p
            p /= y1
        out.append(ea * acc)
        nxt = [mpmath.mpf(0)] * (len(a) + 1)
        for i, ai in enumerate(a):
            nxt[i] += (alpha - i - 1) * ai
            nxt[i + 1] -= (i + 1) * ai
        a = nxt
    return out


def _work_dps(n: int, s: float) -> int:
    gap = min(abs(s), abs(1.0 - abs(s)), 0.5)
    return int(30 + (n + 2) * max(0.0, -math.log10(gap)) + math.lgamma(n + 2) / math.log(10))


def _dhat_band_mp(n: int, s, alpha: float):
    bn = bernoulli_polynomial(n, _INTERNAL_CAP)(Fraction(alpha))
    am = mpmath.mpf(alpha)
    w = -2j * mpmath.pi * s
    E = _gf_derivatives(am, w, n)
    val = -2 * (1 - s) * E[n]
    if n > 0:
        val += 2 * n * s * E[n - 1] / w
    c = mpmath.mpf(_frac(alpha))
    val += mpmath.mpf(bn.numerator) / bn.denominator / (1j * mpmath.pi) * mpmath.expjpi(-2 * c * s)
    return val


def dhat_band(n: int, s: float, alpha: float) -> complex:
    """dhat(t; 1, alpha) + 2 n! / (2 pi i t)^{n+1} at s = t, for 0 < |s| < 1.

    The smooth part of the transform inside the band; polynomial coefficients
    are built from this directly.
    """
    if not 0 < abs(s) < 1:
        raise ValueError("band evaluation needs 0 < |s| < 1")
    if s < 0:
        return dhat_band(n, -s, alpha).conjugate()
    with mpmath.workdps(_work_dps(n, s)):
        return complex(_dhat_band_mp(n, mpmath.mpf(s), alpha))


def dhat(n: int, t: float, delta: float, alpha: float) -> complex:
    """Fourier transform of d_n(.; delta, alpha) at frequency ``t``."""
    KernelParams(n, delta, alpha)
    s = t / delta
    if abs(s) >= 1:
        return -2.0 * math.factorial(n) / (2j * math.pi * t) ** (n + 1)
    if s == 0:
        b = bernoulli_polynomial(n + 1, _INTERNAL_CAP)(Fraction(alpha))
        return complex(-2.0 * float(b) / ((n + 1) * delta ** (n + 1)))
    if s < 0:
        return dhat(n, -t, delta, alpha).conjugate()
    with mpmath.workdps(_work_dps(n, s)):
        sm = mpmath.mpf(s)
        val = _dhat_band_mp(n, sm, alpha) - 2 * mpmath.factorial(n) / (2j * mpmath.pi * sm) ** (n + 1)
        return complex(val / mpmath.mpf(delta) ** (n + 1))


def dhat_series(n: int, t: float, delta: float, alpha: float, tol: float = 1e-16) -> complex:
    """Term-by-term evaluation of the power series for |t| < delta.

    Truncation uses |B_m(a)| <= 4 m! / (2 pi)^m on [0, 1]. Kept as an
    independent check of :func:`dhat`; it needs Bernoulli numbers of index
    well past n when |t| approaches delta.
    """
    KernelParams(n, delta, alpha)
    s = t / delta
    if abs(s) >= 1:
        raise ValueError("series only converges for |t| < delta")
    a = Fraction(alpha)
    with mpmath.workdps(40):
        w = -2j * mpmath.pi * mpmath.mpf(s)
        acc = mpmath.mpc(0)
        absacc = mpmath.mpf(0)
        k = 0
        while True:
            m = k + n + 1
            if m > _INTERNAL_CAP:
                raise DegreeCapError("series needs Bernoulli index beyond the internal cap")
            b = bernoulli_polynomial(m, _INTERNAL_CAP)(a)
            bm = mpmath.mpf(b.numerator) / b.denominator
            term = bm / mpmath.factorial(k + 1) * (mpmath.mpf(k + 1) / m - abs(s)) * w**k
            acc += term
            absacc += abs(term)
            # geometric tail from the uniform Bernoulli bound
            r = abs(s) * (m + 1) / (k + 2)
            bound = 4 * mpmath.factorial(m) / (2 * mpmath.pi) ** m / mpmath.factorial(k + 1) * (2 * mpmath.pi * abs(s)) ** k * (1 + abs(s))
            if k > 2 and r < 1 and bound * r / (1 - r) < tol * max(absacc, mpmath.mpf("1e-300")):
                break
            k += 1
        val = -2 * acc
        if s != 0:
            bn = bernoulli_polynomial(n, _INTERNAL_CAP)(a)
            c = mpmath.mpf(_frac(alpha))
            val += (mpmath.mpf(bn.numerator) / bn.denominator / (1j * mpmath.pi)
                    * mpmath.sign(s) * (mpmath.expjpi(-2 * c * s) - 1))
        return complex(val / mpmath.mpf(delta) ** (n + 1))


def _phihat_band_mp(n: int, s):
    theta = shifts(n).theta
    w = -2j * mpmath.pi * s
    val = -_gf_derivatives(mpmath.mpf(theta), w, n)[n]
    if n == 0:
        val -= mpmath.mpf(1) / 2
    return val


def phihat_band(n: int, s: float) -> complex:
    """phihat(t; 1) + n! / (2 pi i t)^{n+1} at s = t, for 0 < |s| < 1/2."""
    if not 0 < abs(s) < 0.5:
        raise ValueError("band evaluation needs 0 < |s| < 1/2")
    if s < 0:
        return phihat_band(n, -s).conjugate()
    with mpmath.workdps(_work_dps(n, s)):
        return complex(_phihat_band_mp(n, mpmath.mpf(s)))


def phihat(n: int, t: float, delta: float) -> complex:
    """Fourier transform of phi_n(.; delta) at frequency ``t``."""
    KernelParams(n, delta, 0.0)
    s = t / delta
    if abs(s) >= 0.5:
        return -float(math.factorial(n)) / (2j * math.pi * t) ** (n + 1)
    if s == 0:
        theta = shifts(n).theta
        b = bernoulli_polynomial(n + 1, _INTERNAL_CAP)(Fraction(theta))
        v = -float(b) / (n + 1) - (0.5 if n == 0 else 0.0)
        return complex(v / delta ** (n + 1))
    if s < 0:
        return phihat(n, -t, delta).conjugate()
    with mpmath.workdps(_work_dps(n, s)):
        sm = mpmath.mpf(s)
        val = _phihat_band_mp(n, sm) - mpmath.factorial(n) / (2j * mpmath.pi * sm) ** (n + 1)
        return complex(val / mpmath.mpf(delta) ** (n + 1))
