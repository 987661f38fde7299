"""Independent numerical oracles: quadrature, brute-force lattice sums, zeta series.

Nothing here calls the closed forms it is meant to check.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from . import kernels

__all__ = [
    "gauss_panels",
    "fourier_quadrature_d",
    "fourier_quadrature_phi",
    "zeta_series",
    "hurwitz_series",
    "lattice_sum",
    "adaptive_integral",
]

_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


def gauss_panels(f, a: float, b: float, h: float):
    """Composite 24-point Gauss-Legendre rule on panels of width about ``h``."""
    m = max(1, int(math.ceil((b - a) / h)))
    edges = np.linspace(a, b, m + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return np.sum(w * f(x))


def _exp_tail(omega: float, L: float, pmax: int) -> list:
    """I_p = int_L^inf e^{i omega x} x^{-p} dx for p = 0..pmax (entries 0, 1 unused if omega = 0)."""
    out = [0j] * (pmax + 1)
    if omega != 0:
        out[1] = complex(special.exp1(-1j * omega * L))
    e = complex(math.cos(omega * L), math.sin(omega * L))
    for p in range(2, pmax + 1):
        out[p] = (e * L ** (1 - p) + 1j * omega * out[p - 1]) / (p - 1)
    return out


def fourier_quadrature_d(n: int, t: float, delta: float, alpha: float, L: float = 200.0) -> complex:
    """int d_n(x; delta, alpha) e(-t x) dx by panel quadrature on [-L, L] plus the analytic tail."""
    h = min(0.125, 0.5 / (delta + abs(t)))

    def f(x):
        return kernels.eval_d(n, x, delta, alpha) * np.exp(-2j * np.pi * t * x)

    core = gauss_panels(f, -L, 0.0, h) + gauss_panels(f, 0.0, L, h)
    a = kernels.d_asymptotic_coeffs(n, alpha, 8)
    P = len(a) - 1
    two_pi = 2 * math.pi
    ip = _exp_tail(-two_pi * t, L, P)
    ip_up = _exp_tail(two_pi * (delta - t), L, P)
    ip_dn = _exp_tail(-two_pi * (delta + t), L, P)
    in_ = _exp_tail(two_pi * t, L, P)
    in_up = _exp_tail(two_pi * (delta + t), L, P)
    in_dn = _exp_tail(two_pi * (t - delta), L, P)
    ea = complex(math.cos(two_pi * alpha), math.sin(two_pi * alpha))
    tail = 0j
    for p in range(2, P + 1):
        pos = 0.5 * ip[p] - 0.25 * ea.conjugate() * ip_up[p] - 0.25 * ea * ip_dn[p]
        neg = 0.5 * in_[p] - 0.25 * ea * in_up[p] - 0.25 * ea.conjugate() * in_dn[p]
        tail += a[p] * delta ** (-p) * (pos + (-1) ** p * neg)
    return core + tail / (delta**n * math.pi**2)


def fourier_quadrature_phi(n: int, t: float, delta: float, L: float = 200.0) -> complex:
    """int phi_n(x; delta) e(-t x) dx by panel quadrature plus the analytic tail."""
    from .critpoints import shifts

    theta = shifts(n).theta
    h = min(0.125, 0.5 / (delta + abs(t)))

    def f(x):
        return kernels.eval_phi(n, x, delta) * np.exp(-2j * np.pi * t * x)

    core = gauss_panels(f, -L, 0.0, h) + gauss_panels(f, 0.0, L, h)
    b = kernels.phi_asymptotic_coeffs(n, theta, 8)
    P = len(b) - 1
    pi = math.pi
    et = complex(math.cos(pi * theta), math.sin(pi * theta))
    # x > L: sin(pi(delta x - theta)) = (e^{i pi(dx-th)} - e^{-i pi(dx-th)}) / 2i
    ip_up = _exp_tail(pi * delta - 2 * pi * t, L, P)
    ip_dn = _exp_tail(-pi * delta - 2 * pi * t, L, P)
    # x = -y < -L: sin(pi(-delta y - theta)) = -(e^{i pi(dy+th)} - e^{-i pi(dy+th)}) / 2i
    in_up = _exp_tail(pi * delta + 2 * pi * t, L, P)
    in_dn = _exp_tail(-pi * delta + 2 * pi * t, L, P)
    tail = 0j
    for p in range(2, P + 1):
        pos = (et.conjugate() * ip_up[p] - et * ip_dn[p]) / 2j
        neg = -(et * in_up[p] - et.conjugate() * in_dn[p]) / 2j
        tail += b[p] * delta ** (-p) * (pos + (-1) ** p * neg)
    return core + tail / (delta**n * pi)


def hurwitz_series(s: int, a: float, terms: int = 100000) -> float:
    """sum_{k>=0} (a+k)^{-s}: partial sum plus integral tail with two Euler-Maclaurin corrections."""
    k = np.arange(terms, dtype=float)
    head = math.fsum(((a + k) ** (-float(s)))[::-1])
    x = a + terms
    tail = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s) + s * x ** (-s - 1) / 12
    return head + tail


def zeta_series(s: int, terms: int = 100000) -> float:
    """Riemann zeta at an integer s >= 2 by direct summation plus tail."""
    return hurwitz_series(s, 1.0, terms)


def lattice_sum(m: int, x: float, K: int = 100000, alternating: bool = False) -> float:
    """Symmetric partial sum over |k| <= K of (+-1)^k (x + k)^{-m}, with a tail estimate.

    For non-alternating sums the tail uses the integral approximation of the
    two half-lattices (paired for m = 1); alternating tails are O(K^{-m-1})
    and dropped.
    """
    k = np.arange(-K, K + 1, dtype=float)
    sign = np.where(k % 2 == 0, 1.0, -1.0) if alternating else 1.0
    terms = sign * (x + k) ** (-float(m))
    order = np.argsort(-np.abs(terms))[::-1]
    head = math.fsum(terms[order])
    if alternating:
        return head
    if m == 1:
        # sum_{k>K} 2x/(x^2 - k^2) ~ -2x/(K + 1/2)
        return head - 2.0 * x / (K + 0.5)
    hi, lo = x + K + 0.5, x - K - 0.5
    tail = hi ** (1 - m) / (m - 1) + (-1) ** m * (-lo) ** (1 - m) / (m - 1)
    return head + tail


def adaptive_integral(f, a: float, b: float, breakpoints=(), tol: float = 1e-12) -> float:
    """scipy.integrate.quad over [a, b] split at the given breakpoints."""
    pts = sorted({a, b, *[p for p in breakpoints if a < p < b]})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        val, _err = integrate.quad(f, lo, hi, epsabs=tol / len(pts), epsrel=1e-13, limit=400)
        total += val
    return total
