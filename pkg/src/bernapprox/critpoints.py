"""Zeros z_{2n} of the even Bernoulli polynomials and the shift sequences.

The shifts select where B_{n+1} attains its maximum (``alpha``) and minimum
(``beta``) on [0, 1]; ``theta`` is the shift used by the best L1 construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .polycore import DEGREE_CAP, DegreeCapError, bernoulli_polynomial

__all__ = [
    "ShiftTable",
    "bernoulli_even_zero",
    "bernoulli_even_zero_exact",
    "in_lehmer_bracket",
    "lehmer_bracket",
    "shifts",
]


@dataclass(frozen=True)
class ShiftTable:
    n: int
    alpha: float
    beta: float
    theta: float
    z: float


def _grid_bits(n: int) -> int:
    # 1/4 - z_{2n} sits within ~2^{-2n} 3^{-2n} of Lehmer's lower bound
    return 6 * n + 64


def lehmer_bracket(n: int) -> tuple[float, float]:
    return 0.25 - 1.0 / (math.pi * 2.0 ** (2 * n + 1)), 0.25


def _lehmer_lower_exact(n: int, bits: int) -> Fraction:
    """Dyadic rational just below 1/4 - 1/(pi 2^{2n+1})."""
    with mpmath.workdps(bits // 3 + 30):
        lo = mpmath.mpf(1) / 4 - 1 / (mpmath.pi * mpmath.mpf(2) ** (2 * n + 1))
        scaled = int(mpmath.floor(lo * mpmath.mpf(2) ** bits))
    return Fraction(scaled - 1, 1 << bits)


def in_lehmer_bracket(n: int, z: Fraction) -> bool:
    """Exact-rational z against the open bracket, decided in high precision."""
    bits = _grid_bits(n)
    with mpmath.workdps(bits // 3 + 60):
        gap = (mpmath.mpf(1) / 4 - mpmath.mpf(z.numerator) / z.denominator)
        return bool(0 < gap and gap * mpmath.pi * mpmath.mpf(2) ** (2 * n + 1) < 1)


@lru_cache(maxsize=None)
def bernoulli_even_zero_exact(n: int) -> Fraction:
    """Dyadic rational approximation of z_{2n} with 6n+64 fractional bits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    bits = _grid_bits(n)
    unit = Fraction(1, 1 << bits)
    p = bernoulli_polynomial(2 * n, cap=max(DEGREE_CAP, 2 * n))
    dp = p.derivative()
    lo, hi = _lehmer_lower_exact(n, bits), Fraction(1, 4)
    flo, fhi = p(lo), p(hi)
    if flo == 0:
        return lo
    if (flo > 0) == (fhi > 0):
        raise RuntimeError(f"zero of B_{2 * n} not bracketed in Lehmer interval")
    width = min(Fraction(1, 1000), (hi - lo) / 8)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = p(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid

    def snap(x):
        return Fraction(round(x / unit)) * unit

    x = snap((lo + hi) / 2)
    for _ in range(200):
        x_new = snap(x - p(x) / dp(x))
        if not lo <= x_new <= hi:
            x_new = snap((lo + hi) / 2)
        if abs(x_new - x) <= unit:
            x = x_new
            break
        x = x_new
    # settle on the grid point with the smallest residual
    return min((x - unit, x, x + unit), key=lambda t: abs(p(t)))


def bernoulli_even_zero(n: int, cap: int = DEGREE_CAP) -> float:
    """The unique zero of B_{2n} in (0, 1/2), rounded to double.

    For n >= 14 the distance to Lehmer's lower bound falls below double
    resolution; use :func:`bernoulli_even_zero_exact` for bracket checks.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if 2 * n > cap:
        raise DegreeCapError(f"degree cap exceeded: {2 * n} > {cap}")
    return float(bernoulli_even_zero_exact(n))


def shifts(n: int, cap: int = DEGREE_CAP) -> ShiftTable:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap - 1:
        raise DegreeCapError(f"degree cap exceeded: {n + 1} > {cap}")
    theta = 0.0 if n % 2 == 0 else 0.5
    r = n % 4
    if r == 1:
        return ShiftTable(n, 0.0, 0.5, theta, 0.0)
    if r == 3:
        return ShiftTable(n, 0.5, 0.0, theta, 0.0)
    z = bernoulli_even_zero(n // 2, cap) if n > 0 else 0.0
    if r == 0:
        return ShiftTable(n, 1.0 - z, z, theta, z)
    # n = 4k+2: B_{n+1} rises to its max at z and falls to its min at 1 - z
    return ShiftTable(n, z, 1.0 - z, theta, z)
