"""Exact-rational Bernoulli and Euler polynomials.

Polynomials are stored as tuples of :class:`fractions.Fraction`, constant
term first. Floating evaluation uses a compensated Horner scheme so that
grid scans are reproducible to the last bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

import numpy as np

__all__ = [
    "DEGREE_CAP",
    "DegreeCapError",
    "RationalPoly",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "euler_polynomial",
    "bernoulli_periodic",
    "eval_poly",
]

DEGREE_CAP = 64

Number = Union[int, Fraction]


class DegreeCapError(ValueError):
    """Requested degree exceeds the configured cap."""


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > cap:
        raise DegreeCapError(f"degree cap exceeded: {n} > {cap}")


@dataclass(frozen=True)
class RationalPoly:
    """Univariate polynomial with exact rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        c = [Fraction(a) for a in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return 0
        return len(self.coeffs) - 1

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return RationalPoly(tuple(out))

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def scale(self, c: Number) -> "RationalPoly":
        c = Fraction(c)
        return RationalPoly(tuple(c * a for a in self.coeffs))

    def derivative(self) -> "RationalPoly":
        if len(self.coeffs) == 1:
            return RationalPoly((0,))
        return RationalPoly(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def shift(self, h: Number) -> "RationalPoly":
        """Return the polynomial x -> p(x + h)."""
        h = Fraction(h)
        d = len(self.coeffs) - 1
        out = [Fraction(0)] * (d + 1)
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            hp = Fraction(1)
            for i in range(j, -1, -1):
                out[i] += a * comb(j, i) * hp
                hp *= h
        return RationalPoly(tuple(out))

    def __call__(self, x: Number) -> Fraction:
        """Exact evaluation at a rational point."""
        x = Fraction(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    @classmethod
    def monomial(cls, n: int) -> "RationalPoly":
        return cls((0,) * n + (1,))


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple:
    """B_0..B_n with B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, k) * B[k] for k in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> RationalPoly:
    B = bernoulli_numbers(n)
    # B_n(x) = sum_k C(n, k) B_k x^{n-k}
    return RationalPoly(tuple(comb(n, n - j) * B[n - j] for j in range(n + 1)))


@lru_cache(maxsize=None)
def _euler(n: int) -> RationalPoly:
    # E_n(x + 1) = sum_k C(n, k) E_k(x) together with E_n(x) + E_n(x + 1) = 2x^n
    # gives E_n = x^n - (1/2) sum_{k<n} C(n, k) E_k.
    p = RationalPoly.monomial(n)
    for k in range(n):
        p = p - _euler(k).scale(Fraction(comb(n, k), 2))
    return p


def bernoulli_polynomial(n: int, cap: int = DEGREE_CAP) -> RationalPoly:
    """Exact Bernoulli polynomial B_n."""
    _check_cap(n, cap)
    return _bernoulli(n)


def euler_polynomial(n: int, cap: int = DEGREE_CAP) -> RationalPoly:
    """Exact Euler polynomial E_n (generating function e^{xt}/(e^t+1) = sum E_k t^k/(2 k!))."""
    _check_cap(n, cap)
    return _euler(n)


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


_SPLITTER = 134217729.0  # 2**27 + 1


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _comp_horner(coeffs: Sequence[float], x):
    x = np.asarray(x, dtype=float)
    s = np.full_like(x, coeffs[-1])
    c = np.zeros_like(x)
    for a in coeffs[-2::-1]:
        p, pe = _two_prod(s, x)
        s, se = _two_sum(p, a)
        c = c * x + (pe + se)
    return s + c


def eval_poly(p: RationalPoly, x):
    """Evaluate ``p`` at ``x``.

    Fractions and ints go through the exact path and return a Fraction.
    Floats and arrays use compensated Horner in double precision.
    """
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return p(x)
    coeffs = [float(a) for a in p.coeffs]
    out = _comp_horner(coeffs, x)
    return float(out) if np.ndim(out) == 0 else out


def bernoulli_periodic(n: int, x):
    """B_n(x - floor(x)), the 1-periodic Bernoulli function."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = bernoulli_polynomial(n)
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        x = Fraction(x)
        return p(x - (x.numerator // x.denominator))
    x = np.asarray(x, dtype=float)
    return eval_poly(p, x - np.floor(x))
