"""Weyl sums, the Erdos-Turan type bound for Bernoulli discrepancies, and a brute-force check.

The generalized discrepancy of x_1..x_M of order n+1 is

    sup_y | sum_m B_{n+1}(x_m - y) |

with B_{n+1} the periodic Bernoulli function. Sandwiching B_{n+1} between
the extremal minorant and majorant of degree N and summing over the points
gives an upper bound that only needs the Weyl sums for k = 1..N.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .critpoints import shifts
from .polycore import bernoulli_periodic, bernoulli_polynomial
from .trigpoly import ApproxSpec, build_extremal

__all__ = [
    "PointSet",
    "weyl_sums",
    "et_bound",
    "zero_weyl_bound",
    "brute_discrepancy",
    "read_points",
]


@dataclass(frozen=True, eq=False)
class PointSet:
    """Finite multiset of points on R/Z, stored as representatives in [0, 1)."""

    points: np.ndarray

    def __post_init__(self):
        x = np.array(self.points, dtype=float).ravel()
        if x.size == 0:
            raise ValueError("a point set needs at least one point")
        if not np.all(np.isfinite(x)):
            raise ValueError("points must be finite")
        x = x - np.floor(x)
        # x - floor(x) can round up to exactly 1.0 for tiny negative inputs
        x[x >= 1.0] = 0.0
        x.setflags(write=False)
        object.__setattr__(self, "points", x)

    @property
    def M(self) -> int:
        return int(self.points.size)


def weyl_sums(ps: PointSet, N: int) -> np.ndarray:
    """Entries k = 1..N of sum_m e(k x_m)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    k = np.arange(1, N + 1)
    # reduce k x mod 1 before forming the phase so large k stays accurate
    ph = 2 * np.pi * ((k[:, None] * ps.points[None, :]) % 1.0)
    return np.cos(ph).sum(axis=1) + 1j * np.sin(ph).sum(axis=1)


@lru_cache(maxsize=256)
def _coeff_moduli(n: int, N: int, side: str) -> np.ndarray:
    return np.abs(build_extremal(n, N, side).coeffs[1:])


def _gap_terms(n: int, N: int) -> tuple[float, float]:
    sh = shifts(n)
    B = bernoulli_polynomial(n + 1)
    scale = (N + 1) ** (n + 1)
    low = -float(B(Fraction(sh.beta))) / scale
    high = float(B(Fraction(sh.alpha))) / scale
    return low, high


def et_bound(ps: PointSet, n: int, N: int) -> float:
    """Upper bound for the order-(n+1) discrepancy of ``ps`` from the degree-N extremals.

    max over the two sides of  M |gap_side| + sum_{0<|k|<=N} |P_side^(k)| |W_k|,
    where the +k and -k terms are equal, so each frequency is counted twice.
    """
    ApproxSpec(n, N, "minorant")
    low, high = _gap_terms(n, N)
    M = ps.M
    if N == 0:
        return max(M * low, M * high)
    w = np.abs(weyl_sums(ps, N))
    s_min = 2.0 * math.fsum(_coeff_moduli(n, N, "minorant") * w)
    s_maj = 2.0 * math.fsum(_coeff_moduli(n, N, "majorant") * w)
    return max(M * low + s_min, M * high + s_maj)


def zero_weyl_bound(M: int, n: int, N: int) -> float:
    """et_bound when every Weyl sum with 0 < k <= N vanishes (e.g. M > N equally spaced points)."""
    low, high = _gap_terms(n, N)
    return max(M * low, M * high)


def brute_discrepancy(ps: PointSet, n: int, grid: int = 20000) -> float:
    """max over y on a uniform grid of |sum_m B_{n+1}(x_m - y)|.

    For n = 0 the sum also gets sampled at y = x_m from both sides of the
    jump, which is where the supremum of the sawtooth sum is approached.
    """
    if grid < 10:
        raise ValueError("grid must be >= 10")
    y = np.arange(grid) / grid
    x = ps.points
    best = 0.0
    # blocks keep the M x grid matrix small
    step = max(1, 2_000_000 // ps.M)
    for lo in range(0, grid, step):
        yy = y[lo : lo + step]
        vals = bernoulli_periodic(n + 1, x[None, :] - yy[:, None]).sum(axis=1)
        best = max(best, float(np.max(np.abs(vals))))
    if n == 0:
        for ym in np.unique(x):
            d = x - ym
            # B_1(d) for the points away from ym, and -1/2 or +1/2 for those at ym
            at = d == 0.0
            rest = float(np.sum(bernoulli_periodic(1, d[~at])))
            c = int(np.count_nonzero(at))
            best = max(best, abs(rest - 0.5 * c), abs(rest + 0.5 * c))
    return best


def read_points(path) -> PointSet:
    """One decimal value per line; blank lines and '#' comments are skipped."""
    vals = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            vals.append(float(s))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: not a number: {s!r}") from exc
    return PointSet(np.array(vals))
