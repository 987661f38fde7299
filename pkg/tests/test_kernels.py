import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from bernapprox import oracles
from bernapprox.critpoints import shifts
from bernapprox.kernels import (
    KernelParams,
    PoleError,
    dhat,
    dhat_series,
    eval_d,
    eval_G,
    eval_H,
    eval_phi,
    phihat,
    polygamma,
)
from bernapprox.polycore import DegreeCapError, bernoulli_polynomial


def _euler_gamma_series(K=10**6):
    # H_K - log K - 1/(2K) + 1/(12 K^2)
    k = np.arange(K, 0, -1, dtype=float)
    return math.fsum(1.0 / k) - math.log(K) - 0.5 / K + 1.0 / (12 * K**2)


def test_trigamma_one():
    k = np.arange(1, 10**5 + 1, dtype=float)
    brute = math.fsum((1.0 / k**2)[::-1]) + 1.0 / (10**5 + 0.5)
    assert polygamma(1, 1.0) == pytest.approx(brute, rel=1e-12)
    assert polygamma(1, 1.0) == pytest.approx(math.pi**2 / 6, rel=1e-14)


def test_digamma_one():
    assert polygamma(0, 1.0) == pytest.approx(-_euler_gamma_series(), abs=1e-13)


@given(st.floats(0.01, 60))
def test_trigamma_recurrence(x):
    # the subtraction cancels about 1/x^2 worth of digits
    tol = 1e-14 * (1 + 1 / x**2)
    assert polygamma(1, x + 1) == pytest.approx(polygamma(1, x) - 1 / x**2, rel=1e-12, abs=tol)


@given(st.floats(-30, 30).filter(lambda v: abs(v - round(v)) > 1e-3 or v > 0))
@settings(max_examples=200)
def test_polygamma_against_scipy(x):
    assert polygamma(0, x) == pytest.approx(float(special.psi(x)), rel=1e-12, abs=1e-12)
    assert polygamma(1, x) == pytest.approx(float(special.polygamma(1, x)), rel=1e-12, abs=1e-12)


def test_polygamma_poles_and_order():
    with pytest.raises(PoleError):
        polygamma(0, -3.0)
    with pytest.raises(PoleError):
        polygamma(1, 0.0)
    with pytest.raises(ValueError):
        polygamma(2, 1.0)


def test_kernel_params_validation():
    KernelParams(3, 2.0, 0.5)
    with pytest.raises(ValueError):
        KernelParams(3, 0.0, 0.5)
    with pytest.raises(ValueError):
        KernelParams(3, 1.0, 1.5)
    with pytest.raises(DegreeCapError):
        KernelParams(64, 1.0, 0.5)


def _sgn_pow(x, n):
    # sgn(x) x^n with sgn(0) = 0 except sgn(0) 0^0 read as 1
    return np.sign(x) * x**n if n else np.where(x >= 0, 1.0, -1.0)


@pytest.mark.parametrize("n", range(0, 7))
def test_H_interpolates_at_beta_lattice(n):
    b = shifts(n).beta
    for m in (-2, -1, 0, 1, 2):
        x = b + m
        want = math.copysign(1.0, x) * x**n if x != 0 else (1.0 if n == 0 else 0.0)
        assert eval_H(n, x, b) == pytest.approx(want, abs=1e-12 * max(1.0, abs(x) ** n))


@pytest.mark.parametrize("n", range(0, 7))
def test_H_sandwich_on_grid(n):
    sh = shifts(n)
    x = np.linspace(-20, 20, 10000)
    f = _sgn_pow(x, n)
    scale = np.maximum(1.0, np.abs(x) ** n)
    assert np.all(eval_H(n, x, sh.alpha) - f <= 1e-12 * scale)
    assert np.all(eval_H(n, x, sh.beta) - f >= -1e-12 * scale)


@pytest.mark.parametrize("n,alpha", [(0, 0.3), (2, shifts(2).alpha), (3, 0.5), (5, 0.0), (4, shifts(4).beta)])
def test_H_removable_point(n, alpha):
    a = alpha - math.floor(alpha)
    v = eval_H(n, a, alpha)
    assert math.isfinite(v)
    for h in (1e-5, 1e-6):
        # the symmetric mean differs from the centre value by O(h^2)
        mean = 0.5 * (eval_H(n, a + h, alpha) + eval_H(n, a - h, alpha))
        assert mean == pytest.approx(v, abs=10 * h * h + 1e-10)


@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("N", [0, 1, 3])
def test_d_zeros_and_sign(n, N):
    b = shifts(n).beta
    delta = N + 1
    x = (b + np.arange(N + 1)) / delta
    d = eval_d(n, x, delta, b)
    if n == 0:
        # H_0 interpolates sgn_+ at 0 while d_0 subtracts the symmetric sgn(0) = 0
        assert d[0] == pytest.approx(1.0, abs=1e-12)
        d = d[1:]
    assert np.max(np.abs(d), initial=0.0) <= 1e-12
    grid = np.linspace(-25, 25, 10000)
    assert np.min(eval_d(n, grid, delta, b)) >= -1e-12


# |d_n(x; 1, beta_n)| x^2 on 10 <= |x| <= 1000, measured once and frozen with a margin
D_DECAY = {0: 0.2, 1: 0.15, 2: 0.1, 3: 0.1, 4: 0.1}


@pytest.mark.parametrize("n", range(0, 5))
def test_d_decay(n):
    b = shifts(n).beta
    x = np.concatenate([np.linspace(10, 1000, 5000), -np.linspace(10, 1000, 5000)])
    assert np.max(np.abs(eval_d(n, x, 1.0, b)) * x**2) < D_DECAY[n]


@pytest.mark.parametrize("n", range(0, 5))
def test_dhat_outside_band(n):
    delta, a = 3.0, shifts(n).beta
    want = -2 * math.factorial(n) / (2j * math.pi * delta) ** (n + 1)
    assert dhat(n, delta, delta, a) == pytest.approx(want, rel=1e-14)
    assert dhat(n, -2.5 * delta, delta, a) == pytest.approx(
        -2 * math.factorial(n) / (2j * math.pi * -2.5 * delta) ** (n + 1), rel=1e-14
    )


def test_dhat_zero_examples():
    assert dhat(0, 0.0, 4.0, 0.0) == pytest.approx(1 / 4, rel=1e-14)
    for n in range(5):
        b = shifts(n).beta
        want = -2 * float(bernoulli_polynomial(n + 1)(Fraction(b))) / ((n + 1) * 2.0 ** (n + 1))
        assert dhat(n, 0.0, 2.0, b) == pytest.approx(want, rel=1e-13, abs=1e-16)


@pytest.mark.parametrize("n", range(0, 5))
def test_dhat_zero_matches_integral(n):
    # integral of d_n over the line, by quadrature
    b = shifts(n).beta
    q = oracles.fourier_quadrature_d(n, 0.0, 2.0, b)
    assert dhat(n, 0.0, 2.0, b) == pytest.approx(q, abs=1e-9)


@pytest.mark.parametrize("n", range(0, 6))
def test_dhat_continuity_at_band_edge(n):
    for a in (shifts(n).alpha, shifts(n).beta):
        delta = 2.0
        inside = dhat(n, delta * (1 - 1e-12), delta, a)
        edge = dhat(n, delta, delta, a)
        assert abs(inside - edge) < 1e-10


@given(st.integers(0, 5), st.floats(-10, 10), st.floats(0.5, 5), st.floats(0, 1))
@settings(max_examples=60, deadline=None)
def test_dhat_hermitian(n, t, delta, a):
    assert dhat(n, -t, delta, a) == pytest.approx(np.conj(dhat(n, t, delta, a)), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 5))
# the literal series converges like t^m, so it is usable as an oracle only away from the band edge
@pytest.mark.parametrize("t", [0.0, 0.1, 0.45, 0.6])
def test_dhat_closed_form_vs_series(n, t):
    for a in (0.0, 0.5, shifts(2).alpha, 1.0):
        got = dhat(n, t, 1.0, a)
        ref = dhat_series(n, t, 1.0, a)
        assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("n", range(0, 5))
def test_dhat_quadrature_oracle(n):
    delta = 4.0
    sh = shifts(n)
    for a in (sh.alpha, sh.beta):
        for t in (0.0, 0.3 * delta, 0.9 * delta, 1.5 * delta):
            assert abs(dhat(n, t, delta, a) - oracles.fourier_quadrature_d(n, t, delta, a)) < 1e-6


def _phi1(n, x):
    return eval_phi(n, x, 1.0)


@pytest.mark.parametrize("n", range(0, 8))
def test_phi_sign_pattern(n):
    for delta in (1.0, 2.0):
        x = np.linspace(-12.3, 12.3, 4001)
        v = eval_phi(n, x, delta)
        k = n // 2
        if n % 2 == 0:
            ref, sign = np.sin(np.pi * delta * x), (-1) ** (k + 1)
        else:
            # phi_1(0) = G_1(0) > 0: smoothing the convex kink of x_+ lifts it
            ref, sign = np.cos(np.pi * delta * x), (-1) ** k
        keep = np.abs(ref) > 1e-3
        assert np.all(np.sign(v[keep]) == sign * np.sign(ref[keep]))


@pytest.mark.parametrize("n", range(0, 8))
def test_phi_zeros(n):
    th = shifts(n).theta
    x = th + np.arange(-6, 7)
    x = x[x != 0] if n == 0 else x
    assert np.max(np.abs(_phi1(n, x))) <= 1e-12
    # delta = 2 rescales the zero set
    assert np.max(np.abs(eval_phi(n, x / 2, 2.0))) <= 1e-12


def test_phi_x_plus_convention_at_zero():
    # G_0(0) sits at the jump of x_+^0; with x_+^0 = 1 at 0 the error is G_0(0) - 1
    assert eval_phi(0, 0.0, 1.0) == pytest.approx(eval_G(0, 0.0) - 1.0, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 5))
def test_phi_decay(n):
    x = np.concatenate([np.linspace(10, 1000, 5000), -np.linspace(10, 1000, 5000)])
    assert np.max(np.abs(_phi1(n, x)) * x**2) < 1.0


def test_phi_scaling():
    x = np.linspace(-5, 5, 101)
    for n in range(4):
        lhs = eval_phi(n, x, 2.0)
        rhs = 2.0**-n * eval_G(n, 2.0 * x) - np.where(x >= 0, np.abs(x) ** n if n else 1.0, 0.0)
        assert np.max(np.abs(lhs - rhs)) <= 1e-13


@pytest.mark.parametrize("n", range(0, 5))
def test_phihat_edge_value(n):
    delta = 3.0
    want = -math.factorial(n) / (1j * math.pi * delta) ** (n + 1)
    assert phihat(n, delta / 2, delta) == pytest.approx(want, rel=1e-14)
    assert abs(phihat(n, delta / 2 * (1 - 1e-12), delta) - want) < 1e-10


def test_phihat_zero_for_n0():
    assert abs(phihat(0, 0.0, 1.0)) < 1e-15
    assert abs(phihat(0, 0.0, 3.0)) < 1e-15


@given(st.integers(0, 5), st.floats(-3, 3), st.floats(0.3, 6))
@settings(max_examples=60, deadline=None)
def test_phihat_scaling(n, t, delta):
    lhs = phihat(n, t, delta)
    rhs = delta ** (-n - 1) * phihat(n, t / delta, 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-11, abs=1e-14)


@given(st.integers(0, 5), st.floats(-3, 3), st.floats(0.3, 6))
@settings(max_examples=40, deadline=None)
def test_phihat_hermitian(n, t, delta):
    assert phihat(n, -t, delta) == pytest.approx(np.conj(phihat(n, t, delta)), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 5))
def test_phihat_quadrature_oracle(n):
    delta = 4.0
    for t in (0.0, 0.3 * delta, 0.45 * delta, 0.9 * delta, 1.5 * delta):
        assert abs(phihat(n, t, delta) - oracles.fourier_quadrature_phi(n, t, delta)) < 1e-6
