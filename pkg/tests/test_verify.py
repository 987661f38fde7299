import numpy as np
import pytest

from bernapprox import verify
from bernapprox.hermitian import circular_gap
from bernapprox.trigpoly import build_best_l1


def test_suite_registry():
    assert {"extremal", "interp", "l1", "poisson", "lehmer", "zeta"} <= set(verify.SUITES)
    with pytest.raises(ValueError):
        verify.run_suite("nope")


@pytest.mark.parametrize("name", ["lehmer", "zeta", "interp"])
def test_fast_suites_pass(name):
    res = verify.run_suite(name)
    assert res.passed and res.checks
    d = res.to_dict()
    assert d["suite"] == name and d["pass"] is True
    assert set(d["checks"][0]) == {"name", "value", "limit", "pass"}


def test_suite_result_add():
    res = verify.SuiteResult("x")
    res.add("ok", 0.5, 1.0)
    assert res.passed
    res.add("forced", 0.0, 1.0, ok=False)
    assert not res.passed


@pytest.mark.parametrize("count,gap", [(32, 1 / 64), (5, 0.01), (2, 0.5)])
def test_random_well_spaced_gap(count, gap):
    rng = np.random.default_rng(0)
    for _ in range(50):
        lam, a = verify.random_well_spaced(rng, count, gap)
        assert circular_gap(lam) >= gap - 1e-15
        assert np.all(np.abs(a) <= 1.0)
        assert np.all((lam >= 0) & (lam < 1))


def test_random_well_spaced_rejects_crowding():
    with pytest.raises(ValueError):
        verify.random_well_spaced(np.random.default_rng(0), 65, 1 / 64)


def test_perturbation_probe_zero_polynomial():
    # even n with N = 0 gives R = 0, so the probe falls back to the sharp error scale
    assert np.all(build_best_l1(2, 0).coeffs == 0)
    incs = verify.perturbation_probe(2, 0, np.random.default_rng(1), 5)
    assert all(v > 0 for v in incs)


def test_randomized_suite_seeding():
    a = verify.run_suite("hilbert", seed=5).to_dict()
    b = verify.run_suite("hilbert", seed=5).to_dict()
    assert a == b
