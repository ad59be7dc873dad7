import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erdoslab.llt import (
    BpVariant,
    bp_pmf,
    gaussian_local,
    llt_deviation,
    step_variance,
    sum_pmf,
    sum_variance,
)
from erdoslab.primes import BudgetError


def _series_variance(p: float, terms: int = 200) -> float:
    # independent evaluation of 2 (1 - 1/p) sum j^2 p^-j
    return 2.0 * (1.0 - 1.0 / p) * sum(j * j * p**-j for j in range(1, terms))


def test_bp_pmf_p2_big_omega():
    pmf = bp_pmf(2, BpVariant.BIG_OMEGA, j_max=40)
    assert pmf.mass_at(0) == 0.0
    for j in (1, 2, 5, 10):
        assert pmf.mass_at(j) == pytest.approx(2.0 ** (-j - 1), abs=0)
        assert pmf.mass_at(-j) == pmf.mass_at(j)
    assert pmf.total() == pytest.approx(1.0, abs=1e-12)


def test_bp_variance_matches_series_oracle():
    for p in (2, 3, 7, 101):
        pmf = bp_pmf(p, BpVariant.BIG_OMEGA, j_max=60)
        assert pmf.variance() == pytest.approx(_series_variance(p), abs=1e-12)
        assert step_variance(p, BpVariant.BIG_OMEGA) == pytest.approx(
            _series_variance(p), abs=1e-12
        )
    assert step_variance(3, BpVariant.BIG_OMEGA) == pytest.approx(2.0, abs=1e-14)


def test_bp_pmf_small_omega():
    pmf = bp_pmf(5, BpVariant.SMALL_OMEGA)
    assert pmf.mass_at(0) == pytest.approx(0.6)
    assert pmf.mass_at(1) == pmf.mass_at(-1) == pytest.approx(0.2)
    assert pmf.mean() == pytest.approx(0.0, abs=1e-15)
    assert pmf.variance() == pytest.approx(0.4, abs=1e-15)
    assert pmf.truncated_mass == 0.0


def test_sum_pmf_single_prime_equals_step():
    got = sum_pmf(2, 3.5, BpVariant.BIG_OMEGA)
    ref = bp_pmf(3, BpVariant.BIG_OMEGA, j_max=40)
    for m in range(-10, 11):
        assert got.mass_at(m) == pytest.approx(ref.mass_at(m), abs=1e-15)


@pytest.mark.parametrize("variant", list(BpVariant))
def test_sum_pmf_normalization_symmetry_mean(variant):
    pmf = sum_pmf(2, 10**4, variant)
    assert pmf.total() == pytest.approx(1.0, abs=1e-12)
    assert abs(pmf.mean()) <= 1e-12
    s = pmf.support()
    for m in range(0, int(s.max()) + 1):
        assert pmf.mass_at(m) == pytest.approx(pmf.mass_at(-m), abs=1e-12)


@pytest.mark.parametrize("variant", list(BpVariant))
def test_variance_additivity(variant):
    pmf = sum_pmf(2, 10**4, variant)
    assert abs(pmf.variance() - sum_variance(2, 10**4, variant)) <= 1e-9


def test_gaussian_local_values():
    assert gaussian_local(0, 1.0) == pytest.approx(0.28209479177, abs=1e-10)
    assert gaussian_local(7, 3.0) == gaussian_local(-7, 3.0)
    total = sum(gaussian_local(m, 4.0) for m in range(-50, 51))
    assert total == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        gaussian_local(0, 0.0)


def test_llt_deviation_small_fraction_of_peak_and_decreasing():
    dev4, L4 = llt_deviation(2, 10**4, BpVariant.BIG_OMEGA)
    dev6, L6 = llt_deviation(2, 10**6, BpVariant.BIG_OMEGA)
    assert dev4 >= 0
    assert dev6 <= 0.15 * gaussian_local(0, L6)
    assert dev6 < dev4
    # relative deviation at the center also shrinks
    p4 = sum_pmf(2, 10**4, BpVariant.BIG_OMEGA)
    p6 = sum_pmf(2, 10**6, BpVariant.BIG_OMEGA)
    r4 = abs(p4.mass_at(0) - gaussian_local(0, L4)) / gaussian_local(0, L4)
    r6 = abs(p6.mass_at(0) - gaussian_local(0, L6)) / gaussian_local(0, L6)
    assert r6 < r4


def test_llt_deviation_with_explicit_L():
    dev, L = llt_deviation(2, 10**4, BpVariant.BIG_OMEGA, L=2.5)
    assert L == 2.5 and dev > 0


def test_sum_pmf_budget_and_preconditions():
    with pytest.raises(BudgetError):
        sum_pmf(2, 10**12, BpVariant.BIG_OMEGA)
    with pytest.raises(ValueError):
        sum_pmf(5, 3, BpVariant.BIG_OMEGA)
    with pytest.raises(ValueError):
        sum_pmf(1.5, 10, BpVariant.BIG_OMEGA)


@pytest.mark.parametrize("small_omega", [False, True])
def test_numpy_fallback_matches_accelerated_path(small_omega):
    import erdoslab.llt as llt_mod

    if llt_mod._convolve_steps is llt_mod._convolve_steps_numpy:
        pytest.skip("numba not available; only one path exists")
    from erdoslab.primes import primes_in

    primes = primes_in(2, 2000).astype(np.float64)
    fast_mass, fast_tr = llt_mod._convolve_steps(primes, 64, 64, small_omega)
    slow_mass, slow_tr = llt_mod._convolve_steps_numpy(primes, 64, 64, small_omega)
    np.testing.assert_allclose(fast_mass, slow_mass, atol=1e-14)
    assert fast_tr == pytest.approx(slow_tr, abs=1e-14)


@settings(max_examples=10, deadline=None)
@given(st.floats(2.0, 50.0), st.floats(60.0, 500.0), st.sampled_from(list(BpVariant)))
def test_random_ranges_stay_normalized(w, z, variant):
    pmf = sum_pmf(w, z, variant)
    assert pmf.total() == pytest.approx(1.0, abs=1e-12)
    assert abs(pmf.mean()) <= 1e-12
