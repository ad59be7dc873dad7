import numpy as np
import pytest

from erdoslab.correlation import (
    CorrelationQuery,
    MAX_CHARACTER_MODULUS,
    dirichlet_characters,
    equidist_defect,
    exp_alpha_big_omega,
    exp_alpha_omega,
    liouville,
    m_measure,
    moebius,
    one,
    pretentious_distance,
    smooth_band_indicator,
    two_point_correlation,
)
from erdoslab.primes import BudgetError
from erdoslab.sieve import factor, sieve_window


def _euler_phi(q):
    return sum(1 for a in range(1, q + 1) if np.gcd(a, q) == 1)


def test_builtins_are_one_bounded_on_sieved_values():
    w = sieve_window(1, 10**5)
    for g in (
        liouville(),
        moebius(),
        exp_alpha_big_omega(0.3),
        exp_alpha_omega(0.7),
        smooth_band_indicator(100, 1000),
    ):
        vals = g.values(w)
        assert np.all(np.abs(vals) <= 1.0 + 1e-12)


def test_liouville_and_moebius_against_oracle():
    w = sieve_window(1, 500)
    lam = liouville().values(w)
    mu = moebius().values(w)
    for n in range(1, 501):
        f = factor(n)
        assert lam[n - 1] == (-1.0) ** f.big_omega
        assert mu[n - 1] == ((-1.0) ** f.omega if f.squarefree else 0.0)


def test_band_indicator_zero_iff_prime_factor_in_band():
    w = sieve_window(1, 2000)
    g = smooth_band_indicator(10, 50)  # primes in (10, 50]
    vals = g.values(w)
    for n in range(1, 2001):
        has = any(10 < p <= 50 for p, _ in factor(n).factors)
        assert vals[n - 1] == (0.0 if has else 1.0)


def test_complete_multiplicativity_of_twists():
    w = sieve_window(1, 10**4)
    g = exp_alpha_big_omega(0.37)
    vals = g.values(w)
    for a, b in ((12, 35), (17, 19), (8, 9), (30, 77)):
        assert vals[a * b - 1] == pytest.approx(vals[a - 1] * vals[b - 1], abs=1e-12)


def test_pretentious_distance_examples():
    lam = liouville()
    assert pretentious_distance(lam, lam, 10**4, 0.0) == 0.0
    d2 = pretentious_distance(one(), lam, 10) ** 2
    assert d2 == pytest.approx(2 * (1 / 2 + 1 / 3 + 1 / 5 + 1 / 7), abs=1e-12)


def test_pretentious_distance_nondecreasing_in_X():
    lam = liouville()
    prev = 0.0
    for X in (10, 100, 1000, 10**4):
        d = pretentious_distance(one(), lam, X)
        assert d >= prev - 1e-12
        prev = d


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 7, 8, 9, 12, 16, 24, 60])
def test_character_tables(q):
    chars = dirichlet_characters(q)
    phi = _euler_phi(q)
    assert len(chars) == phi
    units = [a for a in range(q) if np.gcd(a, q) == 1] if q > 1 else [0]
    for chi in chars:
        # unimodular on units, zero elsewhere
        for a in range(q):
            if a in units:
                assert abs(abs(chi[a]) - 1) < 1e-12
            else:
                assert chi[a] == 0
        # completely multiplicative on units
        for a in units[:6]:
            for b in units[:6]:
                assert chi[a * b % q] == pytest.approx(chi[a] * chi[b], abs=1e-10)
    # orthogonality of the table's rows
    mat = np.array(chars)
    gram = mat @ mat.conj().T
    np.testing.assert_allclose(gram, phi * np.eye(phi), atol=1e-8)


def test_character_budget():
    with pytest.raises(BudgetError):
        dirichlet_characters(MAX_CHARACTER_MODULUS + 1)


def test_m_measure_constant_function_is_zero():
    val = m_measure(one(), 10**3, 17, 1)
    assert val == pytest.approx(0.0, abs=1e-12)


def test_m_measure_grid_refinement_monotone():
    lam = liouville()
    # sizes 17 and 31 give 8- and 15-point half-grids whose interval counts
    # divide, so the finer grid is a superset and the minimum cannot grow
    coarse = m_measure(lam, 10**4, 17, 2)
    fine = m_measure(lam, 10**4, 31, 2)
    assert fine <= coarse + 1e-12


def test_m_measure_error_cap_reported():
    val, cap = m_measure(one(), 10**3, 17, 1, with_error_cap=True)
    assert val == pytest.approx(0.0, abs=1e-12)
    assert cap > 0


def test_two_point_correlation_zero_function():
    # a band covering every prime in range makes g2 vanish on n >= 2
    q = CorrelationQuery(N=10**3, h1=0, h2=1)
    z = smooth_band_indicator(1, 4 * 10**3)
    val = two_point_correlation(liouville(), z, q)
    assert val == 0


def test_two_point_correlation_swap_symmetry():
    # for real g1, g2 and delta = 0 the average is symmetric under
    # swapping (g1, h1) <-> (g2, h2)
    q1 = CorrelationQuery(N=10**4, h1=0, h2=1)
    q2 = CorrelationQuery(N=10**4, h1=1, h2=0)
    a = two_point_correlation(liouville(), moebius(), q1)
    b = two_point_correlation(moebius(), liouville(), q2)
    assert a == pytest.approx(b, abs=1e-15)


def test_two_point_correlation_liouville_small():
    q = CorrelationQuery(N=10**5, h1=0, h2=1)
    val = two_point_correlation(liouville(), liouville(), q)
    assert abs(val) <= 0.03


def test_chowla_with_dilates_via_W_reduction():
    # lambda(2n+1) lambda(2n+3) as a W = 2 progression average
    q = CorrelationQuery(N=10**6, W=2, b=0, h1=1, h2=3)
    val = two_point_correlation(liouville(), liouville(), q)
    assert abs(val) <= 0.02


def test_equidist_defect_constant_function():
    N, qmax = 10**3, 7
    d = equidist_defect(one(), N, 1.0, qmax)
    assert d <= qmax / N


def test_equidist_defect_liouville():
    assert equidist_defect(liouville(), 10**5, 0.0, 10) <= 0.03


def test_equidist_q1_recovers_mean_gap():
    N = 10**4
    w = sieve_window(N + 1, 2 * N)
    lam = liouville()
    mean = float(np.sum(lam.values(w))) / N
    delta = 0.125
    d = equidist_defect(lam, N, delta, 1)
    assert d == pytest.approx(abs(mean - delta), abs=1e-15)


def test_correlation_query_validation():
    with pytest.raises(ValueError):
        CorrelationQuery(N=10, h1=0, h2=1)
    with pytest.raises(ValueError):
        CorrelationQuery(N=10**4, h1=2, h2=2)
