"""Exact integer random-walk distributions and their Gaussian local limit.

For each prime p an independent symmetric step b_p takes values in Z:

    with-multiplicity variant:  P(0) = 1 - 2/p,  P(+-j) = (1 - 1/p) / p^j
    distinct-count variant:     P(0) = 1 - 2/p,  P(+-1) = 1/p

The distribution of sum b_p over all primes in (w, z] is computed by exact
convolution, ascending in p, with every clipped crumb of probability mass
recorded in ``truncated_mass``.  The comparison target is the lattice
Gaussian  exp(-m^2 / (4L)) / (2 sqrt(pi L))  with L equal to half the
exact variance of the convolved sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import exp, log, pi, sqrt

import numpy as np

from .primes import BudgetError, primes_in

#: Largest admissible z (prime-table memory budget).
MAX_Z = 2 * 10**8

#: Half-width of the convolution support.  The walk's standard deviation
#: stays below 3 for any z within budget, and single steps are capped by
#: the per-prime exponent rule, so mass near the edges is ~1e-30.
_HALF_SUPPORT = 96

try:  # numba accelerates the per-prime convolution loop ~10x
    import numba as _nb

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


class BpVariant(str, Enum):
    BIG_OMEGA = "BIG_OMEGA"
    SMALL_OMEGA = "SMALL_OMEGA"


@dataclass
class IntegerPMF:
    """Finitely supported PMF over the integers.

    mass[i] is the probability of offset + i; truncated_mass accounts for
    everything deliberately clipped away, so mass.sum() + truncated_mass
    is 1 up to float rounding.
    """

    offset: int
    mass: np.ndarray
    truncated_mass: float

    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.mass.size)

    def mass_at(self, m: int) -> float:
        i = m - self.offset
        if 0 <= i < self.mass.size:
            return float(self.mass[i])
        return 0.0

    def total(self) -> float:
        return float(self.mass.sum()) + self.truncated_mass

    def mean(self) -> float:
        return float(np.dot(self.support().astype(np.float64), self.mass))

    def variance(self) -> float:
        s = self.support().astype(np.float64)
        mu = self.mean()
        return float(np.dot((s - mu) ** 2, self.mass))

    def trimmed(self) -> "IntegerPMF":
        """Drop zero-mass edges (bookkeeping unchanged)."""
        nz = np.flatnonzero(self.mass)
        if nz.size == 0:
            return self
        lo, hi = int(nz[0]), int(nz[-1]) + 1
        return IntegerPMF(self.offset + lo, self.mass[lo:hi].copy(), self.truncated_mass)


def _exponent_cap(p: float, j_max: int) -> int:
    """Smallest J >= 2 with p^(J+1) >= 1e16, capped by j_max.

    The clipped step mass beyond J is 2 p^-(J+1) <= 2e-16 per prime and the
    clipped variance mass is O(J^2 p^-(J+1)); both stay far below the 1e-10
    clip budget and the 1e-9 variance-additivity tolerance when summed over
    every prime within the z budget.
    """
    J = 2
    pw = p * p * p
    while pw < 1e16 and J < j_max:
        J += 1
        pw *= p
    return J


def bp_pmf(p: int, variant: BpVariant | str, j_max: int = 64) -> IntegerPMF:
    """Exact step distribution at prime p; mass at |j| > j_max is recorded
    in truncated_mass (the distinct-count variant needs no truncation)."""
    variant = BpVariant(variant)
    if p < 2:
        raise ValueError(f"p must be a prime >= 2, got {p}")
    if j_max < 1:
        raise ValueError(f"j_max must be >= 1, got {j_max}")
    if variant is BpVariant.SMALL_OMEGA:
        q = 1.0 / p
        return IntegerPMF(-1, np.array([q, 1.0 - 2.0 * q, q]), 0.0)
    mass = np.zeros(2 * j_max + 1)
    mass[j_max] = 1.0 - 2.0 / p
    a = 1.0 - 1.0 / p
    for j in range(1, j_max + 1):
        a /= p
        mass[j_max + j] = a
        mass[j_max - j] = a
    truncated = 2.0 * float(p) ** -(j_max + 1)
    return IntegerPMF(-j_max, mass, truncated)


if _HAVE_NUMBA:

    @_nb.njit(cache=True)
    def _convolve_steps_numba(primes, half, j_max, small_omega):  # pragma: no cover
        n = 2 * half + 1
        mass = np.zeros(n)
        mass[half] = 1.0
        out = np.zeros(n)
        truncated = 0.0
        alive = 1.0
        for t in range(primes.size):
            p = primes[t]
            q = 1.0 / p
            if small_omega:
                J = 1
            else:
                J = 2
                pw = p * p * p
                while pw < 1e16 and J < j_max:
                    J += 1
                    pw *= p
            for i in range(n):
                out[i] = (1.0 - 2.0 * q) * mass[i]
            spill = 0.0
            if small_omega:
                for i in range(n):
                    v = q * mass[i]
                    if v != 0.0:
                        if i >= 1:
                            out[i - 1] += v
                        else:
                            spill += v
                        if i + 1 < n:
                            out[i + 1] += v
                        else:
                            spill += v
                deficit = 0.0
            else:
                aj = 1.0 - q
                for j in range(1, J + 1):
                    aj *= q
                    for i in range(n):
                        v = aj * mass[i]
                        if v != 0.0:
                            if i - j >= 0:
                                out[i - j] += v
                            else:
                                spill += v
                            if i + j < n:
                                out[i + j] += v
                            else:
                                spill += v
                deficit = 2.0 * q ** (J + 1)  # step mass clipped beyond J
            truncated += alive * deficit + spill
            alive = alive * (1.0 - deficit) - spill
            mass, out = out, mass
        return mass, truncated


def _convolve_steps_numpy(primes, half, j_max, small_omega):
    """Portable reference implementation of the convolution loop."""
    n = 2 * half + 1
    mass = np.zeros(n)
    mass[half] = 1.0
    truncated = 0.0
    alive = 1.0
    for p in primes:
        q = 1.0 / p
        J = 1 if small_omega else _exponent_cap(p, j_max)
        if small_omega:
            kernel = np.array([q, 1.0 - 2.0 * q, q])
            deficit = 0.0
        else:
            kernel = np.zeros(2 * J + 1)
            kernel[J] = 1.0 - 2.0 * q
            a = 1.0 - q
            for j in range(1, J + 1):
                a *= q
                kernel[J + j] = a
                kernel[J - j] = a
            deficit = 2.0 * float(p) ** -(J + 1)
        full = np.convolve(mass, kernel)
        spill = float(full[:J].sum() + full[-J:].sum()) if J else 0.0
        mass = full[J : J + n] if J else full
        truncated += alive * deficit + spill
        alive = alive * (1.0 - deficit) - spill
    return mass, truncated


_convolve_steps = _convolve_steps_numba if _HAVE_NUMBA else _convolve_steps_numpy


def sum_pmf(
    w: float, z: float, variant: BpVariant | str, j_max: int = 64
) -> IntegerPMF:
    """Exact distribution of the summed steps over all primes in (w, z]."""
    variant = BpVariant(variant)
    if not 2 <= w < z:
        raise ValueError(f"need 2 <= w < z, got w={w}, z={z}")
    if z > MAX_Z:
        raise BudgetError(
            f"z={z} exceeds the prime-table budget {MAX_Z}", required=int(z)
        )
    if j_max < 1:
        raise ValueError(f"j_max must be >= 1, got {j_max}")
    primes = primes_in(w, z).astype(np.float64)
    mass, truncated = _convolve_steps(
        primes, _HALF_SUPPORT, j_max, variant is BpVariant.SMALL_OMEGA
    )
    return IntegerPMF(-_HALF_SUPPORT, mass, float(truncated)).trimmed()


def step_variance(p: float, variant: BpVariant | str) -> float:
    """Exact single-step variance: 2(p+1)/(p-1)^2 with multiplicity, 2/p
    without."""
    variant = BpVariant(variant)
    if variant is BpVariant.SMALL_OMEGA:
        return 2.0 / p
    return 2.0 * (p + 1.0) / (p - 1.0) ** 2


def sum_variance(w: float, z: float, variant: BpVariant | str) -> float:
    """Termwise variance of the summed steps (independence)."""
    p = primes_in(w, z).astype(np.float64)
    variant = BpVariant(variant)
    if variant is BpVariant.SMALL_OMEGA:
        return float(np.sum(2.0 / p))
    return float(np.sum(2.0 * (p + 1.0) / (p - 1.0) ** 2))


def gaussian_local(m: int, L: float) -> float:
    """Lattice Gaussian  exp(-m^2 / (4L)) / (2 sqrt(pi L))."""
    if L <= 0:
        raise ValueError(f"L must be positive, got {L}")
    return exp(-(m * m) / (4.0 * L)) / (2.0 * sqrt(pi * L))


def llt_deviation(
    w: float,
    z: float,
    variant: BpVariant | str,
    j_max: int = 64,
    L: float | None = None,
) -> tuple[float, float]:
    """(sup-norm deviation of the exact PMF from the lattice Gaussian, L).

    L defaults to half the exact variance of the convolved sum; pass an
    explicit L (e.g. loglog z) for figure-parity comparisons.
    """
    pmf = sum_pmf(w, z, variant, j_max)
    if L is None:
        L = pmf.variance() / 2.0
    support = pmf.support()
    gauss = np.exp(-(support.astype(np.float64) ** 2) / (4.0 * L)) / (
        2.0 * sqrt(pi * L)
    )
    return float(np.max(np.abs(pmf.mass - gauss))), float(L)


def loglog(x: float) -> float:
    """log log x, the scale parameter of every Gaussian heuristic here."""
    if x <= 1.0 or log(x) <= 0.0:
        raise ValueError(f"loglog undefined for x={x}")
    return log(log(x))
