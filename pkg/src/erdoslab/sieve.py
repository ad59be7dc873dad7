"""Segmented multiplicative-function sieve.

One smallest-prime-peeling pass over a window [lo, hi] yields, for every
integer in the window, the number of distinct prime factors, the number of
prime factors with multiplicity, the divisor count, and the largest prime
factor.  A trial-division factorizer doubles as the ground-truth oracle
for tests.

Conventions for n = 1: zero prime factors, divisor count 1, largest prime
factor 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .primes import BudgetError, primes_up_to

#: Hard cap on a single window's length; longer ranges must be streamed.
SEGMENT_LIMIT = 1 << 24


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization n = prod p^e with primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def nu(self, p: int) -> int:
        """Exponent of the prime p in n (0 if p does not divide n)."""
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def tau(self) -> int:
        t = 1
        for _, e in self.factors:
            t *= e + 1
        return t

    @property
    def lpf(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass
class FactorWindow:
    """Per-integer factor statistics over a contiguous range [lo, hi].

    Arrays are indexed by n - lo.  omega/big_omega are 8-bit (the counts
    stay below 64 for any 64-bit n), tau is 32-bit, lpf is int64.
    """

    lo: int
    hi: int
    omega: np.ndarray
    big_omega: np.ndarray
    tau: np.ndarray
    lpf: np.ndarray

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def index(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"n={n} outside window [{self.lo}, {self.hi}]")
        return n - self.lo


def factor(n: int) -> Factorization:
    """Factor n >= 1 by trial division.  Slow on purpose: this is the oracle."""
    if n < 1:
        raise ValueError(f"factor requires n >= 1, got {n}")
    m = n
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def sieve_window(lo: int, hi: int) -> FactorWindow:
    """Sieve factor statistics for every n in [lo, hi].

    Peels each prime p <= sqrt(hi) off the running cofactors; whatever
    remains above 1 afterwards is a single prime > sqrt(hi) and hence the
    largest prime factor.
    """
    lo, hi = int(lo), int(hi)
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid window [{lo}, {hi}]")
    size = hi - lo + 1
    if size > SEGMENT_LIMIT:
        raise BudgetError(
            f"window length {size} exceeds segment budget {SEGMENT_LIMIT}",
            required=size,
        )
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    omega = np.zeros(size, dtype=np.uint8)
    big_omega = np.zeros(size, dtype=np.uint8)
    tau = np.ones(size, dtype=np.uint32)
    lpf = np.ones(size, dtype=np.int64)
    for p in primes_up_to(isqrt(hi)):
        p = int(p)
        start = ((lo + p - 1) // p) * p
        idx = np.arange(start - lo, size, p)
        if idx.size == 0:
            continue
        sub = rem[idx] // p
        e = np.ones(idx.size, dtype=np.uint8)
        live = np.flatnonzero(sub % p == 0)
        while live.size:
            sub[live] //= p
            e[live] += 1
            live = live[sub[live] % p == 0]
        omega[idx] += 1
        big_omega[idx] += e
        tau[idx] *= e.astype(np.uint32) + 1
        lpf[idx] = p
        rem[idx] = sub
    left = rem > 1
    omega[left] += 1
    big_omega[left] += 1
    tau[left] *= 2
    lpf[left] = rem[left]
    return FactorWindow(lo, hi, omega, big_omega, tau, lpf)


@lru_cache(maxsize=2)
def cached_window(lo: int, hi: int) -> FactorWindow:
    """Memoized sieve_window; the big scan ranges get reused heavily."""
    return sieve_window(lo, hi)


def iter_windows(lo: int, hi: int, segment: int | None = None):
    """Yield consecutive FactorWindows covering [lo, hi] without overlap."""
    segment = SEGMENT_LIMIT if segment is None else int(segment)
    if segment < 1:
        raise ValueError("segment must be positive")
    a = int(lo)
    while a <= hi:
        b = min(a + segment - 1, hi)
        yield sieve_window(a, b)
        a = b + 1


def is_smooth(w: FactorWindow, n: int, y: float) -> bool:
    """True iff every prime factor of n is <= y (n = 1 is smooth for all y)."""
    if y < 2:
        raise ValueError(f"smoothness bound must be >= 2, got {y}")
    return bool(w.lpf[w.index(n)] <= y)
