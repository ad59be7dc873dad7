"""Barrier-type scans over prefix maxima of factor counts.

n is a barrier for the distinct-prime count when omega(n - k) <= k for
every 1 <= k <= n - 1 (k = n is excluded: it would need a value at 0).
Writing m = n - k turns the condition into n >= m + omega(m) for all
m < n, so a single ascending pass with a running maximum finds every
barrier in linear time.  The divisor-count variant asks for
tau(n - k) <= k + 2 with n > 24, i.e. n >= m + tau(m) - 2.

Quadratic brute-force oracles back every scanner in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .sieve import factor, iter_windows, sieve_window


class BarrierKind(str, Enum):
    OMEGA_BARRIER = "OMEGA_BARRIER"
    TAU_K_PLUS_2 = "TAU_K_PLUS_2"


@dataclass(frozen=True)
class BarrierReport:
    x: int
    barriers: tuple[int, ...]
    definition: BarrierKind


def _prefix_scan(x: int, score_of, start: int, segment: int | None) -> list[int]:
    """All n in [start, x] with n >= max_{m<n} (m + score(m))."""
    out: list[int] = []
    running = -(1 << 62)
    for w in iter_windows(1, x, segment):
        n = np.arange(w.lo, w.hi + 1, dtype=np.int64)
        score = n + score_of(w)
        prev = np.empty(n.size, dtype=np.int64)
        prev[0] = running
        if n.size > 1:
            np.maximum.accumulate(score[:-1], out=prev[1:])
            np.maximum(prev[1:], running, out=prev[1:])
        hits = n[(n >= prev) & (n >= start)]
        out.extend(int(v) for v in hits)
        running = max(running, int(score.max()))
    return out


def omega_barriers(x: int, segment: int | None = None) -> BarrierReport:
    """Barriers for the distinct-prime count up to x (n >= 2; n = 1 is
    vacuous and excluded)."""
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    hits = _prefix_scan(x, lambda w: w.omega.astype(np.int64), 2, segment)
    return BarrierReport(x, tuple(hits), BarrierKind.OMEGA_BARRIER)


def omega_barriers_bruteforce(x: int) -> BarrierReport:
    """Quadratic oracle for omega_barriers."""
    om = [0] * (x + 1)
    for n in range(1, x + 1):
        om[n] = factor(n).omega
    hits = [
        n
        for n in range(2, x + 1)
        if all(om[n - k] <= k for k in range(1, n))
    ]
    return BarrierReport(x, tuple(hits), BarrierKind.OMEGA_BARRIER)


def tau_k2_holds(n: int) -> bool:
    """Direct check of tau(n - k) <= k + 2 for all 1 <= k <= n - 1."""
    return all(factor(n - k).tau <= k + 2 for k in range(1, n))


def tau_k2_scan(x: int, segment: int | None = None) -> BarrierReport:
    """All n with 24 < n <= x and tau(n - k) <= k + 2 for 1 <= k <= n - 1.
    Expected empty at any feasible x; a nonempty report is a discovery."""
    if x < 25:
        raise ValueError(f"x must be >= 25, got {x}")
    hits = _prefix_scan(x, lambda w: w.tau.astype(np.int64) - 2, 25, segment)
    return BarrierReport(x, tuple(hits), BarrierKind.TAU_K_PLUS_2)


def tau_k2_scan_bruteforce(x: int) -> BarrierReport:
    """Quadratic oracle for tau_k2_scan."""
    tv = [0] * (x + 1)
    for n in range(1, x + 1):
        tv[n] = factor(n).tau
    hits = [
        n
        for n in range(25, x + 1)
        if all(tv[n - k] <= k + 2 for k in range(1, n))
    ]
    return BarrierReport(x, tuple(hits), BarrierKind.TAU_K_PLUS_2)


def linear_profile(x: int, K: int) -> tuple[float, int]:
    """Minimize over n <= x the quantity max_{1<=k<=K} Omega(n+k)/k.

    Returns (best value, witness n)."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    w = sieve_window(1, x + K)
    bo = w.big_omega.astype(np.float64)
    best = np.full(x, -np.inf)
    for k in range(1, K + 1):
        np.maximum(best, bo[k : k + x] / k, out=best)
    i = int(np.argmin(best))
    return float(best[i]), i + 1


def linear_profile_bruteforce(x: int, K: int) -> tuple[float, int]:
    """Quadratic oracle for linear_profile (trial division throughout)."""
    best = float("inf")
    arg = 1
    for n in range(1, x + 1):
        q = max(factor(n + k).big_omega / k for k in range(1, K + 1))
        if q < best:
            best = q
            arg = n
    return best, arg
