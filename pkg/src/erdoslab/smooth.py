"""Smooth-number densities against the Dickman-de Bruijn function.

rho is defined by rho(u) = 1 on [0, 1] together with the delay identity
rho(u) = (1/u) * integral of rho over [u-1, u]; it is advanced on a
uniform grid by implicit composite trapezoid quadrature (error O(step^2),
with the closed form rho(u) = 1 - log(u) on [1, 2] as the test anchor).

Empirical densities count integers whose largest prime factor is at most
x^(1/u); the threshold is resolved in 50-digit arithmetic so that ties
(largest prime factor exactly at the threshold) are counted as smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .sieve import cached_window

_MAX_U = 200.0


@dataclass(frozen=True)
class DickmanTable:
    step: float  # exactly 1/steps_per_unit
    values: np.ndarray  # rho at 0, step, 2*step, ...

    @property
    def u_max(self) -> float:
        return (self.values.size - 1) * self.step


_tables: dict[int, DickmanTable] = {}


def _build_table(m: int, u_max: float) -> DickmanTable:
    """Advance rho to u_max on the grid i/m by implicit trapezoid steps.

    The window sum behind each step is recomputed fresh (no running-sum
    updates): incremental subtraction noise would swamp the tiny rho
    values reached near large u.
    """
    n = int(round(u_max * m))
    rho = np.ones(n + 1)
    h = 1.0 / m
    for i in range(m + 1, n + 1):
        window = rho[i - m : i]
        s = 0.5 * window[0] + float(window[1:].sum())
        # solve rho_i = (m / i) * h * (s + rho_i / 2)
        rho[i] = s / (i - 0.5)
    return DickmanTable(h, rho)


def dickman_rho(u: float, step: float = 1e-3) -> float:
    """rho(u) by grid interpolation; step <= 1e-3 is enforced by default
    callers, smaller steps refine quadratically."""
    if u < 0:
        raise ValueError(f"u must be >= 0, got {u}")
    if u > _MAX_U:
        raise ValueError(f"u={u} beyond supported table range {_MAX_U}")
    if u <= 1.0:
        return 1.0
    m = max(int(round(1.0 / step)), 10)
    table = _tables.get(m)
    if table is None or table.u_max < u:
        table = _build_table(m, max(float(np.ceil(u)) + 1.0, 8.0))
        _tables[m] = table
    pos = u * m
    i = int(pos)
    if i >= table.values.size - 1:
        return float(table.values[-1])
    frac = pos - i
    return float((1.0 - frac) * table.values[i] + frac * table.values[i + 1])


def smooth_threshold(x: int, u: float) -> int:
    """Largest integer y with y <= x^(1/u), resolved at 50 digits so that
    boundary ties count as smooth."""
    if u <= 0:
        raise ValueError(f"u must be positive, got {u}")
    with mp.workdps(50):
        y = mp.exp(mp.log(mp.mpf(x)) / mp.mpf(u))
        return int(mp.floor(y + mp.mpf(10) ** -30))


def smooth_density(x: int, u: float) -> float:
    """Fraction of n <= x whose prime factors are all <= x^(1/u)."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    if not 1.0 <= u <= np.log2(x):
        raise ValueError(f"u must lie in [1, log2 x], got {u}")
    w = cached_window(1, x + 1)
    y = smooth_threshold(x, u)
    return int(np.count_nonzero(w.lpf[:x] <= y)) / x


def pair_density(x: int, u: float, v: float) -> float:
    """Fraction of n <= x with n being x^(1/u)-smooth and n+1 being
    x^(1/v)-smooth; the product rho(u) rho(v) is the reference value."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    for t in (u, v):
        if not 1.0 <= t <= np.log2(x):
            raise ValueError(f"u, v must lie in [1, log2 x], got {t}")
    w = cached_window(1, x + 1)
    yu = smooth_threshold(x, u)
    yv = smooth_threshold(x, v)
    ok = (w.lpf[:x] <= yu) & (w.lpf[1 : x + 1] <= yv)
    return int(np.count_nonzero(ok)) / x
