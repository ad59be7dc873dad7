"""Pretentious-distance and correlation diagnostics for 1-bounded
multiplicative functions.

Built-in functions: the Liouville function, the Moebius function, the
exponential twists e(alpha * Omega(n)) and e(alpha * omega(n)), and the
completely multiplicative indicator of "no prime factor in a band".
All evaluate over sieve windows; distances and the M-functional evaluate
over prime tables, with Dirichlet characters constructed from scratch for
small moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, log, sqrt

import numpy as np

from .primes import BudgetError, primes_in, primes_up_to
from .sieve import FactorWindow, sieve_window

#: Largest modulus for which character tables may be requested.
MAX_CHARACTER_MODULUS = 100

TWO_PI = 2.0 * np.pi


class FnTag(str, Enum):
    LIOUVILLE = "LIOUVILLE"
    MOEBIUS = "MOEBIUS"
    EXP_ALPHA_BIG_OMEGA = "EXP_ALPHA_BIG_OMEGA"
    EXP_ALPHA_OMEGA = "EXP_ALPHA_OMEGA"
    SMOOTH_BAND_INDICATOR = "SMOOTH_BAND_INDICATOR"


@dataclass(frozen=True)
class MultiplicativeFn:
    """A 1-bounded multiplicative function, evaluated over FactorWindows.

    The band indicator is completely multiplicative with value 0 exactly at
    primes inside the half-open interval (band_lo, band_hi]."""

    tag: FnTag
    alpha: float = 0.0
    band_lo: float = 0.0
    band_hi: float = 0.0

    def label(self) -> str:
        if self.tag in (FnTag.EXP_ALPHA_BIG_OMEGA, FnTag.EXP_ALPHA_OMEGA):
            return f"{self.tag.value}({self.alpha})"
        if self.tag is FnTag.SMOOTH_BAND_INDICATOR:
            return f"{self.tag.value}({self.band_lo},{self.band_hi}]"
        return self.tag.value

    def values(self, w: FactorWindow) -> np.ndarray:
        """Values at every n in the window (complex for the twists)."""
        if self.tag is FnTag.LIOUVILLE:
            return 1.0 - 2.0 * (w.big_omega.astype(np.float64) % 2.0)
        if self.tag is FnTag.MOEBIUS:
            out = 1.0 - 2.0 * (w.omega.astype(np.float64) % 2.0)
            out[w.omega != w.big_omega] = 0.0
            return out
        if self.tag is FnTag.EXP_ALPHA_BIG_OMEGA:
            return np.exp(1j * TWO_PI * self.alpha * w.big_omega.astype(np.float64))
        if self.tag is FnTag.EXP_ALPHA_OMEGA:
            return np.exp(1j * TWO_PI * self.alpha * w.omega.astype(np.float64))
        out = np.ones(len(w))
        for p in primes_in(self.band_lo, min(self.band_hi, w.hi)):
            p = int(p)
            start = ((w.lo + p - 1) // p) * p
            out[start - w.lo :: p] = 0.0
        return out

    def at_primes(self, p: np.ndarray) -> np.ndarray:
        """Values at the given primes."""
        if self.tag in (FnTag.LIOUVILLE, FnTag.MOEBIUS):
            return np.full(p.shape, -1.0)
        if self.tag in (FnTag.EXP_ALPHA_BIG_OMEGA, FnTag.EXP_ALPHA_OMEGA):
            return np.full(p.shape, np.exp(1j * TWO_PI * self.alpha))
        out = np.ones(p.shape)
        out[(p > self.band_lo) & (p <= self.band_hi)] = 0.0
        return out


def liouville() -> MultiplicativeFn:
    return MultiplicativeFn(FnTag.LIOUVILLE)


def moebius() -> MultiplicativeFn:
    return MultiplicativeFn(FnTag.MOEBIUS)


def exp_alpha_big_omega(alpha: float) -> MultiplicativeFn:
    return MultiplicativeFn(FnTag.EXP_ALPHA_BIG_OMEGA, alpha=alpha)


def exp_alpha_omega(alpha: float) -> MultiplicativeFn:
    return MultiplicativeFn(FnTag.EXP_ALPHA_OMEGA, alpha=alpha)


def smooth_band_indicator(band_lo: float, band_hi: float) -> MultiplicativeFn:
    return MultiplicativeFn(FnTag.SMOOTH_BAND_INDICATOR, band_lo=band_lo, band_hi=band_hi)


def one() -> MultiplicativeFn:
    """The constant function 1 (a zero twist)."""
    return exp_alpha_big_omega(0.0)


# --- pretentious distance and the M-functional -----------------------------


def pretentious_distance(
    f: MultiplicativeFn, g: MultiplicativeFn, X: int, t: float = 0.0
) -> float:
    """D(f, g * n^it; X) = sqrt( sum_{p<=X} (1 - Re f(p) conj(g(p)) p^-it) / p )."""
    if X < 10:
        raise ValueError(f"X must be >= 10, got {X}")
    p = primes_up_to(X).astype(np.float64)
    fp = f.at_primes(p)
    gp = g.at_primes(p)
    twist = np.exp(-1j * t * np.log(p)) if t != 0.0 else 1.0
    terms = (1.0 - np.real(fp * np.conj(gp) * twist)) / p
    return sqrt(max(float(np.sum(terms)), 0.0))


def _t_grid(X: int, size: int) -> np.ndarray:
    """Symmetric logarithmic grid on [-X, X] including 0.

    With m = (size - 1) // 2 points per side, grids whose interval counts
    m - 1 divide each other are nested, so the minimum over the grid is
    monotone along such refinements (e.g. sizes 17 -> 31 -> 59)."""
    m = max((size - 1) // 2, 1)
    t_min = 1.0 / log(X)
    pos = np.exp(np.linspace(log(t_min), log(float(X)), m))
    return np.concatenate([-pos[::-1], [0.0], pos])


def dirichlet_characters(q: int) -> list[np.ndarray]:
    """All phi(q) Dirichlet characters mod q as length-q complex arrays
    (zero off the units), built from the unit group's cyclic decomposition."""
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    if q > MAX_CHARACTER_MODULUS:
        raise BudgetError(
            f"character tables limited to moduli <= {MAX_CHARACTER_MODULUS}", required=q
        )
    if q == 1:
        return [np.ones(1, dtype=complex)]
    gens: list[tuple[int, int]] = []  # (generator mod q, order)
    for pk, p in _prime_power_split(q):
        if p == 2:
            if pk == 4:
                gens.append((_crt_lift(3, pk, q), 2))
            elif pk >= 8:
                gens.append((_crt_lift(pk - 1, pk, q), 2))
                gens.append((_crt_lift(3, pk, q), pk // 4))
        else:
            phi = pk - pk // p
            gens.append((_crt_lift(_primitive_root(pk, p), pk, q), phi))
    # discrete logs for every unit by direct enumeration
    orders = [d for _, d in gens]
    dlog: dict[int, tuple[int, ...]] = {}
    for expo in np.ndindex(*orders) if gens else [()]:
        v = 1
        for (g, _), e in zip(gens, expo):
            v = v * pow(g, int(e), q) % q
        dlog[v] = tuple(int(e) for e in expo)
    out = []
    for ks in np.ndindex(*orders) if gens else [()]:
        chi = np.zeros(q, dtype=complex)
        for a, expo in dlog.items():
            phase = sum(int(k) * e / d for k, e, d in zip(ks, expo, orders))
            chi[a] = np.exp(1j * TWO_PI * phase)
        out.append(chi)
    return out


def _prime_power_split(q: int) -> list[tuple[int, int]]:
    out = []
    m = q
    d = 2
    while d * d <= m:
        if m % d == 0:
            pk = 1
            while m % d == 0:
                pk *= d
                m //= d
            out.append((pk, d))
        d += 1
    if m > 1:
        out.append((m, m))
    return out


def _primitive_root(pk: int, p: int) -> int:
    phi = pk - pk // p
    fac = {f for _, f in _prime_power_split(phi)}
    for g in range(2, pk):
        if gcd(g, pk) != 1:
            continue
        if all(pow(g, phi // r, pk) != 1 for r in fac):
            return g
    raise ArithmeticError(f"no primitive root found mod {pk}")


def _crt_lift(a: int, pk: int, q: int) -> int:
    """The unit mod q that is a mod pk and 1 mod q/pk."""
    m = q // pk
    if m == 1:
        return a % q
    inv = pow(pk, -1, m)
    return (a + pk * ((1 - a) * inv % m)) % q


def m_measure(
    g: MultiplicativeFn,
    X: int,
    t_grid_size: int,
    Q: int,
    with_error_cap: bool = False,
):
    """Minimum of the squared pretentious distance from g to chi(n) n^it over
    a logarithmic t-grid in [-X, X] and all Dirichlet characters mod q <= Q.

    The continuum infimum is approximated on the grid; the reported error
    cap is max-gap * sum_{p<=X} log(p)/p, a Lipschitz bound in t.
    """
    if X < 10:
        raise ValueError(f"X must be >= 10, got {X}")
    if Q < 1:
        raise ValueError(f"Q must be >= 1, got {Q}")
    pidx = primes_up_to(X)
    p = pidx.astype(np.float64)
    gp = g.at_primes(p).astype(complex)
    logs = np.log(p)
    inv_p = 1.0 / p
    ts = _t_grid(X, t_grid_size)
    best = np.inf
    for q in range(1, Q + 1):
        residues = (pidx % q).astype(np.int64)
        for chi in dirichlet_characters(q):
            chp = np.conj(chi[residues])
            base = gp * chp
            for t in ts:
                tw = np.exp(-1j * t * logs) if t != 0.0 else 1.0
                val = float(np.sum((1.0 - np.real(base * tw)) * inv_p))
                if val < best:
                    best = val
    if with_error_cap:
        gaps = np.diff(ts)
        cap = float(np.max(gaps)) * float(np.sum(logs * inv_p))
        return best, cap
    return best


# --- finite correlation averages -------------------------------------------


@dataclass(frozen=True)
class CorrelationQuery:
    N: int
    W: int = 1
    b: int = 0
    h1: int = 0
    h2: int = 1
    delta_N: float = 0.0

    def __post_init__(self):
        if self.N < 10**3:
            raise ValueError(f"N must be >= 1000, got {self.N}")
        if self.W < 1:
            raise ValueError(f"W must be >= 1, got {self.W}")
        if self.h1 == self.h2:
            raise ValueError("shifts h1 and h2 must differ")


def two_point_correlation(
    g1: MultiplicativeFn, g2: MultiplicativeFn, q: CorrelationQuery
) -> complex:
    """(W/N) sum_{N < n <= 2N, n = b mod W} (g1(n+h1) - delta_N) g2(n+h2)."""
    lo = min(q.N + 1 + q.h1, q.N + 1 + q.h2, q.N + 1)
    hi = max(2 * q.N + q.h1, 2 * q.N + q.h2, 2 * q.N)
    if lo < 1:
        raise ValueError("window reaches below 1; shifts too negative for N")
    w = sieve_window(lo, hi)
    v1 = g1.values(w)
    v2 = g2.values(w)
    n0 = q.N + 1 + (q.b - (q.N + 1)) % q.W  # first admissible n
    n = np.arange(n0, 2 * q.N + 1, q.W, dtype=np.int64)
    a = v1[n + q.h1 - lo] - q.delta_N
    b = v2[n + q.h2 - lo]
    return complex(q.W / q.N * np.sum(a * b))


def equidist_defect(
    g1: MultiplicativeFn, N: int, delta_N: float, q_max: int
) -> float:
    """max over q <= q_max and all residues a (primitive or not) of
    | sum_{N<n<=2N, n=a mod q} g1(n) - (N/q) delta_N | / N."""
    if N < 10**3:
        raise ValueError(f"N must be >= 1000, got {N}")
    if q_max < 1:
        raise ValueError(f"q_max must be >= 1, got {q_max}")
    w = sieve_window(N + 1, 2 * N)
    v = g1.values(w)
    worst = 0.0
    for q in range(1, q_max + 1):
        for a in range(q):
            n0 = N + 1 + (a - (N + 1)) % q
            s = complex(np.sum(v[n0 - (N + 1) :: q]))
            worst = max(worst, abs(s - (N / q) * delta_N) / N)
    return worst
