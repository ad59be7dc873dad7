"""The divisor-ratio constant c_tau.

c_tau is the probability, under an independent prime-indexed pair model,
that the simulated divisor-count ratio tau(n+1)/tau(n) is a power of two.
For each prime p the model draws a pair (a0, a1) supported on
{(0,0)} u {(0,j)} u {(j,0)} with

    P((0,0)) = 1 - 2/p,      P((0,j)) = P((j,0)) = (1 - 1/p) / p^j,

independently in p.  The ratio prod(1 + a1) / prod(1 + a0) is a power of
two exactly when the odd parts of the two integer products agree, and
that is how the event is evaluated: never through floating-point logs.

Alongside the Monte Carlo estimator this module provides the two exact
lower-bound products (both values powers of two; both values three times
powers of two), the empirical density from sieve data, and the
nu_p-matching upper-bound densities.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from .primes import primes_up_to
from .sieve import cached_window

#: Reference empirical value of c_tau at desk scale, used as a plotting and
#: normalization anchor.
CTAU_REFERENCE = 0.4888

_ALLOWED_NU_SETS = {(3,), (3, 5), (3, 5, 7)}


@dataclass(frozen=True)
class PairSample:
    p: int
    a0: int
    a1: int

    def __post_init__(self):
        if self.a0 != 0 and self.a1 != 0:
            raise ValueError("at most one of a0, a1 may be nonzero")


@dataclass(frozen=True)
class CtauEstimate:
    point: float
    mc_stderr: float
    tail_bound: float
    p_max: int
    samples: int
    seed: int


def odd_part(n: int) -> int:
    """n divided by its largest power-of-two divisor."""
    if n < 1:
        raise ValueError(f"odd_part requires n >= 1, got {n}")
    return n // (n & -n)


def odd_part_array(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64, copy=False)
    return a // (a & -a)


def is_pow2_ratio(a: int, b: int) -> bool:
    """True iff a/b is 2^k for some integer k, i.e. odd parts agree."""
    return odd_part(a) == odd_part(b)


def _j_cap(p: int) -> int:
    """Largest exponent kept by the sampler: (1 - 1/p) / p^j >= 2^-64.

    The residual inverse-CDF mass beyond the cap lands on the cap itself,
    biasing the estimate by far less than one Monte Carlo standard error.
    """
    return max(1, int((64 * log(2) + log(1.0 - 1.0 / p)) / log(p)))


def _decode_hits(p: int, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse-CDF decode of uniform draws at prime p.

    Returns (hit_indices, side_is_a1, j).  A hit is any draw that left the
    (0,0) branch; side True means the pair is (0, j), False means (j, 0).
    """
    thr = 1.0 - 2.0 / p
    hits = np.flatnonzero(u >= thr)
    if hits.size == 0:
        return hits, hits.astype(bool), hits
    z = (u[hits] - thr) * p  # uniform in [0, 2)
    side = z >= 1.0
    zf = np.where(side, z - 1.0, z)
    t = np.clip(1.0 - zf, 2.0**-64, 1.0)
    j = np.floor(-np.log(t) / log(p)).astype(np.int64) + 1
    return hits, side, np.clip(j, 1, _j_cap(p))


def sample_pair(p: int, rng: np.random.Generator) -> PairSample:
    """Draw one (a0, a1) pair at prime p from a single uniform."""
    if p < 2:
        raise ValueError(f"p must be a prime >= 2, got {p}")
    u = rng.random(1)
    hits, side, j = _decode_hits(p, u)
    if hits.size == 0:
        return PairSample(p, 0, 0)
    if side[0]:
        return PairSample(p, 0, int(j[0]))
    return PairSample(p, int(j[0]), 0)


# odd parts of 1 + j for the j values the sampler can produce
_ODD_1PJ = np.array([odd_part(1 + j) for j in range(0, 200)], dtype=np.int64)


def _mc_shard(primes: np.ndarray, n: int, rng: np.random.Generator) -> int:
    """Count pow2-ratio successes over n samples, drawing every prime once
    per sample.  Products of the per-prime factors 1 + a are tracked through
    their odd parts only (odd parts are completely multiplicative), as exact
    Python integers, so they can never wrap.
    """
    num = [1] * n
    den = [1] * n
    for p in primes:
        p = int(p)
        hits, side, j = _decode_hits(p, rng.random(n))
        if hits.size == 0:
            continue
        odd = _ODD_1PJ[j]
        keep = odd > 1
        if not np.any(keep):
            continue
        for idx, s, f in zip(hits[keep], side[keep], odd[keep]):
            if s:
                num[idx] *= int(f)
            else:
                den[idx] *= int(f)
    return sum(1 for a, b in zip(num, den) if a == b)


_SHARD_SIZE = 1 << 17  # fixed so results never depend on the thread count


def ctau_monte_carlo(
    p_max: int, samples: int, seed: int, threads: int = 1
) -> CtauEstimate:
    """Monte Carlo estimate of c_tau with the prime model truncated at p_max.

    Primes above p_max contribute a nonzero ratio with probability at most
    sum_{p > p_max} 2/p^2 <= 2/(p_max - 1), which is the reported
    tail_bound.  Work is split into fixed-size shards with seeds derived
    from the root seed, so the result depends only on (p_max, samples,
    seed) and never on the execution schedule.
    """
    if p_max < 10**3:
        raise ValueError(f"p_max must be >= 1000, got {p_max}")
    if samples < 10**4:
        raise ValueError(f"samples must be >= 10000, got {samples}")
    primes = primes_up_to(p_max)
    sizes = []
    left = int(samples)
    while left > 0:
        sizes.append(min(_SHARD_SIZE, left))
        left -= sizes[-1]
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(
                pool.map(
                    lambda args: _mc_shard(primes, args[0], np.random.default_rng(args[1])),
                    zip(sizes, streams),
                )
            )
    else:
        counts = [
            _mc_shard(primes, size, np.random.default_rng(stream))
            for size, stream in zip(sizes, streams)
        ]
    point = sum(counts) / samples
    stderr = sqrt(max(point * (1.0 - point), 0.0) / samples)
    return CtauEstimate(point, stderr, 2.0 / (p_max - 1.0), p_max, samples, seed)


# --- exact lower bounds ----------------------------------------------------


def _pow2_factor(p: np.ndarray) -> np.ndarray:
    """Per-prime probability that both model values 1 + a0, 1 + a1 are
    powers of two: 1 - 2/p^2 + sum_{j>=2} 2 (p^-(2^j - 1) - p^-(2^j)).
    """
    f = 1.0 - 2.0 * p**-2.0
    for jj in range(2, 9):
        e1, e2 = float(2**jj - 1), float(2**jj)
        with np.errstate(over="ignore"):
            t = 2.0 * (p**-e1 - p**-e2)
        t[~np.isfinite(t)] = 0.0
        if not np.any(t >= 1e-30):
            break
        f += t
    return f


def _three_pow2_weight(p: np.ndarray) -> np.ndarray:
    """Per-prime probability mass for 1 + a = 3 * 2^j (j >= 0) on one side:
    sum_{j>=0} (p^-(3*2^j - 1) - p^-(3*2^j)).
    """
    g = np.zeros_like(p)
    for jj in range(0, 8):
        e1, e2 = float(3 * 2**jj - 1), float(3 * 2**jj)
        with np.errstate(over="ignore"):
            t = p**-e1 - p**-e2
        t[~np.isfinite(t)] = 0.0
        if not np.any(t >= 1e-30):
            break
        g += t
    return g


@dataclass(frozen=True)
class CtauBound:
    value: float
    p_max: int
    tail_bound: float
    kind: str


def ctau_lower_c1(p_max: int) -> CtauBound:
    """Probability that both model divisor counts are powers of two.

    Each omitted factor lies in [1 - 2/p^2, 1], so the truncated product
    overestimates the limit by at most a factor 1 + 2/(p_max - 1); the
    tail_bound reflects that.
    """
    if p_max < 10**3:
        raise ValueError(f"p_max must be >= 1000, got {p_max}")
    p = primes_up_to(p_max).astype(np.float64)
    value = float(np.prod(_pow2_factor(p)))
    tail = value * 2.0 / (p_max - 1.0)
    return CtauBound(value, int(p_max), tail, "lower_c1")


def ctau_lower_c3(p_max: int) -> CtauBound:
    """Probability that both model divisor counts are three times powers of
    two: the pow2 product times the symmetric double sum over ordered pairs
    of distinct primes carrying the odd factor 3.
    """
    if p_max < 10**3:
        raise ValueError(f"p_max must be >= 1000, got {p_max}")
    p = primes_up_to(p_max).astype(np.float64)
    f = _pow2_factor(p)
    h = _three_pow2_weight(p) / f
    s = float(np.sum(h))
    pair_sum = s * s - float(np.sum(h * h))
    c1 = ctau_lower_c1(p_max)
    value = c1.value * pair_sum
    # extending p_max grows s by < 1.5/p_max and shrinks the prefactor by
    # < 2/p_max relative; both effects bounded below.
    tail = c1.value * (2.0 * s + 1.0) * 1.5 / p_max + value * 2.0 / (p_max - 1.0)
    return CtauBound(value, int(p_max), tail, "lower_c3")


# --- empirical densities from sieve data -----------------------------------


def pow2_ratio_count(x: int) -> int:
    """|{n <= x : tau(n+1)/tau(n) is a power of two}| via odd-part equality."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    w = cached_window(1, x + 1)
    odd = odd_part_array(w.tau)
    return int(np.count_nonzero(odd[:-1] == odd[1:]))


def ctau_empirical(x: int) -> float:
    """Fraction of n <= x whose divisor-count ratio is a power of two."""
    return pow2_ratio_count(x) / x


def _nu_in_tau(tau: np.ndarray, p: int) -> np.ndarray:
    """Exponent of the prime p in each divisor count."""
    t = tau.astype(np.int64, copy=True)
    e = np.zeros(t.shape, dtype=np.int64)
    live = np.flatnonzero(t % p == 0)
    while live.size:
        t[live] //= p
        e[live] += 1
        live = live[t[live] % p == 0]
    return e


def nu_match_upper(x: int, primes: tuple[int, ...]) -> float:
    """Fraction of n <= x with nu_p(tau(n)) = nu_p(tau(n+1)) for all p in
    the set; a superset of the pow2-ratio event, hence an upper bound."""
    ps = tuple(sorted(int(p) for p in primes))
    if ps not in _ALLOWED_NU_SETS:
        raise ValueError(f"prime set must be one of {sorted(_ALLOWED_NU_SETS)}, got {ps}")
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    w = cached_window(1, x + 1)
    mask = np.ones(x, dtype=bool)
    for p in ps:
        e = _nu_in_tau(w.tau, p)
        mask &= e[:-1] == e[1:]
    return int(np.count_nonzero(mask)) / x
