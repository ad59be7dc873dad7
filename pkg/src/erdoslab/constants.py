"""Prime-sum constants and dyadic series with rigorous truncation tails.

The eight prime-sum constants are evaluated from a truncated prime table
together with an explicit upper bound on the omitted tail, so that
``value +/- tail_bound`` brackets every higher-truncation value of the
same kind.  The dyadic series (sum over primes of 1/(2^p - 1) and
friends) are evaluated in integer fixed point because their interesting
discrepancies live far below double-precision resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .primes import primes_up_to
from .sieve import factor

# Fixed 30-digit literals (OEIS A001620 and A013661); these are analytic
# inputs, not prime-sum data.
EULER_GAMMA = 0.577215664901532860606512090082
PI_SQUARED_OVER_6 = 1.644934066848226436472415166646


class ConstantKind(str, Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    INV_P_SQ = "INV_P_SQ"
    INV_PM1_SQ = "INV_PM1_SQ"


class SeriesKind(str, Enum):
    OMEGA_HALVES = "OMEGA_HALVES"
    ERDOS_BORWEIN = "ERDOS_BORWEIN"
    BIG_OMEGA_HALVES = "BIG_OMEGA_HALVES"


@dataclass(frozen=True)
class PrimeSumResult:
    value: float
    p_max: int
    tail_bound: float
    kind: ConstantKind


@dataclass(frozen=True)
class SeriesResult:
    value: float
    n_terms: int
    tail_bound: float
    kind: SeriesKind


def constant(kind: ConstantKind | str, p_max: int) -> PrimeSumResult:
    """Evaluate one prime-sum constant, truncated at p <= p_max.

    B1 = gamma + sum_p log(1 - 1/p) + 1/p        (Meissel-Mertens)
    B2 = B1 + sum_p 1/(p(p-1))
    B3 = B1 - pi^2/6 - sum_p 1/p^2
    B4 = B1 - pi^2/6 + sum_p (2p-1)/(p(p-1)^2)
    B5 = B3 + sum_p 1/p^2
    B6 = B4 + sum_p 1/(p-1)^2

    Tail bounds come from termwise comparison with sums over all integers
    m > p_max: each B1 term is at most 1/(2p(p-1)) in absolute value, and
    sum_{m>P} 1/(m(m-1)) = 1/P telescopes; 1/p^2-type tails are below
    1/(P-1).  The bounds are deliberate overestimates and decrease in
    p_max, so value +/- tail_bound brackets any finer truncation.
    """
    kind = ConstantKind(kind)
    if p_max < 10**3:
        raise ValueError(f"p_max must be >= 1000, got {p_max}")
    p = primes_up_to(p_max).astype(np.float64)
    P = float(p_max)

    b1 = EULER_GAMMA + float(np.sum(np.log1p(-1.0 / p) + 1.0 / p))
    tail_b1 = 0.5 / P

    if kind is ConstantKind.B1:
        return PrimeSumResult(b1, p_max, tail_b1, kind)
    if kind is ConstantKind.INV_P_SQ:
        return PrimeSumResult(float(np.sum(p**-2.0)), p_max, 1.0 / P, kind)
    if kind is ConstantKind.INV_PM1_SQ:
        return PrimeSumResult(
            float(np.sum((p - 1.0) ** -2.0)), p_max, 1.0 / (P - 1.0), kind
        )
    if kind is ConstantKind.B2:
        value = b1 + float(np.sum(1.0 / (p * (p - 1.0))))
        return PrimeSumResult(value, p_max, tail_b1 + 1.0 / P, kind)
    if kind is ConstantKind.B3:
        value = b1 - PI_SQUARED_OVER_6 - float(np.sum(p**-2.0))
        return PrimeSumResult(value, p_max, tail_b1 + 1.0 / P, kind)
    if kind is ConstantKind.B4:
        value = b1 - PI_SQUARED_OVER_6 + float(np.sum((2.0 * p - 1.0) / (p * (p - 1.0) ** 2)))
        return PrimeSumResult(value, p_max, tail_b1 + 2.0 / (P - 1.0), kind)
    if kind is ConstantKind.B5:
        b3 = constant(ConstantKind.B3, p_max)
        sq = constant(ConstantKind.INV_P_SQ, p_max)
        return PrimeSumResult(b3.value + sq.value, p_max, b3.tail_bound + sq.tail_bound, kind)
    if kind is ConstantKind.B6:
        b4 = constant(ConstantKind.B4, p_max)
        sq = constant(ConstantKind.INV_PM1_SQ, p_max)
        return PrimeSumResult(b4.value + sq.value, p_max, b4.tail_bound + sq.tail_bound, kind)
    raise ValueError(f"unknown constant kind {kind!r}")


# --- dyadic series in integer fixed point ---------------------------------

_FP_BITS = 256


def _fp_inverse_mersenne_sum(exponents) -> int:
    """sum of floor(2^BITS / (2^e - 1)) over the given exponents."""
    one = 1 << _FP_BITS
    return sum(one // ((1 << int(e)) - 1) for e in exponents)


def _prime_powers_up_to(n: int) -> list[int]:
    out = []
    for p in primes_up_to(n):
        q = int(p)
        while q <= n:
            out.append(q)
            q *= int(p)
    return sorted(out)


def series(kind: SeriesKind | str, n_terms: int) -> SeriesResult:
    """Evaluate one dyadic series, truncated at exponent n_terms.

    OMEGA_HALVES       sum over primes p <= n_terms of 1/(2^p - 1)
    ERDOS_BORWEIN      sum over n <= n_terms of 1/(2^n - 1)
    BIG_OMEGA_HALVES   sum over prime powers q <= n_terms of 1/(2^q - 1)

    Terms are accumulated as 256-bit fixed-point integers; the reported
    tail combines the geometric bound 1/(2^m - 1) <= 2^(1-m) on omitted
    exponents with the per-term flooring error.
    """
    kind = SeriesKind(kind)
    if n_terms < 50:
        raise ValueError(f"n_terms must be >= 50, got {n_terms}")
    if kind is SeriesKind.OMEGA_HALVES:
        exps = [int(p) for p in primes_up_to(n_terms)]
    elif kind is SeriesKind.ERDOS_BORWEIN:
        exps = list(range(1, n_terms + 1))
    elif kind is SeriesKind.BIG_OMEGA_HALVES:
        exps = _prime_powers_up_to(n_terms)
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    acc = _fp_inverse_mersenne_sum(exps)
    value = acc / (1 << _FP_BITS)
    tail = 2.0 ** (1 - n_terms) + len(exps) * 2.0**-_FP_BITS
    return SeriesResult(value, n_terms, tail, kind)


def check_series_identity(n: int) -> float:
    """|sum_{m<=n} omega(m)/2^m  -  sum_{p<=n} 1/(2^p - 1)|.

    Both sides are truncations of the same series rearrangement, so the
    discrepancy is only the cross tail, below (log2(n) + 2) * n * 2^-n.
    Evaluated with n + 64 bits of fixed-point precision; a float
    accumulation could not resolve the answer.
    """
    if n < 50:
        raise ValueError(f"n must be >= 50, got {n}")
    bits = n + 64
    acc_omega = sum(factor(m).omega << (bits - m) for m in range(1, n + 1))
    one = 1 << bits
    acc_prime = sum(one // ((1 << int(p)) - 1) for p in primes_up_to(n))
    return abs(acc_omega - acc_prime) / (1 << bits)


def check_tau_series_identity(n: int) -> float:
    """|sum_{m<=n} tau(m)/2^m  -  sum_{d<=n} 1/(2^d - 1)|, same scheme."""
    if n < 50:
        raise ValueError(f"n must be >= 50, got {n}")
    bits = n + 64
    acc_tau = sum(factor(m).tau << (bits - m) for m in range(1, n + 1))
    one = 1 << bits
    acc_d = sum(one // ((1 << d) - 1) for d in range(1, n + 1))
    return abs(acc_tau - acc_d) / (1 << bits)
