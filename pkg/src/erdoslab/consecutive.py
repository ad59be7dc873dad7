"""Statistics of consecutive values of the prime-factor counting functions.

All counts fold associatively over sieve windows, so every quantity here
is an exact integer count before the final division and is independent of
how the range was segmented.  The Gaussian normalizations use
B-shifted loglog scales:

    P(f(n) = f(n+1))  ~  c / (2 sqrt(pi (loglog x + B)))

with (B, c) = (B5, 1) for the distinct-prime count, (B6, 1) for the
with-multiplicity count, and (0, c_tau) for the divisor count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import pi, sqrt

import numpy as np

from .ctau import CTAU_REFERENCE, odd_part_array
from .llt import loglog
from .sieve import SEGMENT_LIMIT, iter_windows

#: Reference values of the variance-shift constants, pinned at the
#: precision they are conventionally quoted with.
B5_REFERENCE = -1.3834
B6_REFERENCE = 2.1398


class Fn(str, Enum):
    OMEGA = "OMEGA"
    BIG_OMEGA = "BIG_OMEGA"
    TAU = "TAU"


def _values(f: Fn, w) -> np.ndarray:
    if f is Fn.OMEGA:
        return w.omega.astype(np.int64)
    if f is Fn.BIG_OMEGA:
        return w.big_omega.astype(np.int64)
    return w.tau.astype(np.int64)


@dataclass(frozen=True)
class ScanRow:
    x: int
    f: Fn
    density: float
    normalized: float  # NaN marks an undefined normalization
    imputed_B: float
    B_shift: float
    c: float


@dataclass
class DiffHistogram:
    f: Fn
    x: int
    counts: dict[int, int]
    conditioning: str  # "" or "pow2_ratio"

    def total(self) -> int:
        return sum(self.counts.values())

    def mean(self) -> float:
        t = self.total()
        return sum(m * c for m, c in self.counts.items()) / t

    def variance(self) -> float:
        t = self.total()
        mu = self.mean()
        return sum((m - mu) ** 2 * c for m, c in self.counts.items()) / t


@dataclass
class _PairStats:
    """Exact integer accumulators over n <= x (pairs use f(n), f(n+1))."""

    x: int
    equal: dict[Fn, int]
    diff: dict[Fn, dict[int, int]]
    pow2_count: int
    tau_log2_diff: dict[int, int]
    sum_f: dict[Fn, int]
    sum_f2: dict[Fn, int]
    cross: dict[Fn, int]  # sum over n <= x of f(n) f(n+1)
    first: dict[Fn, int]  # f(1)
    last: dict[Fn, int]  # f(x)
    after: dict[Fn, int]  # f(x+1)


def _bincount_to_dict(values: np.ndarray, into: dict[int, int]) -> None:
    vmin = int(values.min())
    counts = np.bincount(values - vmin)
    for i in np.flatnonzero(counts):
        m = vmin + int(i)
        into[m] = into.get(m, 0) + int(counts[i])


@lru_cache(maxsize=4)
def pair_stats(x: int, segment: int | None = None) -> _PairStats:
    """One streaming pass over [1, x+1] collecting every pairwise counter."""
    if x < 10:
        raise ValueError(f"x must be >= 10, got {x}")
    if x + 1 > SEGMENT_LIMIT and segment is None:
        segment = SEGMENT_LIMIT
    fns = (Fn.OMEGA, Fn.BIG_OMEGA)
    st = _PairStats(
        x=x,
        equal={f: 0 for f in Fn},
        diff={f: {} for f in fns},
        pow2_count=0,
        tau_log2_diff={},
        sum_f={f: 0 for f in fns},
        sum_f2={f: 0 for f in fns},
        cross={f: 0 for f in fns},
        first={},
        last={},
        after={},
    )
    carry: dict[Fn, int] | None = None  # f-values at the last n of the previous window
    for w in iter_windows(1, x + 1, segment):
        vals = {f: _values(f, w) for f in Fn}
        if w.lo == 1:
            for f in Fn:
                st.first[f] = int(vals[f][0])
        if w.lo <= x <= w.hi:
            for f in Fn:
                st.last[f] = int(vals[f][x - w.lo])
        if w.lo <= x + 1 <= w.hi:
            for f in Fn:
                st.after[f] = int(vals[f][x + 1 - w.lo])
        # moment sums over n in [w.lo, min(w.hi, x)]
        mhi = min(w.hi, x) - w.lo + 1
        for f in fns:
            v = vals[f][:mhi]
            st.sum_f[f] += int(v.sum())
            st.sum_f2[f] += int(np.dot(v, v))
        # pairs (n, n+1): within-window plus the one carried across the seam
        for f in Fn:
            a, b = vals[f][:-1], vals[f][1:]
            st.equal[f] += int(np.count_nonzero(a == b))
            if carry is not None and carry[f] == vals[f][0]:
                st.equal[f] += 1
        for f in fns:
            a, b = vals[f][:-1], vals[f][1:]
            st.cross[f] += int(np.dot(a, b))
            if a.size:
                _bincount_to_dict(b - a, st.diff[f])
            if carry is not None:
                st.cross[f] += carry[f] * int(vals[f][0])
                d = int(vals[f][0]) - carry[f]
                st.diff[f][d] = st.diff[f].get(d, 0) + 1
        # divisor-ratio events via odd parts; log2 of the ratio where it
        # is a power of two is the difference of dyadic valuations
        tau = vals[Fn.TAU]
        odd = odd_part_array(tau)
        e2 = np.log2((tau & -tau).astype(np.float64)).astype(np.int64)
        ok = odd[:-1] == odd[1:]
        st.pow2_count += int(np.count_nonzero(ok))
        if np.any(ok):
            _bincount_to_dict(e2[1:][ok] - e2[:-1][ok], st.tau_log2_diff)
        if carry is not None:
            c_odd, c_e2 = carry["tau_odd"], carry["tau_e2"]
            if c_odd == int(odd[0]):
                st.pow2_count += 1
                d = int(e2[0]) - c_e2
                st.tau_log2_diff[d] = st.tau_log2_diff.get(d, 0) + 1
        carry = {f: int(vals[f][-1]) for f in Fn}
        carry["tau_odd"] = int(odd[-1])
        carry["tau_e2"] = int(e2[-1])
    return st


def equal_density(f: Fn | str, x: int, segment: int | None = None) -> float:
    """|{n <= x : f(n) = f(n+1)}| / x."""
    return pair_stats(x, segment).equal[Fn(f)] / x


def normalized_density(f: Fn | str, x: int, B_shift: float, c: float) -> float:
    """density * 2 sqrt(pi (loglog x + B_shift)) / c; NaN when the shifted
    scale is nonpositive."""
    arg = loglog(x) + B_shift
    if arg <= 0.0:
        return float("nan")
    return equal_density(f, x) * 2.0 * sqrt(pi * arg) / c


def impute_B(density: float, x: int, c: float) -> float:
    """Invert density = c / (2 sqrt(pi (loglog x + B))) for B."""
    if density <= 0.0:
        raise ValueError(f"density must be positive, got {density}")
    return c * c / (4.0 * pi * density * density) - loglog(x)


def shift_for(f: Fn | str) -> tuple[float, float]:
    """(B_shift, c) convention used for each function's normalization."""
    f = Fn(f)
    if f is Fn.OMEGA:
        return B5_REFERENCE, 1.0
    if f is Fn.BIG_OMEGA:
        return B6_REFERENCE, 1.0
    return 0.0, CTAU_REFERENCE


def diff_histogram(f: Fn | str, x: int, segment: int | None = None) -> DiffHistogram:
    """Histogram of f(n+1) - f(n) over n <= x.  For the divisor count the
    histogram is of log2(tau(n+1)/tau(n)) restricted to power-of-two
    ratios."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    f = Fn(f)
    st = pair_stats(x, segment)
    if f is Fn.TAU:
        return DiffHistogram(f, x, dict(sorted(st.tau_log2_diff.items())), "pow2_ratio")
    return DiffHistogram(f, x, dict(sorted(st.diff[f].items())), "")


@dataclass(frozen=True)
class MomentCheck:
    omega_mean_shift: float
    big_omega_mean_shift: float
    omega_var_shift: float
    big_omega_var_shift: float


def moment_check(x: int, segment: int | None = None) -> MomentCheck:
    """Empirical mean/variance of both counting functions over n <= x,
    each reduced by loglog x (the shifts approach B1, B2, B3, B4)."""
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    st = pair_stats(x, segment)
    ll = loglog(x)
    out = {}
    for f in (Fn.OMEGA, Fn.BIG_OMEGA):
        mean = st.sum_f[f] / x
        var = st.sum_f2[f] / x - mean * mean
        out[f] = (mean - ll, var - ll)
    return MomentCheck(
        out[Fn.OMEGA][0], out[Fn.BIG_OMEGA][0], out[Fn.OMEGA][1], out[Fn.BIG_OMEGA][1]
    )


def _covariance(sum_a: float, sum_b: float, sum_ab: float, n: int) -> float:
    """Population covariance from raw sums."""
    return sum_ab / n - (sum_a / n) * (sum_b / n)


def neighbor_covariance(f: Fn | str, x: int, segment: int | None = None) -> float:
    """Population covariance of (f(n), f(n+1)) over n <= x - 1."""
    f = Fn(f)
    if f is Fn.TAU:
        raise ValueError("neighbor covariance is defined for the counting functions only")
    if x < 10**3:
        raise ValueError(f"x must be >= 1000, got {x}")
    st = pair_stats(x, segment)
    # restrict the pair sums from n <= x to n <= x - 1
    sum_a = st.sum_f[f] - st.last[f]
    sum_b = st.sum_f[f] - st.first[f]
    sum_ab = st.cross[f] - st.last[f] * st.after[f]
    return _covariance(sum_a, sum_b, sum_ab, x - 1)


def x_grid(xmax: int) -> list[int]:
    """Scan grid: multiples of 10 to 1e3, of 100 to 1e4, then geometric
    steps of 10^(1/8)."""
    grid = list(range(10, min(xmax, 10**3) + 1, 10))
    if xmax > 10**3:
        grid += list(range(1100, min(xmax, 10**4) + 1, 100))
    if xmax > 10**4:
        k = 1
        while True:
            v = int(round(10 ** (4 + k / 8.0)))
            if v > xmax:
                break
            grid.append(v)
            k += 1
    if grid and grid[-1] != xmax and xmax >= 10:
        grid.append(int(xmax))
    return grid


def scan(fs, xmax: int, segment: int | None = None) -> list[ScanRow]:
    """Equal-value densities at every grid point up to xmax, streamed in a
    single pass with running counts."""
    fs = [Fn(f) for f in fs]
    grid = x_grid(xmax)
    if not grid:
        raise ValueError(f"xmax too small for the scan grid: {xmax}")
    rows: list[ScanRow] = []
    counts = {f: 0 for f in fs}
    gi = 0
    carry: dict[Fn, int] | None = None
    for w in iter_windows(1, xmax + 1, segment):
        vals = {f: _values(f, w) for f in fs}
        for f in fs:  # the seam pair (w.lo - 1, w.lo) belongs to this window
            if carry is not None and carry[f] == int(vals[f][0]):
                counts[f] += 1
        eq = {f: vals[f][:-1] == vals[f][1:] for f in fs}
        cum = {f: np.cumsum(eq[f]) for f in fs}
        while gi < len(grid) and grid[gi] <= w.hi - 1:
            x = grid[gi]
            for f in fs:
                c = counts[f] + (int(cum[f][x - w.lo]) if x >= w.lo else 0)
                rows.append(_scan_row(f, x, c))
            gi += 1
        for f in fs:
            counts[f] += int(cum[f][-1]) if eq[f].size else 0
        carry = {f: int(vals[f][-1]) for f in fs}
    return rows


def _scan_row(f: Fn, x: int, count: int) -> ScanRow:
    density = count / x
    B_shift, c = shift_for(f)
    arg = loglog(x) + B_shift
    normalized = density * 2.0 * sqrt(pi * arg) / c if arg > 0 else float("nan")
    imputed = (
        c * c / (4.0 * pi * density * density) - loglog(x) if density > 0 else float("nan")
    )
    return ScanRow(x, f, density, normalized, imputed, B_shift, c)
