"""Shared prime tables.

A single growing Eratosthenes table is cached process-wide; callers get
read-only slices, so repeated requests are cheap and allocation-free.
"""

from __future__ import annotations

import numpy as np

_table: np.ndarray | None = None
_limit: int = 0

#: Largest admissible prime-table bound (memory budget: bool mask of this size).
PRIME_TABLE_LIMIT = 2 * 10**8


class BudgetError(ValueError):
    """A request exceeds a configured memory budget.

    ``required`` carries the budget the request would need, so callers can
    report it.
    """

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, ascending, as a read-only int64 array."""
    global _table, _limit
    n = int(n)
    if n > PRIME_TABLE_LIMIT:
        raise BudgetError(
            f"prime table up to {n} exceeds limit {PRIME_TABLE_LIMIT}", required=n
        )
    if n < 2:
        return np.empty(0, dtype=np.int64)
    if _table is None or n > _limit:
        grown = max(n, min(2 * _limit, PRIME_TABLE_LIMIT), 1 << 16)
        mask = np.ones(grown + 1, dtype=bool)
        mask[:2] = False
        for p in range(2, int(grown**0.5) + 1):
            if mask[p]:
                mask[p * p :: p] = False
        _table = np.flatnonzero(mask).astype(np.int64)
        _table.flags.writeable = False
        _limit = grown
    cut = int(np.searchsorted(_table, n, side="right"))
    return _table[:cut]


def primes_in(lo_exclusive: float, hi_inclusive: float) -> np.ndarray:
    """Primes p with lo < p <= hi, ascending (read-only view)."""
    hi = int(np.floor(hi_inclusive))
    table = primes_up_to(hi)
    start = int(np.searchsorted(table, lo_exclusive, side="right"))
    return table[start:]
