"""Odd Durfee symbols, their odd ranks, and the counts N0(m, k, n).

An odd Durfee symbol of n is a pair of rows of odd parts, each part at most
2D+1, together with a subscript D >= 0, such that the parts plus
2D^2 + 2D + 1 sum to n.  Its odd rank is (#top parts) - (#bottom parts).

Counting goes through a knapsack over odd part sizes with the rank carried
as an extra dimension (reduced modulo k when only residues are needed).
This module never touches modular functions, so it is the ground truth the
rest of the package is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetError
from .lambert import LambertSpec, lambert_expand
from .products import pochhammer_expand
from .series import QSeries

__all__ = [
    "MAX_ORACLE_N",
    "OddDurfeeCount",
    "iter_symbols",
    "enumerate_ranks",
    "n0",
    "rank_diff_series",
    "cui_gf",
    "cui_single_probe",
]

MAX_ORACLE_N = 400

_TABLES: dict[int, list[list[int]]] = {}


def _build_table(n_max: int, width: int) -> list[list[int]]:
    # rank r is stored at index r % width
    f = [[0] * width for _ in range(n_max + 1)]
    f[0][0] = 1
    out = [[0] * width for _ in range(n_max + 1)]
    D = 0
    while 2 * D * D + 2 * D + 1 <= n_max:
        base = 2 * D * D + 2 * D + 1
        part = 2 * D + 1
        room = n_max - base
        for w in range(part, room + 1):
            src, dst = f[w - part], f[w]
            f[w] = [dst[x] + src[x - 1] for x in range(width)]
        for w in range(part, room + 1):
            src, dst = f[w - part], f[w]
            f[w] = [dst[x] + src[(x + 1) % width] for x in range(width)]
        for w in range(room + 1):
            row, src = out[w + base], f[w]
            for x in range(width):
                row[x] += src[x]
        D += 1
    return out


def _table(n_max: int, modulus: int | None) -> list[list[int]]:
    """Rows indexed by n; columns by rank mod ``modulus`` (exact ranks if None)."""
    key = modulus or 0
    cached = _TABLES.get(key)
    if cached is not None and len(cached) > n_max:
        if modulus or len(cached[0]) >= 2 * n_max + 1:
            return cached
    width = modulus if modulus else 2 * n_max + 1
    table = _build_table(n_max, width)
    _TABLES[key] = table
    return table


def _check_budget(n: int, max_n: int) -> None:
    if n > max_n:
        raise BudgetError(f"oracle argument {n} exceeds the budget {max_n}")


@dataclass(frozen=True)
class OddDurfeeCount:
    """Histogram of odd ranks over all odd Durfee symbols of ``n``."""

    n: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def is_symmetric(self) -> bool:
        return all(self.counts.get(-r) == c for r, c in self.counts.items())


def iter_symbols(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Literal enumeration of odd Durfee symbols of ``n`` as ``(top, bottom, D)``.

    Exponential; meant for cross-checking the counting tables at small ``n``.
    """

    def rows(total: int, largest: int):
        if total == 0:
            yield ()
            return
        for p in range(min(largest, total), 0, -1):
            if p % 2:
                for rest in rows(total - p, p):
                    yield (p,) + rest

    D = 0
    while 2 * D * D + 2 * D + 1 <= n:
        room = n - (2 * D * D + 2 * D + 1)
        for s in range(room + 1):
            for top in rows(s, 2 * D + 1):
                for bottom in rows(room - s, 2 * D + 1):
                    yield top, bottom, D
        D += 1


def enumerate_ranks(n: int, max_n: int = MAX_ORACLE_N) -> OddDurfeeCount:
    if n <= 0:
        raise ValueError(f"odd Durfee symbols need n >= 1, got {n}")
    _check_budget(n, max_n)
    row = _table(n, None)[n]
    width = len(row)
    counts = {}
    for x, c in enumerate(row):
        if c:
            r = x if x <= width // 2 else x - width
            counts[r] = c
    return OddDurfeeCount(n, dict(sorted(counts.items())))


def n0(m: int, k: int, n: int, max_n: int = MAX_ORACLE_N) -> int:
    """Number of odd Durfee symbols of ``n`` with odd rank congruent to ``m`` mod ``k``."""
    if k < 1:
        raise ValueError("modulus must be positive")
    if n <= 0:
        raise ValueError(f"odd Durfee symbols need n >= 1, got {n}")
    _check_budget(n, max_n)
    return _table(n, k)[n][m % k]


def rank_diff_series(m1: int, m2: int, k: int, arith: tuple[int, int], prec: int,
                     max_n: int = MAX_ORACLE_N) -> QSeries:
    """``sum_j (N0(m1,k,step j+offset) - N0(m2,k,step j+offset)) q^j`` through ``q^(prec-1)``."""
    step, offset = arith
    top = step * (prec - 1) + offset
    if top > max_n:
        feasible = max(0, (max_n - offset) // step + 1)
        raise BudgetError(
            f"needs N0 up to n={top}, budget is {max_n}; largest feasible precision {feasible}",
            feasible=feasible,
        )
    table = _table(max(top, 1), k)
    cs = []
    for j in range(prec):
        n = step * j + offset
        cs.append(0 if n <= 0 else table[n][m1 % k] - table[n][m2 % k])
    return QSeries(cs, 0, prec)


def cui_gf(t: int, s: int, prec: int) -> QSeries:
    """Known Lambert-series form of ``sum_n N0(t, s, n) q^n``."""
    if t < 0 or s < 1:
        raise ValueError("need t >= 0 and s >= 1")
    spec = LambertSpec(3, 3 + 2 * t, 1 + t, 2 * s, s)
    return lambert_expand(spec, prec) * pochhammer_expand(2, 2, prec, -1)


def cui_single_probe(t: int, s: int, prec: int, max_n: int = MAX_ORACLE_N) -> tuple[bool, tuple[int, int, int] | None]:
    """Does ``cui_gf(t, s)`` match the oracle for one residue ``t`` (not just in differences)?

    Returns the verdict and the first mismatch ``(n, formula, oracle)``.
    """
    if prec - 1 > max_n:
        raise BudgetError(f"probe needs N0 up to {prec - 1}, budget is {max_n}", feasible=max_n + 1)
    table = _table(max(prec - 1, 1), s)
    oracle = QSeries([0] + [table[n][t % s] for n in range(1, prec)], 0, prec)
    mismatch = cui_gf(t, s, prec).first_mismatch(oracle, prec)
    return mismatch is None, mismatch
