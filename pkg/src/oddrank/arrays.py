"""Discrete arrays a_{i,j}, b_{i,j}, c, d and their 5-adic valuation bounds.

Row ``k`` of family ``(i, j)`` is the pair ``(a_{i,j}(k, .), b_{i,j}(k, .))``,
kept as a :class:`~oddrank.uops.TRhoExpr`: the coefficients of
``U^(i,j)(t^k)`` in the ``t`` / ``rho t`` basis.  Rows ``-4..0`` are the stored
seed images; every other row follows from the five-term recurrence, run
upwards as written and downwards by solving for the ``k-5`` row.

Rows with ``k >= 1`` may be truncated at an ``n``-cap.  The upward recurrence
only ever reads smaller ``n``, so truncated entries below the cap are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .errors import BudgetError, CoverageError, IntegrityError
from .products import pochhammer_expand
from .series import QSeries
from .uops import GROUPS, TRhoExpr

__all__ = [
    "INF",
    "padic",
    "S_SHIFT",
    "RECURRENCE",
    "LEPI_GAMMA",
    "DiscreteArray",
    "ArrayFamily",
    "ValuationEntry",
    "ValuationReport",
    "family",
    "seed_arrays",
    "extend",
    "check_lepi",
    "cd_arrays",
    "check_l2al",
    "l2al_bounds",
    "lam",
    "e_series",
    "L_series",
    "MAX_EXPONENT",
]

INF = math.inf
MAX_EXPONENT = 60000

# lower support: a_{i,j}(k, n) = b_{i,j}(k, n) = 0 for n < ceil((k - s_{i,j}) / 5)
S_SHIFT = {(0, 0): -1, (0, 1): -2, (1, 0): 4, (1, 1): 3}

# m(k, n) = sum over (dk, dn, c) of c * m(k - dk, n - dn)
RECURRENCE: tuple[tuple[int, int, int], ...] = (
    (1, 1, 7 * 5**2), (1, 2, 28 * 5**3), (1, 3, 11 * 5**5), (1, 4, 2 * 5**7), (1, 5, 5**8),
    (2, 1, 28 * 5), (2, 2, 11 * 5**3), (2, 3, 2 * 5**5), (2, 4, 5**6),
    (3, 1, 11 * 5), (3, 2, 2 * 5**3), (3, 3, 5**4),
    (4, 1, 2 * 5), (4, 2, 5**2),
    (5, 1, 1),
)

# pi(x(k, n)) >= floor((5n - k + gamma) / 3)
LEPI_GAMMA = {
    "a00": -2, "b00": -1,
    "a01": -3, "b01": 0,
    "a10": 2, "b10": 5,
    "a11": 2, "b11": 4,
}


def padic(x: int, p: int = 5) -> int | float:
    """Exponent of the largest power of ``p`` dividing ``x``; ``INF`` for 0."""
    if x == 0:
        return INF
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _recurrence_polys() -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for dk, dn, c in RECURRENCE:
        out.setdefault(dk, {})[dn] = c
    return out


_POLYS = _recurrence_polys()


def _cap(expr: TRhoExpr, cap: int) -> TRhoExpr:
    return TRhoExpr({n: v for n, v in expr.p.items() if n <= cap},
                    {n: v for n, v in expr.r.items() if n <= cap})


@dataclass
class DiscreteArray:
    """Integer family ``m(k, n)``; rows are finite maps ``n -> value``.

    ``caps[k]`` is the largest ``n`` known exactly in row ``k`` (``None``
    when the row is complete).
    """

    label: str
    rows: dict[int, dict[int, int]] = field(default_factory=dict)
    caps: dict[int, int | None] = field(default_factory=dict)
    support_shift: int | None = None

    def __getitem__(self, key: tuple[int, int]) -> int:
        k, n = key
        if k not in self.rows:
            raise CoverageError(f"{self.label}: row k={k} was not computed")
        cap = self.caps.get(k)
        if cap is not None and n > cap:
            raise CoverageError(f"{self.label}: entry ({k}, {n}) beyond the n-cap {cap}")
        return self.rows[k].get(n, 0)

    def support(self, k: int) -> tuple[int, int] | None:
        row = self.rows[k]
        if not row:
            return None
        return min(row), max(row)

    def lower_support(self, k: int) -> int:
        """First ``n`` allowed to be nonzero by the support lemma."""
        if self.support_shift is None:
            raise ValueError(f"{self.label} has no support law")
        return _ceil_div(k - self.support_shift, 5)


class ArrayFamily:
    """Rows of ``U^(i,j)(t^k)`` generated from the seeds by the recurrence.

    ``n_cap`` (an int, or a callable of ``k``) bounds the stored ``n`` for
    rows ``k >= 1``; rows ``k <= 0`` are always complete.
    """

    def __init__(self, i: int, j: int, n_cap: int | Callable[[int], int] = 100,
                 seeds: dict[int, TRhoExpr] | None = None):
        self.tag = (i, j)
        self.shift = S_SHIFT[(i, j)]
        self._cap_fn = n_cap if callable(n_cap) else (lambda k, c=n_cap: c)
        seeds = GROUPS[(i, j)] if seeds is None else seeds
        self.rows: dict[int, TRhoExpr] = {k: seeds[k] for k in range(-4, 1)}
        self.caps: dict[int, int | None] = {k: None for k in range(-4, 1)}
        for k in range(-4, 1):
            self._check_support(k, self.rows[k])

    def set_cap(self, n_cap: int | Callable[[int], int]) -> None:
        """Change the cap used for rows computed from now on."""
        self._cap_fn = n_cap if callable(n_cap) else (lambda k, c=n_cap: c)

    def _check_support(self, k: int, row: TRhoExpr) -> None:
        lo = _ceil_div(k - self.shift, 5)
        bad = [n for n in list(row.p) + list(row.r) if n < lo]
        if bad:
            raise IntegrityError(f"family {self.tag} row {k}: entries at n={bad} below support {lo}")

    def row(self, k: int) -> TRhoExpr:
        if k in self.rows:
            return self.rows[k]
        if k > 0:
            top = max(self.rows)
            for kk in range(top + 1, k + 1):
                self._up(kk)
        else:
            bottom = min(self.rows)
            for kk in range(bottom - 1, k - 1, -1):
                self._down(kk)
        return self.rows[k]

    def cap(self, k: int) -> int | None:
        self.row(k)
        return self.caps[k]

    def _up(self, k: int) -> None:
        cap = self._cap_fn(k)
        for dk, dn, _ in RECURRENCE:
            prev = self.caps[k - dk]
            if prev is not None and cap > prev + dn:
                raise CoverageError(f"row {k} cap {cap} needs row {k - dk} beyond its cap {prev}")
        acc = TRhoExpr()
        for dk, poly in _POLYS.items():
            acc = acc + _cap(self.rows[k - dk], cap - 1).times_t_poly(poly)
        acc = _cap(acc, cap)
        self._check_support(k, acc)
        self.rows[k] = acc
        self.caps[k] = cap

    def _down(self, k: int) -> None:
        # solve the recurrence at row k+5 for its m(k, n-1) term
        rest = self.rows[k + 5]
        for dk in range(1, 5):
            rest = rest + (-self.rows[k + 5 - dk]).times_t_poly(_POLYS[dk])
        row = rest.times_t_poly({-1: 1})
        self._check_support(k, row)
        self.rows[k] = row
        self.caps[k] = None

    def as_arrays(self, k_range: Iterable[int]) -> tuple[DiscreteArray, DiscreteArray]:
        i, j = self.tag
        a = DiscreteArray(f"a{i}{j}", support_shift=self.shift)
        b = DiscreteArray(f"b{i}{j}", support_shift=self.shift)
        for k in k_range:
            r = self.row(k)
            a.rows[k], b.rows[k] = dict(r.p), dict(r.r)
            a.caps[k] = b.caps[k] = self.caps[k]
        return a, b


@lru_cache(maxsize=None)
def family(i: int, j: int, n_cap: int = 100) -> ArrayFamily:
    """Shared family instance with a uniform cap."""
    return ArrayFamily(i, j, n_cap)


def seed_arrays() -> dict[str, DiscreteArray]:
    """The eight a/b arrays on ``-4 <= k <= 0`` exactly as stored in the seed images."""
    out = {}
    for (i, j) in S_SHIFT:
        a, b = family(i, j).as_arrays(range(-4, 1))
        out[a.label], out[b.label] = a, b
    return out


def _parse_label(label: str) -> tuple[str, int, int]:
    if len(label) != 3 or label[0] not in "ab" or label[1:] not in ("00", "01", "10", "11"):
        raise ValueError(f"unknown array family {label!r}")
    return label[0], int(label[1]), int(label[2])


def extend(label: str, k_range: Iterable[int], n_cap: int = 100) -> DiscreteArray:
    """Array ``label`` (e.g. ``"a01"``) over ``k_range`` via the recurrence."""
    which, i, j = _parse_label(label)
    a, b = family(i, j, n_cap).as_arrays(k_range)
    return a if which == "a" else b


@dataclass(frozen=True)
class ValuationEntry:
    family: str
    k: int
    n: int
    value: int
    pi: int | float
    bound: int

    @property
    def slack(self) -> int | float:
        return self.pi - self.bound


@dataclass
class ValuationReport:
    label: str
    k_window: tuple[int, int]
    n_window: tuple[int, int]
    entries: list[ValuationEntry] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def min_slack(self) -> int | float:
        return min((e.slack for e in self.entries), default=INF)

    @property
    def passed(self) -> bool:
        return self.min_slack >= 0 and all(v for v in self.notes.values() if isinstance(v, bool))

    def failures(self) -> list[ValuationEntry]:
        return [e for e in self.entries if e.slack < 0]

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"{self.label}: k in {self.k_window}, n in {self.n_window}, "
                f"{len(self.entries)} entries, min slack {self.min_slack} [{status}]")


def check_lepi(k_window: tuple[int, int] = (-30, 30), n_max: int = 30,
               n_cap: int = 100) -> list[ValuationReport]:
    """Check ``pi(x(k, n)) >= floor((5n - k + gamma)/3)`` for all eight arrays.

    Each report also records whether the hypothesis of the propagation
    lemma (the bound on five consecutive rows, here ``k = -4..0``) holds for
    every stored entry of those rows.
    """
    if n_max > n_cap:
        raise CoverageError(f"n_max {n_max} exceeds the array n-cap {n_cap}")
    reports = []
    k_lo, k_hi = k_window
    for label, gamma in LEPI_GAMMA.items():
        arr = extend(label, range(k_lo, k_hi + 1), n_cap)
        rep = ValuationReport(f"lepi:{label}", k_window, (arr.lower_support(k_hi), n_max))
        for k in range(k_lo, k_hi + 1):
            for n in range(arr.lower_support(k), n_max + 1):
                v = arr[k, n]
                rep.entries.append(ValuationEntry(label, k, n, v, padic(v), (5 * n - k + gamma) // 3))
        seed_ok = True
        for k in range(-4, 1):
            for n, v in arr.rows[k].items():
                if padic(v) < (5 * n - k + gamma) // 3:
                    seed_ok = False
        rep.notes["hypothesis_rows_-4..0"] = seed_ok
        reports.append(rep)
    return reports


def _cd_needs(alpha_max: int, n_cap: int) -> dict[int, int]:
    # c(alpha, n) with n <= need reads rows k <= 5 need + 4 of c(alpha - 1)
    need = {alpha_max: n_cap}
    for a in range(alpha_max - 1, 0, -1):
        need[a] = 5 * need[a + 1] + 4
    return need


@lru_cache(maxsize=8)
def cd_arrays(alpha_max: int, n_cap: int = 40) -> tuple[DiscreteArray, DiscreteArray]:
    """Arrays ``c(alpha, n)``, ``d(alpha, n)`` for ``1 <= alpha <= alpha_max``.

    Row ``alpha`` is exact for ``n <= caps[alpha]``; the top row is exact up
    to ``n_cap`` and lower rows as far as the top row needs them.
    """
    need = _cd_needs(alpha_max, n_cap)
    c = DiscreteArray("c")
    d = DiscreteArray("d")
    c.rows[1], d.rows[1] = {1: 5, 2: 5**2}, {1: -5}
    c.caps[1] = d.caps[1] = None
    fams = {tag: ArrayFamily(*tag, n_cap=need.get(2, n_cap)) for tag in S_SHIFT}
    for alpha in range(2, alpha_max + 1):
        if alpha % 2 == 0:
            fc, fd, k_min = fams[(1, 0)], fams[(1, 1)], 1
        else:
            fc, fd, k_min = fams[(0, 0)], fams[(0, 1)], 0
        cap = need[alpha]
        fc.set_cap(cap)
        fd.set_cap(cap)
        acc = TRhoExpr()
        for src, fam in ((c.rows[alpha - 1], fc), (d.rows[alpha - 1], fd)):
            for k, v in src.items():
                if k < k_min:
                    raise IntegrityError(f"row {alpha - 1} has an entry at k={k} < {k_min}")
                row = fam.row(k)
                row_cap = fam.caps[k]
                if row_cap is not None and row_cap < cap:
                    raise CoverageError(f"family {fam.tag} row {k} is capped at {row_cap} < {cap}")
                acc = acc + _cap(row, cap).scale(v)
        c.rows[alpha], d.rows[alpha] = dict(acc.p), dict(acc.r)
        c.caps[alpha] = d.caps[alpha] = cap
    return c, d


def l2al_bounds(alpha: int, n: int) -> tuple[int, int]:
    if alpha % 2:
        base = (alpha - 1) // 2
        return base + (5 * n - 2) // 3, base + (5 * n - 1) // 3
    base = alpha // 2
    return base + (5 * n + 1) // 3, base + (5 * n + 3) // 3


def check_l2al(alpha_max: int = 6, n_max: int = 40) -> ValuationReport:
    """Valuation bounds for ``c(alpha, n)`` and ``d(alpha, n)``, plus their lower support."""
    c, d = cd_arrays(alpha_max, n_max)
    rep = ValuationReport("l2al", (1, alpha_max), (0, n_max))
    support_ok = True
    for alpha in range(1, alpha_max + 1):
        delta = 1 if alpha % 2 else 0
        bc, bd = None, None
        for arr, idx in ((c, 0), (d, 1)):
            row = arr.rows[alpha]
            if any(n < delta for n in row):
                support_ok = False
            for n in range(delta, n_max + 1):
                v = arr[alpha, n]
                bound = l2al_bounds(alpha, n)[idx]
                rep.entries.append(ValuationEntry(arr.label, alpha, n, v, padic(v), bound))
    rep.notes["support_from_delta"] = support_ok
    return rep


def lam(alpha: int) -> int:
    """The offset lambda_alpha of the main congruence family."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if alpha % 2:
        return (2 * 5**alpha - 1) // 3
    return (5**alpha - 1) // 3


_E_CACHE: list[QSeries] = []


def e_series(prec: int) -> QSeries:
    """``(q^5; q^5)^2 / (q^2; q^2)`` through ``q^(prec-1)``."""
    if prec > MAX_EXPONENT:
        raise BudgetError(f"e-series precision {prec} exceeds the budget {MAX_EXPONENT}")
    if _E_CACHE and _E_CACHE[0].precision >= prec:
        return _E_CACHE[0].truncate(prec)
    out = pochhammer_expand(5, 5, prec, 2) * pochhammer_expand(2, 2, prec, -1)
    _E_CACHE[:] = [out]
    return out


def _l_by_definition(alpha: int, prec: int) -> QSeries:
    if alpha == 0:
        return QSeries.one(prec)
    step, off = 5**alpha, lam(alpha)
    top = step * (prec - 1) + off + 1
    e = e_series(top)
    inner = QSeries([e[step * n + off] for n in range(prec)], 0, prec)
    if alpha % 2:
        factor = pochhammer_expand(10, 10, prec) * pochhammer_expand(1, 1, prec, -2)
        return (factor * inner.shift(1)).truncate(prec)
    factor = pochhammer_expand(2, 2, prec) * pochhammer_expand(5, 5, prec, -2)
    return (factor * inner).truncate(prec)


def _l_by_recursion(alpha: int, prec: int) -> QSeries:
    from .products import H, Z
    from .uops import u5

    needs = [prec]
    for _ in range(alpha):
        needs.append(5 * needs[-1] + 2)
    needs.reverse()  # needs[k] = precision wanted for L_k
    if needs[0] > MAX_EXPONENT:
        raise BudgetError(f"recursion needs q^{needs[0]}, budget is {MAX_EXPONENT}")
    cur = QSeries.one(needs[0])
    for k in range(alpha):
        weight = Z if k % 2 == 0 else H
        cur = u5(weight.expand(5 * needs[k + 1] + 2) * cur)
        if cur.precision < needs[k + 1]:
            raise IntegrityError(f"L_{k + 1} only valid below q^{cur.precision}")
    return cur.truncate(prec)


def _l_by_arrays(alpha: int, prec: int) -> QSeries:
    if alpha == 0:
        return QSeries.one(prec)
    c, d = cd_arrays(max(alpha, 1), max(prec - 1, 1))
    return TRhoExpr(c.rows[alpha], d.rows[alpha]).evaluate(prec)


def L_series(alpha: int, prec: int, route: str = "definition") -> QSeries:
    """``L_alpha`` through ``q^(prec-1)`` by one of three independent routes.

    ``definition`` reads coefficients of the e-series; ``u-recursion`` applies
    U^(0,0) and U^(1,0) alternately to ``L_0 = 1``; ``t-rho`` evaluates the
    c/d arrays.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    routes = {"definition": _l_by_definition, "u-recursion": _l_by_recursion, "t-rho": _l_by_arrays}
    if route not in routes:
        raise ValueError(f"unknown route {route!r}; choose from {sorted(routes)}")
    return routes[route](alpha, prec)
