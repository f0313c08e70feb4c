"""The U_5 operator on q-expansions and the composite operators U^(i,j).

``U^(0,j)(f) = U_5(Z rho^j f)`` and ``U^(1,j)(f) = U_5(H rho^j f)``.  Images of
powers of ``t`` are expressed as ``P(t) + rho Q(t)`` with Laurent polynomials
``P, Q``; :class:`TRhoExpr` holds such a pair and :data:`GROUPS` records the
twenty images of ``t^k`` for ``-4 <= k <= 0``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .products import H, RHO, T, Z
from .series import QSeries

__all__ = [
    "TRhoExpr",
    "TPowers",
    "t_powers",
    "u5",
    "u_ij",
    "a_l_poly",
    "reduce_check",
    "GROUPS",
    "GROUP_ERRATA",
]


def _clean(d: Mapping[int, int]) -> dict[int, int]:
    return {int(n): int(c) for n, c in sorted(d.items()) if c}


@dataclass(frozen=True)
class TRhoExpr:
    """``sum p[n] t^n + rho * sum r[n] t^n`` with finitely many nonzero terms."""

    p: Mapping[int, int] = field(default_factory=dict)
    r: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "p", _clean(self.p))
        object.__setattr__(self, "r", _clean(self.r))

    def __add__(self, other: TRhoExpr) -> TRhoExpr:
        p, r = dict(self.p), dict(self.r)
        for n, c in other.p.items():
            p[n] = p.get(n, 0) + c
        for n, c in other.r.items():
            r[n] = r.get(n, 0) + c
        return TRhoExpr(p, r)

    def __neg__(self) -> TRhoExpr:
        return TRhoExpr({n: -c for n, c in self.p.items()}, {n: -c for n, c in self.r.items()})

    def scale(self, c: int) -> TRhoExpr:
        return TRhoExpr({n: c * v for n, v in self.p.items()}, {n: c * v for n, v in self.r.items()})

    def times_t_poly(self, poly: Mapping[int, int]) -> TRhoExpr:
        """Multiply by a Laurent polynomial in ``t`` (given as ``{n: coeff}``)."""
        p: dict[int, int] = {}
        r: dict[int, int] = {}
        for m, c in poly.items():
            for n, v in self.p.items():
                p[n + m] = p.get(n + m, 0) + c * v
            for n, v in self.r.items():
                r[n + m] = r.get(n + m, 0) + c * v
        return TRhoExpr(p, r)

    def is_zero(self) -> bool:
        return not self.p and not self.r

    def evaluate(self, prec: int) -> QSeries:
        """q-expansion through ``q^(prec-1)``."""
        keys = list(self.p) + list(self.r)
        lowest = min(keys, default=0)
        powers = t_powers(prec + max(0, -lowest) + 1)
        out = QSeries.zero(prec, min(0, lowest, prec - 1))
        # t^n has order exactly n, so terms with n >= prec vanish here
        for n, c in self.p.items():
            if n < prec:
                out = out + powers.power(n) * c
        if self.r:
            part = QSeries.zero(prec + 1, min(0, lowest, prec - 1))
            for n, c in self.r.items():
                if n < prec:
                    part = part + powers.power(n) * c
            out = out + part * powers.rho
        if out.precision < prec:
            raise ArithmeticError(f"evaluation lost precision: {out.precision} < {prec}")
        return out.truncate(prec)

    def __str__(self) -> str:
        def poly(d):
            return " + ".join(f"{c}*t^{n}" for n, c in d.items()) or "0"

        if not self.r:
            return poly(self.p)
        return f"{poly(self.p)} + rho*({poly(self.r)})"


class TPowers:
    """Memoized powers of ``t`` (and ``rho``), all valid through ``q^(prec-1)``."""

    def __init__(self, prec: int):
        self.prec = prec
        self.t = T.expand(prec)
        self.rho = RHO.expand(prec)
        self._pos = {0: QSeries.one(prec), 1: self.t}
        self._neg: dict[int, QSeries] = {}
        self._margin = 0
        self._lock = threading.Lock()  # instances are shared through an lru_cache

    def _build_negative(self, depth: int) -> None:
        self._margin = max(depth, 2 * self._margin, 8)
        inv = (T ** -1).expand(self.prec + self._margin)
        self._neg = {-1: inv}

    def power(self, n: int) -> QSeries:
        with self._lock:
            return self._power(n)

    def _power(self, n: int) -> QSeries:
        if n >= 0:
            top = max(self._pos)
            while top < n:
                self._pos[top + 1] = self._pos[top] * self.t
                top += 1
            return self._pos[n].truncate(self.prec)
        if -n > self._margin:
            self._build_negative(-n)
        low = min(self._neg)
        while low > n:
            self._neg[low - 1] = self._neg[low] * self._neg[-1]
            low -= 1
        return self._neg[n].truncate(self.prec)


@lru_cache(maxsize=16)
def t_powers(prec: int) -> TPowers:
    return TPowers(prec)


def u5(f: QSeries) -> QSeries:
    """``U_5``: keep the coefficients at multiples of 5 and divide exponents by 5."""
    return f.extract_progression(5, 0)


@lru_cache(maxsize=1024)
def u_ij(i: int, j: int, k: int, prec: int) -> QSeries:
    """``U^(i,j)(t^k)`` through ``q^(prec-1)``.

    ``W rho^j t^k`` is itself an eta-quotient with an integral q-prefactor, so
    it is expanded exactly in one go through ``q^(5 prec - 1)``.
    """
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"(i, j) must lie in {{0,1}}^2, got ({i}, {j})")
    weight = Z if i == 0 else H
    return u5((weight * RHO ** j * T ** k).expand(5 * prec))


_A_L = {
    0: {1: -1},
    1: {1: -2 * 5, 2: -5**2},
    2: {1: -11 * 5, 2: -2 * 5**3, 3: -5**4},
    3: {1: -28 * 5, 2: -11 * 5**3, 3: -2 * 5**5, 4: -5**6},
    4: {1: -7 * 5**2, 2: -28 * 5**3, 3: -11 * 5**5, 4: -2 * 5**7, 5: -5**8},
}


def a_l_poly(l: int) -> TRhoExpr:
    """The polynomial ``a_l(t)`` of the order-5 modular equation for ``t``."""
    if l not in _A_L:
        raise ValueError(f"l must be in 0..4, got {l}")
    return TRhoExpr(_A_L[l])


def reduce_check(tag: tuple[int, int], k: int, prec: int) -> bool:
    """Check ``U(t^k) = -sum_l a_l(t) U(t^(k+l-5))`` for the operator ``tag``."""
    i, j = tag
    lhs = u_ij(i, j, k, prec)
    rhs = None
    for l in range(5):
        u = u_ij(i, j, k + l - 5, prec)
        a = a_l_poly(l).evaluate(prec + max(0, -u.valuation) + 1)
        term = -(a * u)
        rhs = term if rhs is None else rhs + term
    if rhs.precision < prec:
        return False
    return lhs.first_mismatch(rhs, prec) is None


# Images of t^k for k = 0, -1, -2, -3, -4 under U^(i,j).  Entries listed in
# GROUP_ERRATA were printed with a wrong sign and are stored corrected here.
GROUPS: dict[tuple[int, int], dict[int, TRhoExpr]] = {
    (0, 0): {
        0: TRhoExpr({1: 5, 2: 5**2}, {1: -5}),
        -1: TRhoExpr({0: 1, 1: 5}, {0: -1}),
        -2: TRhoExpr({0: -3, 1: -3 * 5}, {0: 4, 1: -5**2}),
        -3: TRhoExpr({0: -1, 1: 4 * 5**2, 2: 6 * 5**3, 3: 5**5}, {0: -5, 1: 4 * 5**2}),
        -4: TRhoExpr(
            {0: 63, 1: -33 * 5**2, 2: -17 * 5**4, 3: -18 * 5**5, 4: -5**7},
            {0: -2 * 5**2, 1: 5**4, 2: 2 * 5**5, 3: 2 * 5**6},
        ),
    },
    (0, 1): {
        0: TRhoExpr(
            {1: -4, 2: 5**2, 3: -3 * 5**4, 4: -4 * 5**5, 5: -5**7},
            {1: 8 * 5, 2: 12 * 5**3, 3: 7 * 5**5, 4: 8 * 5**6, 5: 5**8},
        ),
        -1: TRhoExpr({1: 5}),
        -2: TRhoExpr({0: 1}),
        -3: TRhoExpr({0: -7, 1: 12 * 5, 2: 7 * 5**3, 3: 5**5}, {0: 5, 1: -4 * 5**2, 2: -5**4}),
        -4: TRhoExpr(
            {0: 23, 1: -19 * 5**2, 2: -13 * 5**4, 3: -13 * 5**5, 4: -5**7},
            {0: -6 * 5, 1: 7 * 5**3, 2: 2 * 5**5, 3: 5**6},
        ),
    },
    (1, 0): {
        0: TRhoExpr({0: -1}),
        -1: TRhoExpr({-1: 1, 0: -5, 1: -5**2}, {-1: -1, 0: 5**2}),
        -2: TRhoExpr({-1: -4, 0: 4 * 5, 2: -5**4}, {-1: 4, 0: -4 * 5**2}),
        -3: TRhoExpr(
            {-1: 1, 0: 2 * 5**3, 1: 7 * 5**4, 2: 9 * 5**5, 3: 4 * 5**6},
            {0: -2 * 5**3, 1: -5**5, 2: -5**6},
        ),
        -4: TRhoExpr(
            {-1: 16 * 5, 0: -118 * 5**2, 1: -14 * 5**5, 2: -18 * 5**6, 3: -2 * 5**8, 4: -5**8},
            {-1: -18 * 5, 0: 38 * 5**3, 1: 2 * 5**6, 2: 2 * 5**7},
        ),
    },
    (1, 1): {
        0: TRhoExpr({0: -2}, {0: 5}),
        -1: TRhoExpr({0: -5, 1: -5**2}, {0: 5}),
        -2: TRhoExpr({-1: 1, 0: -5, 1: -5**3, 2: -5**4}, {-1: -1, 0: 5**2, 1: 5**3}),
        -3: TRhoExpr(
            {-1: -8, 0: 59 * 5, 1: 7 * 5**4, 2: 8 * 5**5, 3: 4 * 5**6},
            {-1: 9, 0: -19 * 5**2, 1: -5**5, 2: -4 * 5**5},
        ),
        -4: TRhoExpr(
            {-1: 29, 0: -67 * 5**2, 1: -42 * 5**4, 2: -54 * 5**5, 3: -7 * 5**7, 4: -5**8},
            {-1: -7 * 5, 0: 19 * 5**3, 1: 6 * 5**5, 2: 6 * 5**6, 3: 5**7},
        ),
    },
}


# (i, j, k) -> right side as originally printed; the t^1 coefficient of
# U^(1,0)(t^-1) is -5^2, not +5^2 (the printed form fails at q^1: 71 vs 121).
GROUP_ERRATA: dict[tuple[int, int, int], TRhoExpr] = {
    (1, 0, -1): TRhoExpr({-1: 1, 0: -5, 1: 5**2}, {-1: -1, 0: 5**2}),
}
