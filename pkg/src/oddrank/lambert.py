"""Bilateral Lambert series with quadratic numerators and linear denominators.

A :class:`LambertSpec` stands for

    sign * sum_{n in Z} (+-1)^n q^(A n^2 + B n + C) / (1 - q^(d n + e))

where the ``(-1)^n`` is present when ``alternating`` is set.  Terms whose
denominator exponent is negative are expanded through
``1/(1 - q^-m) = -q^m / (1 - q^m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivergenceError, PoleError
from .series import QSeries

__all__ = ["LambertSpec", "lambert_expand", "residue_split", "index_range"]


@dataclass(frozen=True)
class LambertSpec:
    A: int
    B: int
    C: int
    d: int
    e: int
    alternating: bool = True
    sign: int = 1

    def __post_init__(self):
        if self.A <= 0:
            raise DivergenceError(f"quadratic coefficient A={self.A} must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.d == 0 and self.e == 0:
            raise PoleError("denominator 1 - q^0 vanishes for every n")
        if self.d != 0 and self.e % self.d == 0:
            raise PoleError(f"denominator 1 - q^({self.d}n + {self.e}) vanishes at n = {-self.e // self.d}")

    def exponent(self, n: int) -> int:
        return self.A * n * n + self.B * n + self.C

    def denominator(self, n: int) -> int:
        return self.d * n + self.e

    def lowest_exponent(self, n: int) -> int:
        """Smallest power of q contributed by the ``n``-th term."""
        return self.exponent(n) + max(0, -self.denominator(n))

    def term_sign(self, n: int) -> int:
        if self.alternating and n % 2:
            return -self.sign
        return self.sign

    def __neg__(self) -> LambertSpec:
        return LambertSpec(self.A, self.B, self.C, self.d, self.e, self.alternating, -self.sign)

    def __str__(self) -> str:
        body = f"L({self.A},{self.B},{self.C};{self.d},{self.e}" + (";alt)" if self.alternating else ")")
        return body if self.sign == 1 else "-" + body


def index_range(spec: LambertSpec, prec: int) -> range:
    """Indices whose terms can reach below ``q^prec``, padded by one on each side.

    ``lowest_exponent`` is convex in ``n`` (quadratic plus a convex hinge), so
    walking downhill finds its minimum and walking outward finds the cutoffs.
    """
    f = spec.lowest_exponent
    n = -spec.B // (2 * spec.A)
    while f(n - 1) < f(n):
        n -= 1
    while f(n + 1) < f(n):
        n += 1
    lo = hi = n
    while f(lo - 1) < prec:
        lo -= 1
    while f(hi + 1) < prec:
        hi += 1
    return range(lo - 1, hi + 2)


def lambert_expand(spec: LambertSpec, prec: int) -> QSeries:
    """Exact expansion of ``spec`` through ``q^(prec-1)``."""
    indices = index_range(spec, prec)
    low = min(0, prec - 1, min(spec.lowest_exponent(n) for n in indices))
    cs = [0] * (prec - low)
    for n in indices:
        s = spec.term_sign(n)
        step = spec.denominator(n)
        start = spec.exponent(n)
        if step < 0:
            start, step, s = start - step, -step, -s
        for x in range(start - low, prec - low, step):
            cs[x] += s
    return QSeries(cs, low, prec)


def residue_split(spec: LambertSpec, modulus: int, residue: int) -> LambertSpec:
    """The sub-series over indices ``n = modulus * m + residue``, reindexed by ``m``."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    A, B, d = spec.A, spec.B, spec.d
    sign = spec.sign
    if spec.alternating and residue % 2:
        sign = -sign
    return LambertSpec(
        A * modulus * modulus,
        2 * A * modulus * residue + B * modulus,
        spec.exponent(residue),
        d * modulus,
        d * residue + spec.e,
        spec.alternating and modulus % 2 == 1,
        sign,
    )
