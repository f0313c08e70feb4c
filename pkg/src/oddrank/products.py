"""q-expansions of Pochhammer products, theta brackets and eta-quotients.

Also the two classical facts about eta-quotients needed to treat them as
modular functions: the modularity test on Gamma_0(N) and Ligozat's formula
for the order of vanishing at each cusp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping

from .errors import FractionalPowerError, LevelError, ZeroFactorError
from .series import QSeries, convolve, unit_power

__all__ = [
    "pochhammer_expand",
    "bracket_expand",
    "normalize_bracket",
    "ProductSpec",
    "EtaQuotient",
    "eta_quotient_expand",
    "check_modularity",
    "cusp_orders",
    "cusp_count",
    "RHO",
    "T",
    "Z",
    "H",
]


def _euler(n: int) -> list[int]:
    """(x; x)_inf through x^(n-1), from the pentagonal number theorem."""
    out = [0] * n
    if n:
        out[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < n:
        sign = -1 if k % 2 else 1
        out[k * (3 * k - 1) // 2] += sign
        m = k * (3 * k + 1) // 2
        if m < n:
            out[m] += sign
        k += 1
    return out


_EULER_POWERS: dict[int, list[int]] = {}


def _euler_power(r: int, n: int) -> list[int]:
    cached = _EULER_POWERS.get(r)
    if cached is None or len(cached) < n:
        cached = unit_power(_euler(n), r, n)
        _EULER_POWERS[r] = cached
    return cached[:n]


def _spread(coeffs: list[int], step: int, n: int) -> list[int]:
    out = [0] * n
    out[::step] = coeffs[: len(out[::step])]
    return out


def _pochhammer_list(a: int, b: int, n: int) -> list[int]:
    if a == b:
        return _spread(_euler(-(-n // b)), b, n)
    out = [0] * n
    out[0] = 1
    m = a
    while m < n:
        for e in range(n - 1, m - 1, -1):
            if out[e - m]:
                out[e] -= out[e - m]
        m += b
    return out


def pochhammer_expand(a: int, b: int, prec: int, power: int = 1) -> QSeries:
    """``(q^a; q^b)_inf ** power`` through ``q^(prec-1)``."""
    if a < 1 or b < 1:
        raise ValueError(f"Pochhammer symbol needs a, b >= 1, got ({a}, {b})")
    if prec <= 0:
        return QSeries.zero(prec, prec - 1)
    if a == b:
        return QSeries(_spread(_euler_power(power, -(-prec // b)), b, prec), 0, prec)
    base = _pochhammer_list(a, b, prec)
    if power != 1:
        base = unit_power(base, power, prec)
    return QSeries(base, 0, prec)


def normalize_bracket(residues: Iterable[int], modulus: int) -> tuple[int, int, tuple[int, ...]]:
    """Rewrite ``[q^a1, ..., q^am; q^M]`` with every residue in ``(0, M)``.

    Uses ``[x q^M; q^M] = -x^(-1) [x; q^M]`` repeatedly, so a residue
    ``a = a0 + j M`` with ``0 < a0 < M`` contributes the sign ``(-1)^j`` and
    the factor ``q^-(j a0 + M j (j-1)/2)``.  Returns ``(sign, shift, reduced)``
    such that the bracket equals ``sign * q^shift * [reduced; q^M]``.
    """
    sign, shift, reduced = 1, 0, []
    for a in residues:
        j, a0 = divmod(a, modulus)
        if a0 == 0:
            raise ZeroFactorError(f"bracket residue {a} is divisible by {modulus}")
        if j % 2:
            sign = -sign
        shift -= j * a0 + modulus * j * (j - 1) // 2
        reduced.append(a0)
    return sign, shift, tuple(reduced)


def bracket_expand(residues: Iterable[int], modulus: int, prec: int, power: int = 1) -> QSeries:
    """``[q^a1, ..., q^am; q^M]_inf ** power``; residues must lie in ``(0, M)``."""
    residues = list(residues)
    for a in residues:
        if a % modulus == 0:
            raise ZeroFactorError(f"bracket residue {a} is divisible by {modulus}")
        if not 0 < a < modulus:
            raise ValueError(
                f"bracket residue {a} outside (0, {modulus}); apply normalize_bracket first"
            )
    n = max(prec, 1)
    acc = [1] + [0] * (n - 1)
    for a in residues:
        for e in (a, modulus - a):
            acc = convolve(acc, _pochhammer_list(e, modulus, n), n)
    if power != 1:
        acc = unit_power(acc, power, n)
    if prec <= 0:
        return QSeries.zero(prec, prec - 1)
    return QSeries(acc, 0, prec)


@dataclass(frozen=True)
class ProductSpec:
    """Finite product of ``(q^a; q^b)_inf ** e`` factors."""

    factors: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        for a, b, _ in self.factors:
            if a < 1 or b < 1:
                raise ValueError(f"factor (q^{a}; q^{b}) needs a, b >= 1")

    @classmethod
    def bracket(cls, residues: Iterable[int], modulus: int, power: int = 1) -> ProductSpec:
        fs = []
        for a in residues:
            if not 0 < a < modulus:
                raise ValueError(f"bracket residue {a} outside (0, {modulus})")
            fs += [(a, modulus, power), (modulus - a, modulus, power)]
        return cls(tuple(fs))

    def __mul__(self, other: ProductSpec) -> ProductSpec:
        return ProductSpec(self.factors + other.factors)

    def expand(self, prec: int) -> QSeries:
        out = QSeries.one(max(prec, 1))
        for a, b, e in self.factors:
            out = out * pochhammer_expand(a, b, max(prec, 1), e)
        return out.truncate(prec) if prec > 0 else QSeries.zero(prec, prec - 1)


@dataclass(frozen=True)
class EtaQuotient:
    """``prod_delta eta(delta tau) ** r_delta``.

    ``pairs`` maps each delta to its exponent; zero exponents are dropped.
    """

    pairs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, r in dict(self.pairs).items():
            if d < 1:
                raise ValueError(f"eta argument must be positive, got {d}")
            if r:
                clean[int(d)] = clean.get(int(d), 0) + int(r)
        object.__setattr__(self, "pairs", {d: r for d, r in sorted(clean.items()) if r})

    def __hash__(self):
        return hash(tuple(self.pairs.items()))

    @property
    def prefactor(self) -> Fraction:
        """Exponent of the leading ``q`` power, ``sum delta r_delta / 24``."""
        return Fraction(sum(d * r for d, r in self.pairs.items()), 24)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(self.pairs.values()), 2)

    @property
    def level(self) -> int:
        """Smallest N that every delta divides (a lower bound for the true level)."""
        n = 1
        for d in self.pairs:
            n = n * d // gcd(n, d)
        return n

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        out = dict(self.pairs)
        for d, r in other.pairs.items():
            out[d] = out.get(d, 0) + r
        return EtaQuotient(out)

    def __truediv__(self, other: EtaQuotient) -> EtaQuotient:
        return self * other ** -1

    def __pow__(self, k: int) -> EtaQuotient:
        return EtaQuotient({d: r * k for d, r in self.pairs.items()})

    def expand(self, prec: int) -> QSeries:
        return eta_quotient_expand(self, prec)

    def __str__(self) -> str:
        num = [f"eta({d})" + (f"^{r}" if r != 1 else "") for d, r in self.pairs.items() if r > 0]
        den = [f"eta({d})" + (f"^{-r}" if r != -1 else "") for d, r in self.pairs.items() if r < 0]
        top = "*".join(num) or "1"
        if not den:
            return top
        bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
        return f"{top}/{bottom}"


def eta_quotient_expand(eq: EtaQuotient, prec: int) -> QSeries:
    """``q^prefactor * prod (q^delta; q^delta)^r_delta`` through ``q^(prec-1)``."""
    pre = eq.prefactor
    if pre.denominator != 1:
        raise FractionalPowerError(f"{eq} has q-prefactor {pre}, not an integer")
    shift = int(pre)
    n = prec - shift
    if n <= 0:
        return QSeries.zero(prec, min(shift, prec - 1))
    acc = [1] + [0] * (n - 1)
    for d, r in eq.pairs.items():
        factor = _spread(_euler_power(r, -(-n // d)), d, n)
        acc = convolve(acc, factor, n)
    return QSeries(acc, shift, prec)


def _check_level(eq: EtaQuotient, level: int) -> None:
    bad = [d for d in eq.pairs if level % d]
    if bad:
        raise LevelError(f"eta arguments {bad} do not divide the level {level}")


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    return all(isqrt(v) ** 2 == v for v in (x.numerator, x.denominator))


def check_modularity(eq: EtaQuotient, level: int) -> tuple[bool, dict]:
    """Newman-style test that ``eq`` is a modular function on Gamma_0(level).

    Returns the verdict and a certificate with the four quantities tested.
    """
    _check_level(eq, level)
    weight_sum = sum(eq.pairs.values())
    delta_sum = sum(d * r for d, r in eq.pairs.items())
    codelta_sum = sum(level // d * r for d, r in eq.pairs.items())
    prod = Fraction(1)
    for d, r in eq.pairs.items():
        prod *= Fraction(d) ** r
    cert = {
        "exponent_sum": weight_sum,
        "delta_sum": delta_sum,
        "codelta_sum": codelta_sum,
        "delta_product": prod,
        "checks": {
            "weight_zero": weight_sum == 0,
            "delta_sum_mod_24": delta_sum % 24 == 0,
            "codelta_sum_mod_24": codelta_sum % 24 == 0,
            "product_is_square": _is_rational_square(prod),
        },
    }
    return all(cert["checks"].values()), cert


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def cusp_count(c: int, level: int) -> int:
    """Number of inequivalent cusps of Gamma_0(level) with denominator ``c``."""
    return _phi(gcd(c, level // c))


def cusp_orders(eq: EtaQuotient, level: int) -> dict[int, Fraction]:
    """Order of ``eq`` at the cusps ``1/c`` of Gamma_0(level), keyed by ``c | level``.

    ``c = level`` is the cusp at infinity, ``c = 1`` the cusp 0.  All cusps
    sharing a denominator have the same order for an eta-quotient.
    """
    _check_level(eq, level)
    out = {}
    for c in _divisors(level):
        s = sum(Fraction(gcd(c, d) ** 2 * r, d) for d, r in eq.pairs.items())
        out[c] = Fraction(level, 24 * c * gcd(c, level // c)) * s
    return out


# the four eta-quotients used throughout
RHO = EtaQuotient({1: -4, 2: 2, 5: 4, 10: -2})
T = EtaQuotient({1: -2, 2: -2, 5: 2, 10: 2})
Z = EtaQuotient({2: -1, 50: 1})
H = EtaQuotient({1: 2, 25: -2})
