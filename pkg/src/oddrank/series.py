"""Truncated formal Laurent series in q with exact integer coefficients.

A :class:`QSeries` stores the coefficients of ``q**valuation`` up to (but not
including) ``q**precision``.  Everything at or above ``precision`` is unknown;
everything below ``valuation`` is known to be zero.  Arithmetic propagates the
validity range pessimistically so that no operation ever reports a coefficient
it cannot vouch for.

Multiplication picks between a sparse loop (one operand has few nonzero
terms, which is the case for every Pochhammer factor) and Kronecker
substitution through Python's big-integer multiply for dense operands.
"""

from __future__ import annotations

from itertools import repeat
from operator import add, mul, sub
from typing import Iterable, Iterator, Mapping

from .errors import DegeneratePrecisionError, NonInvertibleError

try:
    import gmpy2
except ImportError:  # pragma: no cover - pure-int fallback
    gmpy2 = None

__all__ = ["QSeries", "convolve", "unit_power"]

# sparse loop wins when one operand has at most this many nonzero terms
SPARSE_TERMS = 48


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _nonzero(coeffs: list[int]) -> list[tuple[int, int]]:
    return [(i, c) for i, c in enumerate(coeffs) if c]


def _sparse_convolve(items: list[tuple[int, int]], dense: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, c in items:
        if i >= n:
            break
        m = min(len(dense), n - i)
        if m <= 0:
            continue
        seg = out[i:i + m]
        if c == 1:
            out[i:i + m] = map(add, seg, dense[:m])
        elif c == -1:
            out[i:i + m] = map(sub, seg, dense[:m])
        else:
            out[i:i + m] = map(add, seg, map(mul, repeat(c, m), dense[:m]))
    return out


def _pack(coeffs: list[int], nbytes: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker_convolve(a: list[int], b: list[int], n: int) -> list[int]:
    a = a[:n]
    b = b[:n]
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    if gmpy2 is not None and len(a) + len(b) > 256:
        prod = int(gmpy2.mpz(_pack(a, nbytes)) * gmpy2.mpz(_pack(b, nbytes)))
    else:
        prod = _pack(a, nbytes) * _pack(b, nbytes)
    length = min(len(a) + len(b) - 1, n)
    half = 1 << (8 * nbytes - 1)
    # offset every digit by half so the base-2^(8*nbytes) digits are non-negative
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * (len(a) + len(b) - 1), "little")
    raw = (prod + offset).to_bytes(nbytes * (len(a) + len(b) - 1), "little")
    out = [
        int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") - half
        for k in range(length)
    ]
    out.extend(repeat(0, n - length))
    return out


def convolve(a: list[int], b: list[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two coefficient lists."""
    if n <= 0:
        return []
    if not a or not b:
        return [0] * n
    sa = _nonzero(a[:n])
    if not sa:
        return [0] * n
    sb = _nonzero(b[:n])
    if not sb:
        return [0] * n
    if len(sa) <= len(sb):
        small, dense = sa, b
    else:
        small, dense = sb, a
    if len(small) <= SPARSE_TERMS or len(small) * 8 < len(dense):
        return _sparse_convolve(small, dense, n)
    return _kronecker_convolve(a, b, n)


def unit_power(coeffs: list[int], r: int, n: int) -> list[int]:
    """First ``n`` coefficients of ``f**r`` where ``f[0] == 1``.

    Uses the recurrence ``n g_n = sum_k ((r+1)k - n) f_k g_{n-k}``, which costs
    one pass over the nonzero terms of ``f`` per output coefficient.  ``r``
    may be negative.
    """
    if not coeffs or coeffs[0] != 1:
        raise NonInvertibleError("unit_power needs constant term 1")
    items = [(k, c) for k, c in enumerate(coeffs[:n]) if c and k]
    g = [0] * n
    if n == 0:
        return g
    g[0] = 1
    for m in range(1, n):
        s = 0
        for k, c in items:
            if k > m:
                break
            s += ((r + 1) * k - m) * c * g[m - k]
        q, rem = divmod(s, m)
        if rem:
            raise ArithmeticError("non-integral power coefficient")
        g[m] = q
    return g


class QSeries:
    """Immutable truncated Laurent series ``sum c_e q^e + O(q^precision)``."""

    __slots__ = ("valuation", "precision", "coeffs")

    def __init__(self, coeffs: Iterable[int], valuation: int = 0, precision: int | None = None):
        cs = [int(c) for c in coeffs]
        if precision is None:
            precision = valuation + len(cs)
        if precision <= valuation:
            raise DegeneratePrecisionError(
                f"empty validity range: valuation {valuation} >= precision {precision}"
            )
        width = precision - valuation
        if len(cs) > width:
            del cs[width:]
        elif len(cs) < width:
            cs.extend(repeat(0, width - len(cs)))
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, precision: int, valuation: int = 0) -> QSeries:
        return cls((), valuation, precision)

    @classmethod
    def one(cls, precision: int) -> QSeries:
        return cls.monomial(0, precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coeff: int = 1) -> QSeries:
        """``coeff * q**exponent + O(q**precision)``."""
        if exponent >= precision:
            return cls.zero(precision, min(0, precision - 1))
        return cls([coeff], exponent, precision)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int], precision: int) -> QSeries:
        low = min([e for e, c in terms.items() if c] + [min(0, precision - 1)])
        cs = [0] * (precision - low)
        for e, c in terms.items():
            if e < precision:
                cs[e - low] += c
        return cls(cs, low, precision)

    # -- access ---------------------------------------------------------------

    @property
    def order(self) -> int:
        """Exponent of the first nonzero stored coefficient (``precision`` if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.valuation + i
        return self.precision

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, e: int) -> int:
        if e >= self.precision:
            raise IndexError(f"coefficient of q^{e} is beyond precision {self.precision}")
        if e < self.valuation:
            return 0
        return self.coeffs[e - self.valuation]

    def coefficients(self, start: int, stop: int) -> list[int]:
        """Coefficients for exponents ``start..stop-1``."""
        return [self[e] for e in range(start, stop)]

    def items(self) -> Iterator[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing order."""
        v = self.valuation
        return ((v + i, c) for i, c in enumerate(self.coeffs) if c)

    def _dense(self, start: int, stop: int) -> list[int]:
        # known-zero below valuation; caller guarantees stop <= precision
        lo = max(start, self.valuation)
        head = [0] * max(0, min(stop, self.valuation) - start)
        return head + list(self.coeffs[lo - self.valuation:stop - self.valuation])

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return other
        if isinstance(other, int):
            return QSeries([other], 0, max(self.precision, 1))
        return NotImplemented

    def __add__(self, other) -> QSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        lo = min(self.valuation, other.valuation)
        hi = min(self.precision, other.precision)
        return QSeries(map(add, self._dense(lo, hi), other._dense(lo, hi)), lo, hi)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries([-c for c in self.coeffs], self.valuation, self.precision)

    def __sub__(self, other) -> QSeries:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QSeries:
        return (-self) + other

    def __mul__(self, other) -> QSeries:
        if isinstance(other, int):
            return QSeries([other * c for c in self.coeffs], self.valuation, self.precision)
        if not isinstance(other, QSeries):
            return NotImplemented
        va, vb = self.order, other.order
        prec = min(self.precision + vb, other.precision + va)
        val = self.valuation + other.valuation
        if va >= self.precision or vb >= other.precision:
            return QSeries.zero(prec, min(val, prec - 1))
        n = prec - (va + vb)
        cs = convolve(self._dense(va, self.precision), other._dense(vb, other.precision), n)
        return QSeries(cs, va + vb, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return QSeries.one(max(1, self.precision - self.order))
        base, result = self, None
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> QSeries:
        """Multiplicative inverse; the leading coefficient must be +1 or -1."""
        v = self.order
        if v >= self.precision:
            raise NonInvertibleError("cannot invert a series that is zero on its whole range")
        u = self._dense(v, self.precision)
        lead = u[0]
        if lead not in (1, -1):
            raise NonInvertibleError(f"leading coefficient {lead} is not a unit")
        n = len(u)
        u = [lead * c for c in u]  # make it monic
        items = [(k, c) for k, c in enumerate(u) if c and k]
        if len(items) <= SPARSE_TERMS or len(items) * 8 < n:
            b = _sparse_inverse(items, n)
        else:
            b = _newton_inverse(u, n)
        if lead == -1:
            b = [-c for c in b]
        return QSeries(b, -v, self.precision - 2 * v)

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __rtruediv__(self, other) -> QSeries:
        if isinstance(other, int):
            return self.invert() * other
        return NotImplemented

    # -- structural operations ------------------------------------------------

    def shift(self, k: int) -> QSeries:
        """Multiply by ``q**k``."""
        return QSeries(self.coeffs, self.valuation + k, self.precision + k)

    def truncate(self, precision: int) -> QSeries:
        """Narrow the validity range to exponents below ``precision``."""
        return QSeries(self.coeffs, self.valuation, min(precision, self.precision))

    def extract_progression(self, k: int, r: int = 0) -> QSeries:
        """``sum_n a(k n + r) q^n`` over the valid range of ``self``."""
        if k < 1:
            raise ValueError("progression step must be positive")
        if not 0 <= r < k:
            raise ValueError("progression residue must satisfy 0 <= r < k")
        lo = _ceil_div(self.valuation - r, k)
        hi = _ceil_div(self.precision - r, k)
        if hi <= lo:
            raise DegeneratePrecisionError(
                f"progression {k}n+{r} has no terms in [{self.valuation}, {self.precision})"
            )
        start = k * lo + r - self.valuation
        return QSeries(self.coeffs[start::k], lo, hi)

    def substitute_power(self, k: int) -> QSeries:
        """Replace ``q`` by ``q**k`` (``k >= 1``)."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        cs = [0] * (k * (self.precision - self.valuation))
        cs[::k] = self.coeffs
        return QSeries(cs, k * self.valuation, k * self.precision)

    # -- comparison and display -----------------------------------------------

    def first_mismatch(self, other: QSeries, through: int | None = None):
        """First exponent where two series differ on their common range.

        Returns ``None`` on agreement, otherwise ``(exponent, mine, theirs)``.
        """
        hi = min(self.precision, other.precision)
        if through is not None:
            hi = min(hi, through)
        lo = min(self.valuation, other.valuation)
        for e in range(lo, hi):
            a, b = self[e], other[e]
            if a != b:
                return e, a, b
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QSeries([other], 0, max(self.precision, 1))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"QSeries({self.format(max_terms=8)})"

    def format(self, max_terms: int | None = None) -> str:
        terms = []
        for e, c in self.items():
            if max_terms is not None and len(terms) >= max_terms:
                terms.append("...")
                break
            if e == 0:
                mono = str(abs(c))
            else:
                q = "q" if e == 1 else f"q^{e}"
                mono = q if abs(c) == 1 else f"{abs(c)}*{q}"
            terms.append(("- " if c < 0 else "+ ") + mono)
        body = " ".join(terms).lstrip("+ ") if terms else "0"
        if body.startswith("- "):
            body = "-" + body[2:]
        return f"{body} + O(q^{self.precision})"


def _sparse_inverse(items: list[tuple[int, int]], n: int) -> list[int]:
    b = [0] * n
    b[0] = 1
    for m in range(1, n):
        s = 0
        for k, c in items:
            if k > m:
                break
            s += c * b[m - k]
        b[m] = -s
    return b


def _newton_inverse(u: list[int], n: int) -> list[int]:
    b = [1]
    m = 1
    while m < n:
        m = min(2 * m, n)
        ub = convolve(u, b, m)
        # b <- b * (2 - u b)
        corr = [-c for c in ub]
        corr[0] += 2
        b = convolve(b, corr, m)
    return b
