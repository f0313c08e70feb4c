"""Catalog of q-series identities and congruences, each checked by exact expansion.

Bracket / Lambert identities are written in the :mod:`oddrank.expr` language;
the U-operator images compare :func:`~oddrank.uops.u_ij` with the stored
``t``/``rho`` form; T2 compares the odd Durfee oracle with a product.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from .arrays import e_series, lam, padic
from .durfee import MAX_ORACLE_N, n0, rank_diff_series
from .errors import BudgetError
from .expr import evaluate
from .series import QSeries
from .uops import GROUPS, u_ij

__all__ = [
    "CatalogEntry",
    "Report",
    "CATALOG",
    "CATALOG_ERRATA",
    "catalog_names",
    "verify",
    "verify_all",
    "check_congruence_e",
    "check_theorem_main",
    "chu_sides",
]

Builder = Callable[[int], QSeries]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    left: Builder
    right: Builder
    default_prec: int
    period: int
    anchor: str


@dataclass
class Report:
    name: str
    precision: int
    passed: bool
    first_mismatch: tuple[int, int, int] | None = None
    ms: int = 0
    period: int | None = None
    margin_periods: float | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = out.pop("passed")
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            out["first_mismatch"] = {"exponent": e, "left": lhs, "right": rhs}
        return out

    @classmethod
    def from_json(cls, data: dict) -> Report:
        data = dict(data)
        data["passed"] = data.pop("pass")
        fm = data.get("first_mismatch")
        if fm is not None:
            data["first_mismatch"] = (fm["exponent"], fm["left"], fm["right"])
        return cls(**data)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{self.name:<8} prec {self.precision:<5} {status}  {self.ms} ms"
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            line += f"  first mismatch at q^{e}: {lhs} != {rhs}"
        return line


def _ex(text: str) -> Builder:
    return lambda prec: evaluate(text, prec)


# named pieces shared by several entries
_P0 = "J(10,20;50)*P(50;50)^2/J(5,5,15;50)"
_P3 = "q^3*J(10,20;50)*P(50;50)^2/J(5,15,15;50)"
_P4 = "q^4*J(10,20;50)*P(50;50)^2/J(5,15,25;50)"
_S = {
    1: "L(75,5,-1;50,-5;alt)",
    2: "L(75,35,3;50,5;alt)",
    3: "L(75,65,13;50,15;alt)",
    4: "L(75,95,29;50,25;alt)",
    5: "L(75,125,51;50,35;alt)",
}
_A = (
    "J(15,15;50)*P(50;50)/J(5,10,20;50)",
    "q^6*J(5;50)*P(50;50)/J(10,20;50)",
    "q^2*J(25;50)*P(50;50)/J(10,20;50)",
    "-q^3*J(15;50)*P(50;50)/J(10,20;50)",
    "-q^9*J(5,5;50)*P(50;50)/J(10,15,20;50)",
)
_A_SUM = " + ".join(f"({a})" for a in _A)
# A3 as printed carries the opposite sign; both LEAA and PAA fail with it
_A_SUM_PRINTED = " + ".join(f"({a})" for a in _A[:3] + (_A[3][1:],) + _A[4:])
_CUI_DIFF = "(L(3,5,2;10,5;alt) - L(3,7,3;10,5;alt))/P(2;2)"


def chu_sides(A: int, b: int, c: int, d: int, e: int, M: int = 50) -> tuple[str, str]:
    """Both sides of the four-term bracket identity with ``q -> q^M``, as expressions.

    ``[A/b, A/c, A/d, A/e; q]`` minus ``[b, c, d, e; q]`` equals
    ``b [A, A/bc, A/bd, A/be; q]``, written additively in exponents.
    """
    left = f"J({A - b},{A - c},{A - d},{A - e};{M}) - J({b},{c},{d},{e};{M})"
    right = f"q^({b})*J({A},{A - b - c},{A - b - d},{A - b - e};{M})"
    return left, right


def _group_entries() -> list[CatalogEntry]:
    out = []
    for g, tag in enumerate(((0, 0), (0, 1), (1, 0), (1, 1)), start=1):
        for m, k in enumerate(range(0, -5, -1), start=1):
            i, j = tag
            rhs = GROUPS[tag][k]
            out.append(CatalogEntry(
                f"G{g}.{m}",
                lambda prec, i=i, j=j, k=k: u_ij(i, j, k, prec),
                lambda prec, rhs=rhs: rhs.evaluate(prec),
                500, 10, f"U^({i},{j})(t^{k})",
            ))
    return out


def _bracket_entries() -> list[CatalogEntry]:
    P0, P3, P4, S = _P0, _P3, _P4, _S
    ratio = "P(2;2)/P(50;50)"
    pairs = {
        "LEPP1": (
            "L(3,7,3;10,5;alt)",
            f"{ratio}*L(75,125,49;50,35;alt) + {P3} + {P4}",
            "first Lambert splitting",
        ),
        "LEPP2": (
            "L(3,5,2;10,5;alt)",
            f"-{ratio}*L(75,25,0;50,5;alt) + {P0} - {P4}",
            "second Lambert splitting",
        ),
        "S41": (
            f"{S[4]} - {S[1]}",
            f"J(20;50)/(q^2*J(10;50))*{S[5]} + {P4}",
            "S4 - S1",
        ),
        "S32": (
            f"{S[3]} - {S[2]}",
            f"q^2*J(10;50)/J(20;50)*{S[5]} - {P3}",
            "S3 - S2",
        ),
        "CHAN": (
            "P(50;50)^2/J(-5,25,35;50)",
            "L(75,5,0;50,-5;alt)/J(30,40;50) + L(75,95,0;50,25;alt)/J(-30,10;50)"
            " + L(75,125,0;50,35;alt)/J(-10,-40;50)",
            "three-term partial fractions at (q^50, q^-5, q^25, q^35)",
        ),
        "MAO": (
            "P(2;2)",
            "J(20;50)*P(50;50)/J(10;50) - q^2*P(50;50) - q^4*J(10;50)*P(50;50)/J(20;50)",
            "quintuple-type dissection of (q^2;q^2)",
        ),
        "DISP": (
            "1 - J(20;50)/(q^2*J(10;50)) + q^2*J(10;50)/J(20;50)",
            "-P(2;2)/(q^2*P(50;50))",
            "bracket ratio form of the dissection",
        ),
        "LEAA": (
            f"({P0} - {P3} - 2*{P4})/P(2;2)",
            _A_SUM,
            "P0 - P3 - 2 P4 over (q^2;q^2)",
        ),
        "BR1": (
            "J(15,15;50)/J(5,10,10;50) + q^5*J(15;50)/J(10,20;50) - q^10*J(5;50)/J(20,20;50)",
            "J(10,20;50)/J(5,5,15;50)",
            "bracket identity, q^(5n) part",
        ),
        "BR2": (
            "q^6*J(5;50)/J(10,10;50) + q^11*J(5,5;50)/J(10,15,20;50) - q^6*J(25;50)/J(20,20;50)",
            "0",
            "bracket identity, q^(5n+1) part",
        ),
        "BR3": (
            "q^2*J(25;50)/J(10,10;50) - q^2*J(15,15;50)/J(5,10,20;50) + q^7*J(15;50)/J(20,20;50)",
            "0",
            "bracket identity, q^(5n+2) part",
        ),
        "BR4": (
            "q^3*J(15;50)/J(10,10;50) + q^8*J(5;50)/J(10,20;50) - q^13*J(5,5;50)/J(15,20,20;50)",
            "q^3*J(10,20;50)/J(5,15,15;50)",
            "bracket identity, q^(5n+3) part",
        ),
        "BR5": (
            "q^9*J(5,5;50)/J(10,10,15;50) + q^4*J(25;50)/J(10,20;50) + q^4*J(15,15;50)/J(5,20,20;50)",
            "2*q^4*J(10,20;50)/J(5,15,25;50)",
            "bracket identity, q^(5n+4) part",
        ),
        "PP51": (
            "q^10*J(5,5,10,10;50) - J(15,15,20,20;50)",
            "q^5*J(5,10,15,20;50) - J(10,10,10,20,20,20;50)/J(5,15;50)",
            "cleared form of BR1",
        ),
        "PP52": (
            "J(15,15,20,20;50) - J(10,20,25,25;50)",
            "q^10*J(5,5,10,10;50)",
            "four-term identity, first specialization",
        ),
        "CHU1": (*chu_sides(45, 10, 30, 25, 25), "four-term identity at (45,10,30,25,25)"),
        "CHU2": (*chu_sides(45, 5, 35, 25, 25), "four-term identity at (45,5,35,25,25)"),
        "PAA": (
            _CUI_DIFF,
            f"-L(75,25,0;50,5;alt)/P(50;50) - L(75,125,49;50,35;alt)/P(50;50) + {_A_SUM}",
            "generating function of N0(1,5,n) - N0(2,5,n)",
        ),
    }
    return [CatalogEntry(name, _ex(l), _ex(r), 400, 50, anchor) for name, (l, r, anchor) in pairs.items()]


def _t2_entry() -> CatalogEntry:
    return CatalogEntry(
        "T2",
        lambda prec: rank_diff_series(1, 2, 5, (5, 2), prec),
        _ex("P(5;5)^2/P(2;2)"),
        60, 5, "N0(1,5,5n+2) - N0(2,5,5n+2)",
    )


# right sides as originally printed, for entries stored in corrected form
CATALOG_ERRATA: dict[str, str] = {
    "LEAA": _A_SUM_PRINTED,
    "PAA": f"L(75,25,0;50,5;alt)/P(50;50) - L(75,125,49;50,35;alt)/P(50;50) + {_A_SUM_PRINTED}",
}

CATALOG: dict[str, CatalogEntry] = {
    e.name: e for e in _group_entries() + _bracket_entries() + [_t2_entry()]
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def verify(name: str, prec: int | None = None, perturb: tuple[int, int] | None = None) -> Report:
    """Compare both sides of catalog entry ``name`` through ``q^prec``.

    ``perturb = (exponent, delta)`` adds ``delta`` to one right-side
    coefficient; used for negative controls.
    """
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}")
    entry = CATALOG[name]
    prec = entry.default_prec if prec is None else prec
    if prec < 1:
        raise ValueError("precision must be >= 1")
    start = time.perf_counter()
    lhs = entry.left(prec + 1)
    rhs = entry.right(prec + 1)
    if perturb is not None:
        e, delta = perturb
        rhs = rhs + QSeries.monomial(e, rhs.precision, delta)
    mismatch = lhs.first_mismatch(rhs, prec + 1)
    covered = min(lhs.precision, rhs.precision) > prec
    ms = int((time.perf_counter() - start) * 1000)
    return Report(
        name, prec, mismatch is None and covered, mismatch, ms,
        entry.period, prec / entry.period, {"anchor": entry.anchor},
    )


def verify_all(prec: int | None = None, jobs: int = 1, names: list[str] | None = None) -> list[Report]:
    """Verify every entry (at its default precision unless ``prec`` is given), sorted by name."""
    names = list(CATALOG) if names is None else names
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda n: verify(n, prec), names))
    else:
        reports = [verify(n, prec) for n in names]
    return sorted(reports, key=lambda r: r.name)


def _modulus(alpha: int) -> int:
    return 5 ** ((alpha + 1) // 2)


def check_congruence_e(alpha: int, n_count: int) -> Report:
    """``e(5^alpha n + lambda_alpha) = 0 mod 5^floor((alpha+1)/2)`` for ``0 <= n < n_count``."""
    if alpha < 1 or n_count < 1:
        raise ValueError("need alpha >= 1 and n_count >= 1")
    start = time.perf_counter()
    step, off = 5**alpha, lam(alpha)
    need = step * (n_count - 1) + off + 1
    e = e_series(need)
    mod = _modulus(alpha)
    failures = []
    min_pi = float("inf")
    for n in range(n_count):
        v = e[step * n + off]
        min_pi = min(min_pi, padic(v))
        if v % mod:
            failures.append((n, v))
    ms = int((time.perf_counter() - start) * 1000)
    first = None
    if failures:
        n, v = failures[0]
        first = (step * n + off, v % mod, 0)
    return Report(
        f"conen[alpha={alpha}]", need - 1, not failures, first, ms,
        details={"modulus": mod, "count": n_count, "failures": len(failures), "min_padic": min_pi},
    )


def check_theorem_main(alpha: int, n_count: int, max_n: int = MAX_ORACLE_N) -> Report:
    """Oracle check of ``N0(1,5,m) = N0(2,5,m) mod 5^floor((alpha+1)/2)``
    at ``m = 5^(alpha+1) n + 5 lambda_alpha + 2``."""
    if alpha < 1 or n_count < 1:
        raise ValueError("need alpha >= 1 and n_count >= 1")
    step, off = 5 ** (alpha + 1), 5 * lam(alpha) + 2
    top = step * (n_count - 1) + off
    if top > max_n:
        feasible = max(0, (max_n - off) // step + 1)
        raise BudgetError(
            f"argument {top} exceeds the oracle budget {max_n} (at most {feasible} values fit); "
            f"use check_congruence_e for this alpha",
            feasible=feasible,
        )
    start = time.perf_counter()
    mod = _modulus(alpha)
    rows, failures = [], []
    for n in range(n_count):
        m = step * n + off
        a, b = n0(1, 5, m, max_n), n0(2, 5, m, max_n)
        rows.append((m, a, b))
        if (a - b) % mod:
            failures.append((m, a, b))
    ms = int((time.perf_counter() - start) * 1000)
    return Report(
        f"theorem[alpha={alpha}]", top, not failures, failures[0] if failures else None, ms,
        details={"modulus": mod, "count": n_count, "arguments": [r[0] for r in rows],
                 "differences": [r[1] - r[2] for r in rows]},
    )
