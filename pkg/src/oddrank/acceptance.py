"""The acceptance suite: eight criteria, each an exact check returning a result line.

Shared by ``oddrank selftest`` and the test-suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .arrays import (
    S_SHIFT, ArrayFamily, L_series, cd_arrays, check_l2al, check_lepi, e_series, lam,
)
from .durfee import enumerate_ranks, rank_diff_series
from .errors import BudgetError
from .identities import CATALOG, check_congruence_e, check_theorem_main, verify
from .products import RHO, T, cusp_count, cusp_orders, pochhammer_expand
from .series import QSeries
from .uops import TRhoExpr, u_ij

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]

E_LIMIT = 15000


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


def criterion_1() -> tuple[bool, str]:
    lhs = rank_diff_series(1, 2, 5, (5, 2), 61)
    rhs = pochhammer_expand(5, 5, 61, 2) * pochhammer_expand(2, 2, 61, -1)
    head = lhs.coefficients(0, 10)
    ok = lhs.first_mismatch(rhs, 61) is None and head == [1, 0, 1, 0, 2, -2, 3, -2, 5, -4]
    return ok, f"through q^60, head {head}"


def criterion_2() -> tuple[bool, str]:
    r1 = check_theorem_main(1, 15)
    r2 = check_theorem_main(2, 3)
    ok = r1.passed and r2.passed
    return ok, f"alpha=1 args {r1.details['arguments'][0]}..{r1.details['arguments'][-1]}, alpha=2 args {r2.details['arguments']}"


def criterion_3() -> tuple[bool, str]:
    e_series(E_LIMIT + 1)
    parts = []
    ok = True
    for alpha, mod in zip(range(1, 5), (5, 5, 25, 25)):
        count = (E_LIMIT - lam(alpha)) // 5**alpha + 1
        rep = check_congruence_e(alpha, count)
        ok &= rep.passed and rep.details["modulus"] == mod
        parts.append(f"a{alpha}:{count}x mod {mod}")
    return ok, ", ".join(parts)


def _control_exponent(name: str, prec: int) -> int:
    return prec // 2


def criterion_4() -> tuple[bool, str]:
    passed = 0
    controls = 0
    for name, entry in CATALOG.items():
        if verify(name).passed:
            passed += 1
        p = entry.default_prec
        if not verify(name, p, perturb=(_control_exponent(name, p), 1)).passed:
            controls += 1
    n = len(CATALOG)
    return passed == n and controls == n, f"{passed}/{n} entries pass, {controls}/{n} controls fail"


def criterion_5() -> tuple[bool, str]:
    rows = 0
    for tag in S_SHIFT:
        fam = ArrayFamily(*tag, n_cap=100)
        for k in range(-30, 31):
            got = fam.row(k).evaluate(101)
            if got.first_mismatch(u_ij(tag[0], tag[1], k, 101), 101) is not None:
                return False, f"row {tag} k={k} disagrees with u_ij"
            rows += 1
    lepi = check_lepi((-30, 30), 30)
    l2al = check_l2al(6, 40)
    ok = all(r.passed for r in lepi) and l2al.passed
    slack = min(r.min_slack for r in lepi)
    return ok, f"{rows} rows to q^100, lepi min slack {slack}, l2al min slack {l2al.min_slack}"


def criterion_6() -> tuple[bool, str]:
    for alpha in range(1, 5):
        ref = L_series(alpha, 41, "definition")
        for route in ("u-recursion", "t-rho"):
            if ref.first_mismatch(L_series(alpha, 41, route), 41) is not None:
                return False, f"alpha={alpha} route {route} disagrees"
    c, d = cd_arrays(1)
    exact = c.rows[1] == {1: 5, 2: 25} and d.rows[1] == {1: -5}
    l1 = TRhoExpr({1: 5, 2: 25}, {1: -5}).evaluate(40)
    ok = exact and l1.first_mismatch(L_series(1, 40), 40) is None
    return ok, "routes agree for alpha=1..4 through q^40; L1 = 5t + 25t^2 - 5 rho t"


def criterion_7() -> tuple[bool, str]:
    sym = all(enumerate_ranks(n).is_symmetric() for n in range(1, 121))
    rng = random.Random(20240501)
    fact = True
    for _ in range(100):
        k = rng.randint(2, 7)
        f = QSeries([rng.randint(-50, 50) for _ in range(rng.randint(1, 12))], rng.randint(-2, 2))
        g = QSeries([rng.randint(-50, 50) for _ in range(rng.randint(k * 8, k * 15))], rng.randint(-5, 5))
        lhs = (f.substitute_power(k) * g).extract_progression(k, 0)
        rhs = f * g.extract_progression(k, 0)
        # the extracted side may see a later effective order, hence more precision
        fact &= lhs.first_mismatch(rhs) is None
    cusps = True
    for eq in (RHO, T):
        orders = cusp_orders(eq, 10)
        cusps &= sum(o * cusp_count(c, 10) for c, o in orders.items()) == 0
    cusps &= cusp_orders(T, 10) == {1: -1, 2: -1, 5: 1, 10: 1}
    ok = sym and fact and cusps
    return ok, f"symmetry n<=120 {sym}, factorization x100 {fact}, cusp sums {cusps}"


def criterion_8() -> tuple[bool, str]:
    # the all-alpha claims are out of reach of the oracle; record that and
    # check the next alpha on the e-series route instead
    try:
        check_theorem_main(3, 1)
        return False, "alpha=3 oracle check unexpectedly within budget"
    except BudgetError as exc:
        infeasible = exc.feasible == 0
    count = (E_LIMIT - lam(5)) // 5**5 + 1
    rep = check_congruence_e(5, count)
    ok = infeasible and rep.passed
    return ok, (f"alpha=3 direct oracle infeasible (budget), alpha=5 e-series {count} values "
                f"mod {rep.details['modulus']} {'pass' if rep.passed else 'fail'}; "
                "large alpha rests on criteria 3 and 5")


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("odd Durfee oracle equals (q^5;q^5)^2/(q^2;q^2)", criterion_1),
    2: ("main congruence, direct oracle", criterion_2),
    3: ("e-series congruence up to 15000", criterion_3),
    4: ("identity catalog and negative controls", criterion_4),
    5: ("array rows, lepi and l2al bounds", criterion_5),
    6: ("three routes to L_alpha", criterion_6),
    7: ("structural properties", criterion_7),
    8: ("desk-scale limits recorded", criterion_8),
}


def run_criterion(number: int) -> CriterionResult:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - start)


def run_all(numbers: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(n) for n in (numbers or sorted(CRITERIA))]
