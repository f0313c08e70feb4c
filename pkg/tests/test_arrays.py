import math

import pytest
from hypothesis import given, settings, strategies as st

from oddrank.arrays import (
    INF, LEPI_GAMMA, RECURRENCE, S_SHIFT, ArrayFamily, L_series, cd_arrays, check_l2al,
    check_lepi, e_series, extend, lam, padic, seed_arrays,
)
from oddrank.errors import CoverageError
from oddrank.products import pochhammer_expand
from oddrank.uops import TRhoExpr, u_ij

from oracles import geometric_inverse, poly_mul, product_oracle


def test_padic():
    assert padic(50) == 2
    assert padic(0) == INF and padic(0) > 10**9
    assert padic(-7) == 0
    assert padic(-125) == 3


@settings(max_examples=200)
@given(st.integers(-10**12, 10**12).filter(lambda x: x != 0))
def test_padic_property(x):
    e = padic(x)
    assert x % 5**e == 0 and x % 5 ** (e + 1) != 0


def test_seed_entries():
    s = seed_arrays()
    assert s["a00"][-1, 0] == 1 and s["a00"][-1, 1] == 5 and s["b00"][-1, 0] == -1
    assert (s["a00"][0, 1], s["a00"][0, 2], s["b00"][0, 1]) == (5, 25, -5)
    assert s["a10"].rows[0] == {0: -1} and s["b10"].rows[0] == {}
    assert s["a11"][0, 0] == -2 and s["b11"][0, 0] == 5


@pytest.mark.parametrize("tag", list(S_SHIFT))
def test_rows_reexpand_to_u_ij(tag):
    fam = ArrayFamily(*tag, n_cap=60)
    for k in list(range(-30, -4, 3)) + list(range(1, 31, 3)):
        assert fam.row(k).evaluate(60).first_mismatch(u_ij(tag[0], tag[1], k, 60)) is None, k


def test_extend_row_one_example():
    a = extend("a00", range(1, 2))
    b = extend("b00", range(1, 2))
    expr = TRhoExpr(a.rows[1], b.rows[1])
    assert expr.evaluate(100).first_mismatch(u_ij(0, 0, 1, 100)) is None


def test_support_law():
    arr = extend("a01", range(-4, 21))
    for k in range(-4, 21):
        lo = math.ceil((k + 2) / 5)
        assert all(arr[k, n] == 0 for n in range(lo - 10, lo))


def test_recurrence_residual_is_zero():
    fam = ArrayFamily(1, 1, n_cap=40)
    for k in range(-25, 26):
        fam.row(k)
    for k in range(-20, 26):
        for part in ("p", "r"):
            for n in range(-10, 40):
                lhs = getattr(fam.rows[k], part).get(n, 0)
                rhs = sum(c * getattr(fam.rows[k - dk], part).get(n - dn, 0) for dk, dn, c in RECURRENCE)
                assert lhs == rhs, (k, n)


def test_caps_and_coverage():
    arr = extend("a10", range(0, 5), n_cap=7)
    with pytest.raises(CoverageError):
        arr[3, 8]
    with pytest.raises(CoverageError):
        arr[9, 0]
    fam = ArrayFamily(0, 0, n_cap=5)
    fam.row(2)
    fam.set_cap(20)
    with pytest.raises(CoverageError):
        fam.row(3)


def test_lepi_all_families():
    reports = check_lepi((-30, 30), 30)
    assert [r.label for r in reports] == [f"lepi:{x}" for x in LEPI_GAMMA]
    for r in reports:
        assert r.passed and r.min_slack >= 0
        assert r.notes["hypothesis_rows_-4..0"]


def test_lepi_seed_window_and_zero_entries():
    for r in check_lepi((-4, 0), 10):
        assert r.passed
        assert all(e.slack == INF for e in r.entries if e.value == 0)


def test_report_fails_on_negative_slack():
    rep = check_lepi((-4, 0), 10)[0]
    rep.entries[0] = type(rep.entries[0])("a00", 0, 0, 1, 0, 5)
    assert not rep.passed and rep.failures()


def test_cd_seed_and_support():
    c, d = cd_arrays(6, 40)
    assert c.rows[1] == {1: 5, 2: 25} and d.rows[1] == {1: -5}
    for alpha in range(1, 7):
        delta = 1 if alpha % 2 else 0
        assert all(n >= delta for n in c.rows[alpha])
        assert all(n >= delta for n in d.rows[alpha])


def test_l2al_bounds():
    rep = check_l2al(6, 40)
    assert rep.passed and rep.notes["support_from_delta"]
    c, _ = cd_arrays(6, 40)
    assert padic(c[1, 1]) == 1
    assert all(padic(c[2, n]) >= 1 + (5 * n + 1) // 3 for n in range(0, 41))


def test_lambda_values():
    assert [lam(a) for a in range(1, 5)] == [3, 8, 83, 208]
    assert lam(2) == (5**2 - 1) // 3


def test_e_series_against_oracle():
    n = 60
    num = poly_mul(product_oracle([(5, 5)], n), product_oracle([(5, 5)], n), n)
    want = poly_mul(num, geometric_inverse(product_oracle([(2, 2)], n), n), n)
    e = e_series(n)
    assert e.coefficients(0, n) == [want.get(k, 0) for k in range(n)]
    assert e.coefficients(0, 10) == [1, 0, 1, 0, 2, -2, 3, -2, 5, -4]
    assert e[8] == 5 and e[8] % 5 == 0


def test_conen_on_computed_range():
    e = e_series(5001)
    for alpha in range(1, 5):
        step, off = 5**alpha, lam(alpha)
        n = 0
        while step * n + off < 5001:
            assert padic(e[step * n + off]) >= (alpha + 1) // 2
            n += 1


def test_l_zero_and_l_one():
    for route in ("definition", "u-recursion", "t-rho"):
        assert L_series(0, 20, route).coefficients(0, 20) == [1] + [0] * 19
    want = TRhoExpr({1: 5, 2: 25}, {1: -5}).evaluate(41)
    for route in ("definition", "u-recursion", "t-rho"):
        assert L_series(1, 41, route).first_mismatch(want) is None


@pytest.mark.parametrize("alpha", [2, 3, 4])
def test_l_routes_agree(alpha):
    ref = L_series(alpha, 41, "u-recursion")
    assert ref.first_mismatch(L_series(alpha, 41, "t-rho")) is None
    if alpha < 4:
        assert ref.first_mismatch(L_series(alpha, 41, "definition")) is None


def test_l_route_errors():
    with pytest.raises(ValueError):
        L_series(1, 10, "magic")
    with pytest.raises(ValueError):
        L_series(-1, 10)


def test_l_odd_definition_factor():
    # L_1 = (q^10;q^10)/(q;q)^2 * sum e(5n+3) q^(n+1)
    e = e_series(300)
    inner = {n + 1: e[5 * n + 3] for n in range(50)}
    from oddrank.series import QSeries

    direct = pochhammer_expand(10, 10, 40) * pochhammer_expand(1, 1, 40, -2) * QSeries.from_dict(inner, 40)
    assert direct.first_mismatch(L_series(1, 40)) is None
