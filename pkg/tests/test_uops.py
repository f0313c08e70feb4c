import random

import pytest

from oddrank.arrays import RECURRENCE
from oddrank.products import RHO, T, Z
from oddrank.series import QSeries
from oddrank.uops import (
    GROUP_ERRATA, GROUPS, TRhoExpr, a_l_poly, reduce_check, t_powers, u5, u_ij,
)

from oracles import partitions


def test_u5_examples():
    s = QSeries.from_dict({0: 2, 5: 3, 10: -1, 7: 9}, 15)
    assert u5(s).coefficients(0, 3) == [2, 3, -1]
    p = partitions(10)
    assert u5(Z.expand(50))[2] == p[4] == 5


def test_u5_linear_and_factorizes():
    rng = random.Random(11)
    for _ in range(30):
        g = QSeries([rng.randint(-9, 9) for _ in range(12)], rng.randint(-2, 2))
        h = QSeries([rng.randint(-9, 9) for _ in range(90)], rng.randint(-5, 5))
        k = QSeries([rng.randint(-9, 9) for _ in range(90)], rng.randint(-5, 5))
        assert u5(h + k).first_mismatch(u5(h) + u5(k)) is None
        assert u5(g.substitute_power(5) * h).first_mismatch(g * u5(h)) is None


def test_u_ij_examples():
    prec = 80
    assert u_ij(0, 0, -1, prec).first_mismatch(TRhoExpr({0: 1, 1: 5}, {0: -1}).evaluate(prec)) is None
    u = u_ij(0, 0, 0, prec)
    assert u[2] == 5
    t, rho = T.expand(3), RHO.expand(3)
    assert 5 * t[2] + 25 * (t * t)[2] - 5 * (rho * t)[2] == 5
    assert u_ij(1, 0, 0, prec).first_mismatch(QSeries.monomial(0, prec, -1)) is None


def test_u_ij_rejects_bad_tag():
    with pytest.raises(ValueError):
        u_ij(2, 0, 0, 10)


@pytest.mark.parametrize("tag", [(0, 0), (0, 1), (1, 0), (1, 1)])
@pytest.mark.parametrize("k", [0, -1, -2, -3, -4])
def test_group_images(tag, k):
    prec = 300
    lhs = u_ij(tag[0], tag[1], k, prec)
    assert lhs.first_mismatch(GROUPS[tag][k].evaluate(prec)) is None


def test_printed_erratum_fails():
    (i, j, k), printed = next(iter(GROUP_ERRATA.items()))
    assert (i, j, k) == (1, 0, -1)
    mismatch = u_ij(i, j, k, 50).first_mismatch(printed.evaluate(50))
    assert mismatch == (1, 71, 121)


def test_a_l_examples():
    assert a_l_poly(0).p == {1: -1}
    assert a_l_poly(1).p == {1: -10, 2: -25}
    assert a_l_poly(4).p[5] == -5**8 and max(a_l_poly(4).p) == 5
    with pytest.raises(ValueError):
        a_l_poly(5)


def test_recurrence_table_is_minus_a_l():
    derived = {}
    for l in range(5):
        for n, c in a_l_poly(l).p.items():
            derived[(5 - l, n)] = -c
    assert derived == {(dk, dn): c for dk, dn, c in RECURRENCE}


@pytest.mark.parametrize("tag", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_reduction_identity(tag):
    for k in range(1, 11):
        assert reduce_check(tag, k, 100)
    assert reduce_check(tag, -6, 60)


def test_reduction_rebuilds_group_two_k0():
    # U(1) = -sum_l a_l(t) U(t^(l-5)); the t^-5 image comes from the downward recurrence
    from oddrank.arrays import ArrayFamily

    fam = ArrayFamily(0, 1)
    acc = TRhoExpr()
    for l in range(5):
        acc = acc + (-fam.row(l - 5)).times_t_poly(a_l_poly(l).p)
    assert acc == GROUPS[(0, 1)][0]
    assert acc.evaluate(120).first_mismatch(u_ij(0, 1, 0, 120)) is None


def test_trho_algebra_and_powers():
    e = TRhoExpr({1: 2}, {0: 1})
    assert (e + (-e)).is_zero()
    assert e.scale(3).p == {1: 6}
    assert e.times_t_poly({-1: 1}).p == {0: 2}
    tp = t_powers(40)
    assert (tp.power(3) * tp.power(-3)).first_mismatch(QSeries.one(40)) is None
    assert tp.power(-2).first_mismatch((T ** -2).expand(40)) is None
