from __future__ import annotations

import pytest

from padic_teich import theta as th
from padic_teich.errors import (BranchUnavailable, DomainError, MissingRoot, NotTorsion,
                                PoleAtTorsionPoint, ProductMismatch)
from padic_teich.padic import PrimeContext

CTX = PrimeContext(5, 40)


@pytest.fixture(scope="module")
def curve():
    return th.TateCurve(CTX(15), 24)


@pytest.fixture(scope="module")
def curve3():
    # q~ = 5, l = 3, q = 5^6
    return th.TateCurve.from_q_tilde(CTX(5), 3, 12)


def test_curve_validation():
    with pytest.raises(DomainError):
        th.TateCurve(CTX(3))
    with pytest.raises(DomainError):
        th.TateCurve.from_q_tilde(CTX(5), 4)
    with pytest.raises(DomainError):
        th.TateCurve(CTX(5 ** 6), 12, CTX(10), 3)


def test_theta_zero_and_type(curve):
    assert th.theta_fundamental(1, curve).is_zero()
    for u in th.sample_units(curve, 10, seed=1):
        r = th.theta_fundamental(u, curve) + u * th.theta_fundamental(curve.q * u, curve)
        assert r.valuation_lower_bound() >= (curve.T - 1) * curve.vq
    u = th.sample_units(curve, 1, seed=2)[0]
    assert th.theta_c(u, 1, curve) == th.theta_fundamental(u, curve)


def test_theta_out_of_range(curve):
    from padic_teich.errors import OutOfRange
    with pytest.raises(OutOfRange):
        th.theta_fundamental(CTX(5) ** 30, th.TateCurve(CTX(15), 4))


def test_eta(curve):
    e = th.eta(curve)
    assert (e - 1).valuation_lower_bound() >= curve.vq
    # first factors: eta / ((1 - q)(1 - q^2)) = 1 + O(q^3)
    q = curve.q
    assert (e / ((1 - q) * (1 - q * q)) - 1).valuation_lower_bound() >= 3 * curve.vq


def test_theta_tilde(curve3):
    assert th.theta_tilde(1, curve3).is_zero()
    assert th.theta_tilde(-1, curve3).is_zero()
    with pytest.raises(MissingRoot):
        th.theta_tilde(2, th.TateCurve(CTX(15)))


def test_theta_tilde_series_cross_check():
    # q = 5^8 is an 8th power
    cur = th.TateCurve(CTX(5 ** 8), 12)
    for ut in th.sample_units(cur, 5, seed=3):
        lhs = -th.eta(cur) * th.theta_fundamental(ut * ut, cur) / ut
        assert (lhs - th.theta_tilde_series(ut, cur)).valuation_lower_bound() >= CTX.N


def test_qperiodic(curve3):
    for ut in th.sample_units(curve3, 10, avoid=[-1], seed=4):
        res = th.qperiodic_residual(ut, 1, curve3)
        assert res.valuation_lower_bound() >= CTX.N - 2


@pytest.mark.parametrize("p,l", [(5, 3), (5, 5), (7, 3), (7, 5)])
def test_torsion_values(p, l):
    ctx = PrimeContext(p, 40)
    cur = th.TateCurve.from_q_tilde(ctx(p), l, 24)
    for j in range(1, cur.l_star + 1):
        assert th.theta_torsion_value(j, cur) == ctx(p) ** (j * j)
        assert th.torsion_check(j, cur).residual_valuation >= ctx.N - 2


def test_torsion_examples(curve3):
    assert th.theta_torsion_value(1, curve3) == 5
    cur5 = th.TateCurve.from_q_tilde(CTX(5), 5, 24)
    assert th.theta_torsion_value(2, cur5) == 5 ** 4
    with pytest.raises(PoleAtTorsionPoint):
        th.theta_torsion_value(3, curve3)
    with pytest.raises(DomainError):
        th.theta_torsion_value(2, curve3)


def test_functional_equation(curve3):
    u = th.sample_units(curve3, 1, seed=5)[0]
    rep = th.functional_equation_check(u, 0, curve3)
    assert rep["root_of_unity"] == 1 and rep["matches_sign"]
    for j in (1, 2, 3):
        rep = th.functional_equation_check(u, j, curve3)
        assert rep["matches_sign"]
        assert rep["excess_valuation"] >= curve3.vq
        shifted = th.functional_equation_check(curve3.q * u, j, curve3)
        assert shifted["root_of_unity"] == rep["root_of_unity"]
    with pytest.raises(BranchUnavailable):
        th.functional_equation_check(u, 1, th.TateCurve(CTX(15)))


def test_divisors(curve3):
    a = CTX(2)
    d = th.TateDivisor.of(curve3, [(a, 1), (a * curve3.q, 1), (CTX(3), -2)])
    assert d.degree() == 0
    assert d.points[0] == (a, 2)
    assert not d.is_principal()
    e = th.TateDivisor.of(curve3, [(CTX(2), 1), (CTX(3), 1), (CTX(6), -1), (CTX(1), -1)])
    assert e.is_principal()
    assert (d - d).points == ()


def test_build_periodic_function(curve3):
    a, b = CTX(2), CTX(3)
    f = th.build_periodic_function([a], [a], curve3)
    for u in th.sample_units(curve3, 3, avoid=[a], seed=6):
        assert f(u) == 1
    g = th.build_periodic_function([a, b], [a * b, 1], curve3, check=10)
    assert g.divisor.is_principal()
    with pytest.raises(ProductMismatch):
        th.build_periodic_function([a], [b], curve3)


def test_torsion_function(curve3):
    with pytest.raises(NotTorsion):
        th.torsion_function(1, curve3)
    with pytest.raises(NotTorsion):
        th.torsion_function(CTX(7), curve3)
    Q = curve3.q_tilde ** 2
    r = th.torsion_function(Q, curve3)
    for u in th.sample_units(curve3, 5, seed=7):
        assert r.type_residual(u) >= 2 * curve3.vq
        assert th.torsion_ratio_residual(Q, 1, u, curve3) >= curve3.vq
        F = th.normalized_torsion_power(Q, curve3)
        assert F.periodic_residual(u) >= curve3.vq


def test_dim_theta_space(curve3):
    assert th.dim_theta_space(CTX(3), 3, curve3) == 3
    assert th.dim_theta_space(curve3.q ** 2, 0, curve3) == 1
    assert th.dim_theta_space(CTX(3), 0, curve3) == 0
    assert th.dim_theta_space(CTX(3), -1, curve3) == 0


def test_json(curve3):
    back = th.TateCurve.from_json(CTX, curve3.to_json())
    assert back.q == curve3.q and back.l == 3 and back.T == curve3.T
