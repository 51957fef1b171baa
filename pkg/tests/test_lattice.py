from __future__ import annotations

from fractions import Fraction

import pytest

from padic_teich import lattice as lt
from padic_teich.errors import DomainError
from padic_teich.padic import PrimeContext, padic_log, unit_decompose


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lift_compatibility(p):
    for t in range(p):
        for m in range(2, 9):
            assert (lt.frobenius_lift(t, m, p) - lt.frobenius_lift(t, m - 1, p)) % p ** m == 0


def test_frobenius_lift_examples():
    assert lt.frobenius_lift(0, 3, 5) == 0
    assert lt.frobenius_lift(1, 1, 5) == (2 ** 5 - 1) % 25
    with pytest.raises(DomainError):
        lt.frobenius_lift(5, 1, 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_limit_consistency(p):
    ctx = PrimeContext(p, 9)
    for t in range(p - 1):
        lim = lt.lift_limit(t, ctx).to_int()
        for m in range(1, 9):
            assert (lim - lt.frobenius_lift(t, m, p)) % p ** m == 0
    with pytest.raises(DomainError):
        lt.lift_limit(p - 1, ctx)


def test_log_volume_examples():
    assert lt.log_volume(3, 1, 1, 1, "logShellNormalized").log_p_coeff == -2
    assert lt.log_volume(5, 1, 2, 1, "onePlusP").log_p_coeff == -2
    v = lt.log_volume(5, 1, 1, 1, "unitsFull")
    assert v.log_p_coeff == 0 and v.unit_terms == ((1, 1),)
    for e in (1, 2, 3):
        for f in (1, 2):
            for m in (1, 2):
                got = lt.log_volume(7, e, f, m, "logShellNormalized").log_p_coeff
                assert got == -(Fraction(m, e * f) + Fraction(1, e))
    with pytest.raises(DomainError):
        lt.log_volume(5, 1, 1, 1, "bogus")


def test_log_volume_algebra():
    a = lt.log_volume(5, 1, 1, 1, "unitsFull")
    assert (a + a).unit_terms == ((2, 1),)
    assert (a + a.scale(-1)) == lt.LogVolume()
    assert str(lt.LogVolume(Fraction(-2))) == "-2*log(p)"


def test_log_link():
    ctx = PrimeContext(5, 3)
    cell = lt.start_cell(ctx)
    nxt, _ = lt.log_link(cell)
    assert nxt.unit == 1 and nxt.m == 1 and nxt.n == 0
    nxt, vol = lt.log_link(lt.start_cell(ctx, 6))
    assert nxt.unit.to_int() == 56
    assert vol == lt.log_volume(5, 1, 1, 1, "logShellNormalized")


def test_theta_link():
    ctx = PrimeContext(5, 3)
    cell = lt.HodgeCell(0, 0, (0,), ctx(1))
    assert lt.theta_link(cell, 5)[0].pilot == (0, 0)
    one = lt.start_cell(ctx)
    assert lt.theta_link(one, 3)[0].pilot == (1,)
    out, vol = lt.theta_link(one, 5)
    assert out.pilot == (1, 4) and out.n == 1 and out.m == 0
    assert vol == lt.LogVolume()
    with pytest.raises(DomainError):
        lt.theta_link(one, 4)


def test_walks():
    ctx = PrimeContext(5, 6)
    start = lt.start_cell(ctx)
    tr = lt.lattice_walk(start, ["L"])
    assert tr.cells[-1].pilot == start.pilot and tr.cells[-1].unit == 1
    tr = lt.lattice_walk(start, ["T", "L"], l=5)
    assert [(c.n, c.m) for c in tr.cells] == [(0, 0), (1, 0), (1, 1)]
    single = lt.log_volume(5, 1, 1, 1, "logShellNormalized")
    for k in (1, 2, 4):
        assert lt.lattice_walk(start, ["L"] * k).total == single.scale(k)
    a = lt.lattice_walk(start, ["T", "L"])
    b = lt.lattice_walk(a.cells[-1], ["L", "T"])
    assert lt.lattice_walk(start, ["T", "L", "L", "T"]).total == a.total + b.total
    with pytest.raises(DomainError):
        lt.lattice_walk(start, [])
    with pytest.raises(DomainError):
        lt.lattice_walk(start, ["X"])


def test_hodge_cell_rejects_non_principal_unit():
    ctx = PrimeContext(5, 6)
    with pytest.raises(DomainError):
        lt.HodgeCell(0, 0, (1,), ctx(2))


def test_vertical_consistency():
    # a = sum omega(a_i) p^i: the 1 + pZ_p part carries the whole log
    ctx = PrimeContext(5, 8)
    for a in (2, 7, 13, 1 + 5 * 11):
        s, r, g = unit_decompose(ctx(a))
        assert padic_log(ctx(a)) == padic_log(g)
