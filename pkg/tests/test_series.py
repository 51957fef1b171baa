from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_teich.errors import DomainError, PadicError
from padic_teich.padic import PrimeContext
from padic_teich.series import (TruncSeries, contracting_power, contracting_root, series_exp,
                                series_log, unipotent_power)

CTX = PrimeContext(5, 10, 6)


def S(values, D=None):
    return TruncSeries.from_values(CTX, values, D)


def test_arithmetic_truncates_at_D():
    a = S([1, 1])
    assert (a * a) == S([1, 2, 1])
    assert (a ** 7)[6] == 7
    assert len((a ** 7).coeffs) == 7


def test_inverse():
    a = S([1, 5, 3])
    assert (a * a.inverse()) == TruncSeries.one(CTX)
    b = S([5, 1])
    assert (b * b.inverse()) == TruncSeries.one(CTX)
    with pytest.raises(PadicError):
        S([0, 1]).inverse()


def test_compose_needs_zero_constant():
    with pytest.raises(DomainError):
        S([0, 1]).compose(S([1, 1]))


def test_geometric_series_compose():
    # 1/(1 - x) composed with 5x
    geo = S([1] * 7)
    got = geo.compose(S([0, 5]))
    assert got == S([5 ** k for k in range(7)])


def test_evaluate_and_taylor_shift():
    poly = S([3, 0, 2, 1])
    assert poly.evaluate(CTX(2)) == 3 + 8 + 8
    shifted = poly.taylor_shift(2)
    # (x+2)^3 + 2(x+2)^2 + 3 = x^3 + 8x^2 + 20x + 19
    assert shifted == S([19, 20, 8, 1])


def test_log_exp_against_rationals():
    t = S([0, 5])
    oracle = S([0] + [Fraction((-1) ** (k - 1) * 5 ** k, k) for k in range(1, 7)])
    assert series_log(1 + t) == oracle
    assert series_exp(series_log(1 + t)) == 1 + t


def test_contracting_power_matches_direct():
    s = S([1, 5, 10, 3 * 5])
    direct = ((s ** 25) - 1).scale(Fraction(1, 25))
    got = contracting_power(s, 2)
    assert (got - direct).valuation() >= got.min_absprec() - 2
    assert unipotent_power(s, 1) == s ** 5


def test_contracting_root_inverts_power():
    s = S([1, 5, 10, 15, 0, 25])
    for m in (1, 2):
        assert contracting_root(contracting_power(s, m), m) == s


def test_json_round_trip():
    s = S([0, Fraction(1, 5), 7, 0, 3])
    assert TruncSeries.from_json(CTX, s.to_json()) == s


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 5 ** 9), min_size=7, max_size=7),
       st.lists(st.integers(0, 5 ** 9), min_size=7, max_size=7))
def test_derivative_is_a_derivation(a, b):
    f, g = S(a), S(b)
    lhs = (f * g).derivative()
    rhs = f.derivative() * g.truncate(5) + f.truncate(5) * g.derivative()
    assert lhs == rhs
