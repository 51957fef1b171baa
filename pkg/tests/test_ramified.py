from __future__ import annotations

import random
from fractions import Fraction

import pytest

from padic_teich.errors import DomainError, ModulusMismatch, WildRamificationUnsupported
from padic_teich.padic import INF, PrimeContext
from padic_teich.ramified import (EisensteinModulus, different_order, ext_log, ext_valuation,
                                  root_diffeo_check)

C5 = PrimeContext(5, 12)
C7 = PrimeContext(7, 12)


def test_modulus_validation():
    with pytest.raises(DomainError):
        EisensteinModulus(C5, (25, 0))
    with pytest.raises(DomainError):
        EisensteinModulus(C5, (5, 1))
    with pytest.raises(DomainError):
        EisensteinModulus.from_ints(C5, [-5, 0, 2])


def test_pi_powers():
    g = EisensteinModulus.x_e_minus_p(C5, 2)
    pi = g.pi()
    assert pi * pi == g.element([5])
    assert ext_valuation(pi) == Fraction(1, 2)
    g3 = EisensteinModulus.from_ints(C5, [10, 5, 0, 1])
    pi = g3.pi()
    # pi^3 = -(5 pi + 10)
    assert pi * pi ** 2 == g3.element([-10, -5])
    assert ext_valuation(pi ** 3) == 1


def test_valuation_examples():
    g = EisensteinModulus.x_e_minus_p(C5, 2)
    assert ext_valuation(g.element([5])) == 1
    assert ext_valuation(g.pi() + g.element([5])) == Fraction(1, 2)
    assert ext_valuation(g.element([0])) == INF
    assert g.pi() + g.element([0]) == g.pi()


def test_valuation_laws_random():
    rng = random.Random(1)
    g = EisensteinModulus.from_ints(C5, [5, 0, 10, 1])
    for _ in range(200):
        a = g.element([rng.randrange(1, 5 ** 6) for _ in range(3)])
        b = g.element([rng.randrange(1, 5 ** 6) for _ in range(3)])
        va, vb = ext_valuation(a), ext_valuation(b)
        assert ext_valuation(a * b) == va + vb
        s = ext_valuation(a + b)
        assert s >= min(va, vb)
        if va != vb:
            assert s == min(va, vb)


def test_modulus_mismatch():
    g = EisensteinModulus.x_e_minus_p(C5, 2)
    h = EisensteinModulus.x_e_minus_p(C5, 3)
    with pytest.raises(ModulusMismatch):
        g.pi() + h.pi()


def test_g_of_pi_vanishes():
    for g in (EisensteinModulus.x_e_minus_p(C5, 2), EisensteinModulus.from_ints(C5, [10, 5, 0, 1]),
              EisensteinModulus.x_e_minus_p(C7, 4)):
        assert g.eval_poly(g.poly(), g.pi()).is_zero()


@pytest.mark.parametrize("e,p", [(2, 5), (3, 7), (4, 7)])
def test_different_order_tame(e, p):
    g = EisensteinModulus.x_e_minus_p(PrimeContext(p, 12), e)
    assert different_order(g) == (e - 1, Fraction(e - 1, e))


def test_different_order_trivial_extension():
    g = EisensteinModulus.x_e_minus_p(C5, 1)
    assert different_order(g) == (0, None)


def test_wild_guard():
    # e = p = 5: g'(pi) = 5 pi^4 has valuation 9/5 but gcd(e, p) != 1
    g = EisensteinModulus.x_e_minus_p(C5, 5)
    assert different_order(g) == (9, None)
    with pytest.raises(WildRamificationUnsupported) as exc:
        different_order(g, strict=True)
    assert exc.value.d == 9


def test_ext_log_is_additive():
    g = EisensteinModulus.x_e_minus_p(C5, 2)
    a, b = g.element([0, 5]), g.element([25, 5])
    lhs = ext_log(a + b + a * b)
    rhs = ext_log(a) + ext_log(b)
    assert ext_valuation(lhs - rhs) >= 8


def test_root_diffeo_check():
    g = EisensteinModulus.x_e_minus_p(C5, 3)
    rep = root_diffeo_check(g, k=1, samples=50)
    assert rep["pairs"] == 50 and rep["lipschitz_ok"] and rep["phi_fixes_pi"]
    assert rep["bound"] == Fraction(1, 25)
    assert root_diffeo_check(EisensteinModulus.x_e_minus_p(C5, 2))["phi_fixes_pi"]
    with pytest.raises(DomainError):
        root_diffeo_check(EisensteinModulus.x_e_minus_p(C5, 1))
