"""Haar integrals of products of |P_i(x)|^(e_i) over Z_p by residue-class subdivision.

On a class a + p^k Z_p write x = a + p^k t and expand each factor as
sum b_j t^j.  A factor is resolved on the class when one of these holds:

* constant: v(b_0) is strictly below every other coefficient's lower bound,
  so |P| = |b_0| on the whole class;
* monomial: b_0..b_(j-1) vanish exactly and b_j strictly dominates the
  higher terms, so |P| = |b_j| |t|^j;
* linear: b_1 strictly dominates b_j (j >= 2) and |b_0| <= |b_1|, so P has a
  root t0 in Z_p and |P| = |b_1| |t - t0|.

A class is a leaf when every factor is constant, or all non-constant
factors are monomials (common centre t = 0), or exactly one factor is
linear.  Then the integral is p^-k * C * int_{Z_p} |t|^E dt in closed form.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import (BadReduction, DepthInsufficient, DomainError, VanishingDensity,
                     VanishingForm)
from .padic import INF, PadicNumber, PrimeContext
from .series import TruncSeries


@dataclass(frozen=True, eq=False)
class NormIntegrand:
    """prod_i |P_i(x)|^(e_i) for polynomials P_i (TruncSeries) and integer e_i."""

    factors: tuple

    def __init__(self, factors):
        fs = []
        for poly, e in factors:
            if not isinstance(poly, TruncSeries):
                raise TypeError("factors must be TruncSeries polynomials")
            fs.append((poly, int(e)))
        if not fs:
            raise DomainError("integrand needs at least one factor")
        object.__setattr__(self, "factors", tuple(fs))

    @property
    def ctx(self) -> PrimeContext:
        return self.factors[0][0].ctx

    @classmethod
    def constant(cls, ctx, c=1) -> NormIntegrand:
        return cls([(TruncSeries(ctx, [c]), 1)])

    def to_json(self) -> dict:
        return {"factors": [{"poly": s.to_json(), "exp": e} for s, e in self.factors]}

    @classmethod
    def from_json(cls, ctx, data) -> NormIntegrand:
        return cls([(TruncSeries.from_json(ctx, f["poly"]), f["exp"]) for f in data["factors"]])


@dataclass(frozen=True)
class SerreInvariant:
    value: int
    q: int

    def __post_init__(self):
        if not 1 <= self.value <= self.q - 1:
            raise DomainError("invariant must be normalized to 1..q-1")


@dataclass(frozen=True)
class IntegralResult:
    value: Fraction
    exact: bool
    error_bound: Fraction | None = None
    constant_only: bool = True


def _lb(c: PadicNumber):
    return c.valuation_lower_bound()


def _classify(b: list[PadicNumber]):
    """Return ('const', v0), ('mono', j, vj), ('lin', v1), ('zero',) or None."""
    if all(c.is_exact_zero() for c in b):
        return ("zero",)
    c0 = b[0]
    if not c0.is_zero():
        v0 = c0.val
        if all(_lb(c) > v0 for c in b[1:]):
            return ("const", v0)
    j = 0
    while j < len(b) and b[j].is_exact_zero():
        j += 1
    if j >= 1 and not b[j].is_zero():
        vj = b[j].val
        if all(_lb(c) > vj for c in b[j + 1:]):
            return ("mono", j, vj)
    if len(b) > 1 and not b[1].is_zero():
        v1 = b[1].val
        if _lb(b[0]) >= v1 and all(_lb(c) > v1 for c in b[2:]):
            return ("lin", v1)
    return None


def _shell(p: int, E: int) -> Fraction:
    """int_{Z_p} |t|^E dt = (1 - 1/p) / (1 - p^(-1-E)) for E > -1."""
    if E <= -1:
        raise DomainError(f"integral diverges (total exponent {E} <= -1 at a zero)")
    if E == 0:
        return Fraction(1)
    pp = Fraction(p)
    return (1 - 1 / pp) / (1 - pp ** (-1 - E))


def _class_coeffs(poly: TruncSeries, a: int, k: int):
    p = poly.ctx.p
    shifted = poly.taylor_shift(a)
    scale = p ** k
    out, s = [], 1
    for c in shifted.coeffs:
        out.append(c * s if not c.is_exact_zero() else c)
        s *= scale
    return out


def _leaf_value(integrand: NormIntegrand, a: int, k: int):
    """(value, is_constant) if the class is a leaf, else None; raises on zero^negative."""
    p = integrand.ctx.p
    logC = 0          # C = p^(-logC)
    E = 0
    kinds = []
    for poly, e in integrand.factors:
        cls = _classify(_class_coeffs(poly, a, k))
        if cls is None:
            return None
        if cls[0] == "zero":
            if e > 0:
                return Fraction(0), False
            raise DomainError("negative power of an identically vanishing factor")
        kinds.append(cls[0])
        if cls[0] == "const":
            logC += e * cls[1]
        elif cls[0] == "mono":
            logC += e * cls[2]
            E += e * cls[1]
        else:
            logC += e * cls[1]
            E += e
    nonconst = [kd for kd in kinds if kd != "const"]
    if nonconst and not (all(kd == "mono" for kd in nonconst) or nonconst == ["lin"]):
        return None
    value = Fraction(1, p ** k) * Fraction(p) ** (-logC) * _shell(p, E)
    return value, not nonconst


def _class_bound(integrand: NormIntegrand, a: int, k: int):
    """Upper bound for the integrand on a class, or None if unbounded."""
    p = integrand.ctx.p
    logb = 0
    for poly, e in integrand.factors:
        if e < 0:
            return None
        lbs = [_lb(c) for c in _class_coeffs(poly, a, k)]
        m = min(lbs)
        if m == INF:
            return Fraction(0)
        logb += e * m
    return Fraction(p) ** (-logb)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PADIC_TEICH_THREADS", "1")))
    except ValueError:
        return 1


def integrate(integrand: NormIntegrand, depth: int = 12, a: int = 0, k: int = 0) -> IntegralResult:
    """Integral over the class a + p^k Z_p (default: all of Z_p)."""
    if depth < 1:
        raise DomainError("depth must be >= 1")
    p = integrand.ctx.p
    total = Fraction(0)
    error = Fraction(0)
    unbounded = False
    constant_only = True
    stack = [(a, k)]
    while stack:
        ca, ck = stack.pop()
        leaf = _leaf_value(integrand, ca, ck)
        if leaf is not None:
            total += leaf[0]
            constant_only = constant_only and leaf[1]
            continue
        if ck - k >= depth:
            b = _class_bound(integrand, ca, ck)
            if b is None:
                unbounded = True
            else:
                error += b / p ** ck
            constant_only = False
            continue
        step = p ** ck
        stack.extend((ca + i * step, ck + 1) for i in range(p - 1, -1, -1))
    if error or unbounded:
        raise DepthInsufficient(
            f"integrand not resolved at depth {depth}", partial=total,
            error_bound=None if unbounded else error)
    return IntegralResult(total, True, None, constant_only)


def haar_integral(integrand: NormIntegrand, depth: int = 12) -> Fraction:
    p = integrand.ctx.p
    workers = _threads()
    if workers == 1:
        return integrate(integrand, depth).value
    # the p top-level classes are independent
    with ThreadPoolExecutor(max_workers=min(workers, p)) as ex:
        parts = list(ex.map(lambda i: integrate(integrand, depth, i, 1).value, range(p)))
    return sum(parts, Fraction(0))


def sup_norm(poly: TruncSeries, depth: int = 12) -> Fraction:
    """sup_{x in Z_p} |P(x)|, from the leading terms on resolved classes."""
    p = poly.ctx.p
    best = Fraction(0)
    stack = [(0, 0)]
    while stack:
        a, k = stack.pop()
        b = _class_coeffs(poly, a, k)
        lbs = [_lb(c) for c in b]
        m = min(lbs)
        if m == INF:
            continue
        # the max over t in Z_p of |sum b_j t^j| equals max |b_j| when attained uniquely
        known = [c for c in b if not c.is_zero() and c.val == m]
        if len(known) == 1 and lbs.count(m) == 1:
            best = max(best, Fraction(p) ** (-m))
            continue
        if k >= depth:
            raise DepthInsufficient("sup not resolved", partial=best,
                                    error_bound=Fraction(p) ** (-m))
        stack.extend((a + i * p ** k, k + 1) for i in range(p))
    return best


# ---------------------------------------------------------------------------
# Serre invariants


def serre_ball_class(r: int, q: int) -> SerreInvariant:
    if r < 1 or q < 3:
        raise DomainError("need r >= 1 and q >= 3")
    return SerreInvariant((r - 1) % (q - 1) + 1, q)


def _normalize_mod(n: int, q: int) -> SerreInvariant:
    return SerreInvariant((n - 1) % (q - 1) + 1, q)


def serre_invariant_form(omega: NormIntegrand, q: int | None = None, depth: int = 12) -> SerreInvariant:
    """Write int |omega| = N / q^m and return N mod (q - 1)."""
    ctx = omega.ctx
    q = ctx.p if q is None else q
    if any(e != 1 for _, e in omega.factors):
        raise DomainError("a form integrand has exponent 1")
    try:
        res = integrate(omega, depth)
    except DepthInsufficient:
        raise
    if not res.constant_only or res.value == 0:
        raise VanishingForm("form vanishes somewhere on the domain")
    val = res.value
    m = 0
    while (val * q ** m).denominator != 1:
        m += 1
        if m > 10 * depth + 10:
            raise DomainError(f"integral {val} is not of the form N/q^m")
    return _normalize_mod(int(val * q ** m), q)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def elliptic_point_count(a4: int, a6: int, p: int) -> int:
    """#E(F_p) for y^2 = x^3 + a4 x + a6, including the point at infinity."""
    if p < 5 or not all(p % d for d in range(2, math.isqrt(p) + 1)):
        raise DomainError("p must be a prime >= 5")
    if (4 * a4 ** 3 + 27 * a6 ** 2) % p == 0:
        raise BadReduction(f"curve has bad reduction at {p}")
    count = 1 + sum(1 + legendre(x ** 3 + a4 * x + a6, p) for x in range(p))
    if (count - (p + 1)) ** 2 > 4 * p:
        raise AssertionError("Hasse bound violated")
    return count


def elliptic_serre_invariant(a4: int, a6: int, p: int) -> SerreInvariant:
    return _normalize_mod(elliptic_point_count(a4, a6, p), p)


# ---------------------------------------------------------------------------
# Fisher-Rao components of the location-scale family


@dataclass(frozen=True)
class FisherRao:
    g_tt: Fraction
    g_ss: Fraction
    g_ts: Fraction
    combined: Fraction

    @property
    def bound_holds(self) -> bool:
        return self.combined <= max(self.g_tt, self.g_ss, self.g_ts)


def fisher_rao_components(f: TruncSeries, sigma, depth: int = 12) -> FisherRao:
    """Components for the density h = Df; each is scaled by |sigma|^-2."""
    ctx = f.ctx
    sigma = PadicNumber.coerce(ctx, sigma)
    if sigma.is_zero():
        raise DomainError("sigma must be nonzero")
    h = f.derivative()
    try:
        res = integrate(NormIntegrand([(h, 1)]), depth)
    except DepthInsufficient as exc:
        raise VanishingDensity("density is not resolved as nonvanishing") from exc
    if not res.constant_only or res.value == 0:
        raise VanishingDensity("density vanishes somewhere on Z_p")
    dh = h.derivative().truncate(h.D)
    z = TruncSeries.x(ctx, h.D + 1)
    hz = h.truncate(h.D + 1) + (z * dh.truncate(h.D + 1))
    scale = 1 / sigma.abs() ** 2

    def integral(factors):
        live = [(s, e) for s, e in factors if e < 0 or not s.is_zero()]
        if len(live) < len(factors):
            return Fraction(0)
        return haar_integral(NormIntegrand(factors), depth)

    g_tt = integral([(dh, 2), (h, -1)]) * scale
    g_ss = integral([(hz, 2), (h, -1)]) * scale
    g_ts = integral([(dh, 1), (hz, 1), (h, -1)]) * scale
    comb = integral([(hz + dh.truncate(h.D + 1), 2), (h, -1)]) * scale
    return FisherRao(g_tt, g_ss, g_ts, comb)
