"""Theta functions on a Tate curve K^x / q^Z, evaluated by truncated products.

Everything lives in Q_p: the curve is built from an explicit q~ with
q = q~^(2l), so q^(1/2) = q~^l and torsion points are powers of q~.
Identities are checked to a stated q-order; the truncation order T bounds
how many factors (or series terms) are kept.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import (BranchUnavailable, DomainError, MissingRoot, NotTorsion, OutOfRange,
                     PoleAtTorsionPoint, ProductMismatch)
from .padic import INF, PadicNumber, PrimeContext, is_prime, teichmuller_lift


@dataclass(frozen=True, eq=False)
class TateCurve:
    q: PadicNumber
    T: int = 24
    q_tilde: PadicNumber | None = None
    l: int | None = None

    def __post_init__(self):
        if self.q.is_zero() or self.q.val < 1:
            raise DomainError("Tate parameter needs v(q) >= 1")
        if self.T < 2:
            raise DomainError("truncation order T must be >= 2")
        if self.l is not None:
            # l = p is allowed: no l-th roots are ever extracted
            if self.l < 3 or not is_prime(self.l):
                raise DomainError("torsion level l must be an odd prime")
        if self.q_tilde is not None:
            if self.l is None:
                raise DomainError("q~ needs a torsion level l")
            if self.q_tilde ** (2 * self.l) != self.q:
                raise DomainError("q~^(2l) must equal q")

    @classmethod
    def from_q_tilde(cls, q_tilde: PadicNumber, l: int, T: int = 24) -> TateCurve:
        return cls(q_tilde ** (2 * l), T, q_tilde, l)

    @property
    def ctx(self) -> PrimeContext:
        return self.q.ctx

    @property
    def vq(self) -> int:
        return self.q.val

    @property
    def l_star(self) -> int:
        if self.l is None:
            raise MissingRoot("curve has no torsion level")
        return (self.l - 1) // 2

    def sqrt_q(self) -> PadicNumber:
        if self.q_tilde is None:
            raise MissingRoot("q^(1/2) needs q~")
        return self.q_tilde ** self.l

    def in_qZ(self, c: PadicNumber) -> bool:
        """c = q^k for some integer k, at working precision."""
        if c.is_zero() or c.val % self.vq:
            return False
        return c * self.q ** (-(c.val // self.vq)) == 1

    def reduce(self, c: PadicNumber) -> PadicNumber:
        """Representative of c q^Z with 0 <= v < v(q)."""
        k = c.val // self.vq
        return c * self.q ** (-k)

    def to_json(self) -> dict:
        return {"p": self.ctx.p, "l": self.l,
                "qTilde": None if self.q_tilde is None else self.q_tilde.to_json(), "T": self.T}

    @classmethod
    def from_json(cls, ctx, data) -> TateCurve:
        qt = PadicNumber.from_json(ctx, data["qTilde"])
        return cls.from_q_tilde(qt, data["l"], data.get("T", 24))


def theta_fundamental(u, curve: TateCurve) -> PadicNumber:
    """(1 - u) prod_{n=1}^T (1 - q^n u)(1 - q^n / u)."""
    u = PadicNumber.coerce(curve.ctx, u)
    if u.is_zero():
        raise DomainError("theta is defined on K^x")
    if abs(u.val) > curve.T * curve.vq:
        raise OutOfRange(f"v(u) = {u.val} outside +-T v(q)")
    q = curve.q
    inv = u.inverse()
    acc = 1 - u
    qn = q
    for _ in range(curve.T):
        acc = acc * (1 - qn * u) * (1 - qn * inv)
        qn = qn * q
    return acc


def theta_c(u, c, curve: TateCurve) -> PadicNumber:
    u = PadicNumber.coerce(curve.ctx, u)
    return theta_fundamental(u / PadicNumber.coerce(curve.ctx, c), curve)


def eta(curve: TateCurve) -> PadicNumber:
    acc = curve.ctx.one()
    qn = curve.q
    for _ in range(curve.T):
        acc = acc * (1 - qn)
        qn = qn * curve.q
    return acc


def theta_tilde(ut, curve: TateCurve) -> PadicNumber:
    """theta~(u~) = -eta(q) theta(u~^2) / u~."""
    if curve.q_tilde is None:
        raise MissingRoot("theta~ needs a curve with q~")
    ut = PadicNumber.coerce(curve.ctx, ut)
    return -eta(curve) * theta_fundamental(ut * ut, curve) / ut


def theta_tilde_series(ut, curve: TateCurve, terms: int | None = None) -> PadicNumber:
    """sum_n (-1)^n q^(n(n+1)/2) u~^(2n+1), the q^(-1/8)-normalised series."""
    ut = PadicNumber.coerce(curve.ctx, ut)
    M = curve.T if terms is None else terms
    q = curve.q
    total = curve.ctx.zero()
    for n in range(-M - 1, M + 1):
        term = q ** (n * (n + 1) // 2) * ut ** (2 * n + 1)
        total = total + term if n % 2 == 0 else total - term
    return total


def qperiodic_residual(ut, a: int, curve: TateCurve) -> PadicNumber:
    """theta~(u~) - (-1)^a q^(a^2/2) u~^(2a) theta~(q^(a/2) u~)."""
    ut = PadicNumber.coerce(curve.ctx, ut)
    h = curve.sqrt_q()
    rhs = h ** (a * a) * ut ** (2 * a) * theta_tilde(h ** a * ut, curve)
    if a % 2:
        rhs = -rhs
    return theta_tilde(ut, curve) - rhs


# ---------------------------------------------------------------------------
# torsion values


@dataclass(frozen=True)
class TorsionCheck:
    j: int
    value: PadicNumber
    residual_valuation: object


def torsion_check(j: int, curve: TateCurve) -> TorsionCheck:
    """Theta-route verification of Theta(q~^j) = q~^(j^2) on l-th powers.

    With Theta(u)^(-l) = theta(u)/theta(-1) * (-1/u)^(1/2), the point u = -q^j
    gives R_j = theta(-q^j) / (theta(-1) q~^(l j)) which should be q^(-j^2/2),
    i.e. R_j * q~^(l j^2) = 1 up to the truncation error.
    """
    if curve.q_tilde is None or curve.l is None:
        raise MissingRoot("torsion values need q~ and l")
    qt, l, q = curve.q_tilde, curve.l, curve.q
    R = theta_fundamental(-(q ** j), curve) / (theta_fundamental(-1, curve) * qt ** (l * j))
    resid = R * qt ** (l * j * j) - 1
    return TorsionCheck(j, qt ** (j * j), resid.valuation_lower_bound())


def theta_torsion_value(j: int, curve: TateCurve) -> PadicNumber:
    if curve.l is None or curve.q_tilde is None:
        raise MissingRoot("torsion values need q~ and l")
    if j % curve.l == 0:
        raise PoleAtTorsionPoint(f"j = {j} is divisible by l = {curve.l}")
    if not 1 <= j <= curve.l_star:
        raise DomainError(f"j must lie in 1..{curve.l_star}")
    chk = torsion_check(j, curve)
    if chk.residual_valuation < curve.vq:
        raise AssertionError(f"theta route disagrees at j={j}: residual valuation "
                             f"{chk.residual_valuation}")
    return chk.value


def functional_equation_check(u, j: int, curve: TateCurve) -> dict:
    """Multiplicative form theta(u) q^(j/2) / (theta(q^j u) u^j q^(j^2/2)).

    By quasi-periodicity this is (-1)^j; we report the root of unity read
    off from the residue and the valuation of residual/zeta - 1.
    """
    ctx = curve.ctx
    u = PadicNumber.coerce(ctx, u)
    if j % 2:
        if curve.q_tilde is None:
            raise BranchUnavailable("odd j needs q^(1/2) = q~^l")
        h = curve.sqrt_q()
        qj2, qjj2 = h ** j, h ** (j * j)
    else:
        qj2, qjj2 = curve.q ** (j // 2), curve.q ** (j * j // 2)
    num = theta_fundamental(u, curve) * qj2
    den = theta_fundamental(curve.q ** j * u, curve) * u ** j * qjj2
    resid = num / den
    if resid.val != 0:
        return {"residual": resid, "root_of_unity": None, "excess_valuation": 0,
                "matches_sign": False}
    a = resid.residue()
    zeta = teichmuller_lift(a, ctx)
    excess = (resid / zeta - 1).valuation_lower_bound()
    return {"residual": resid, "root_of_unity": a, "excess_valuation": excess,
            "matches_sign": a == (1 if j % 2 == 0 else ctx.p - 1)}


# ---------------------------------------------------------------------------
# divisors and theta objects


@dataclass(frozen=True, eq=False)
class TateDivisor:
    curve: TateCurve
    points: tuple = ()

    @classmethod
    def of(cls, curve, pairs) -> TateDivisor:
        out = []
        for pt, n in pairs:
            pt = curve.reduce(PadicNumber.coerce(curve.ctx, pt))
            for i, (q0, m) in enumerate(out):
                if q0 == pt:
                    out[i] = (q0, m + n)
                    break
            else:
                out.append((pt, n))
        return cls(curve, tuple((pt, n) for pt, n in out if n))

    def __add__(self, other: TateDivisor) -> TateDivisor:
        return TateDivisor.of(self.curve, list(self.points) + list(other.points))

    def __neg__(self):
        return TateDivisor(self.curve, tuple((pt, -n) for pt, n in self.points))

    def __sub__(self, other):
        return self + (-other)

    def degree(self) -> int:
        return sum(n for _, n in self.points)

    def product(self) -> PadicNumber:
        acc = self.curve.ctx.one()
        for pt, n in self.points:
            acc = acc * pt ** n
        return acc

    def is_principal(self) -> bool:
        return self.degree() == 0 and self.curve.in_qZ(self.product())

    def __eq__(self, other):
        if not isinstance(other, TateDivisor):
            return NotImplemented
        return not (self - other).points


@dataclass(frozen=True, eq=False)
class ThetaObject:
    """u -> evaluator(u) with declared type f(u) = c u^r f(qu)."""

    evaluator: Callable
    c: PadicNumber
    r: int
    curve: TateCurve
    divisor: TateDivisor | None = None
    label: str = field(default="")

    def __call__(self, u):
        return self.evaluator(PadicNumber.coerce(self.curve.ctx, u))

    def __mul__(self, other: ThetaObject) -> ThetaObject:
        div = None
        if self.divisor is not None and other.divisor is not None:
            div = self.divisor + other.divisor
        return ThetaObject(lambda u: self(u) * other(u), self.c * other.c, self.r + other.r,
                           self.curve, div, f"{self.label}*{other.label}")

    def type_residual(self, u) -> object:
        """Relative valuation of f(u) - c u^r f(qu)."""
        u = PadicNumber.coerce(self.curve.ctx, u)
        fu = self(u)
        diff = fu - self.c * u ** self.r * self(self.curve.q * u)
        return diff.valuation_lower_bound() - fu.val

    def periodic_residual(self, u) -> object:
        u = PadicNumber.coerce(self.curve.ctx, u)
        fu = self(u)
        return (fu - self(self.curve.q * u)).valuation_lower_bound() - fu.val


def sample_units(curve: TateCurve, count: int, avoid=(), seed: int = 0) -> list[PadicNumber]:
    """Random units whose residues avoid 1 and the residues of ``avoid``."""
    ctx = curve.ctx
    p = ctx.p
    rng = random.Random(seed)
    bad = {1}
    for a in avoid:
        a = PadicNumber.coerce(ctx, a)
        if not a.is_zero() and a.val == 0:
            bad.add(a.residue())
    good = [r for r in range(1, p) if r not in bad]
    if not good:
        raise DomainError("no residue class avoids the given points")
    out = []
    for _ in range(count):
        r = rng.choice(good)
        out.append(ctx(r + p * rng.randrange(p ** (ctx.N - 1))))
    return out


def fundamental_theta(curve: TateCurve) -> ThetaObject:
    one = curve.ctx.one()
    return ThetaObject(lambda u: theta_fundamental(u, curve), -one, 1, curve,
                       TateDivisor.of(curve, [(one, 1)]), "theta")


def shifted_theta(c, curve: TateCurve) -> ThetaObject:
    """theta_c(u) = theta(u/c), of type -c^-1 u."""
    c = PadicNumber.coerce(curve.ctx, c)
    return ThetaObject(lambda u: theta_fundamental(u / c, curve), -c.inverse(), 1, curve,
                       TateDivisor.of(curve, [(c, 1)]), "theta_c")


def build_periodic_function(zeros, poles, curve: TateCurve, const=1, check: int = 3) -> ThetaObject:
    """const * prod theta_(a_i) / prod theta_(b_i), q-periodic when prod a = prod b."""
    ctx = curve.ctx
    zeros = [PadicNumber.coerce(ctx, a) for a in zeros]
    poles = [PadicNumber.coerce(ctx, b) for b in poles]
    if len(zeros) != len(poles):
        raise DomainError("need as many zeros as poles")
    pa, pb = ctx.one(), ctx.one()
    for a in zeros:
        pa = pa * a
    for b in poles:
        pb = pb * b
    if pa != pb:
        raise ProductMismatch("product of zeros differs from product of poles")
    const = PadicNumber.coerce(ctx, const)

    def f(u):
        acc = const
        for a in zeros:
            acc = acc * theta_fundamental(u / a, curve)
        for b in poles:
            acc = acc / theta_fundamental(u / b, curve)
        return acc

    div = TateDivisor.of(curve, [(a, 1) for a in zeros] + [(b, -1) for b in poles])
    obj = ThetaObject(f, ctx.one(), 0, curve, div, "periodic")
    threshold = (curve.T - 2 * len(zeros) - 1) * curve.vq
    for u in sample_units(curve, check, avoid=zeros + poles, seed=len(zeros)):
        res = obj.periodic_residual(u)
        if res < min(threshold, ctx.N // 2):
            raise AssertionError(f"q-periodicity residual valuation {res} too small")
    return obj


def torsion_function(Q, curve: TateCurve) -> ThetaObject:
    """r(u) = theta(u) / theta(u/Q), with divisor (1) - (Q) and type (Q, 0)."""
    ctx = curve.ctx
    Q = PadicNumber.coerce(ctx, Q)
    if curve.l is None:
        raise MissingRoot("torsion functions need a torsion level l")
    if Q.is_zero() or curve.in_qZ(Q):
        raise NotTorsion("Q lies in q^Z (the origin of the curve)")
    if not curve.in_qZ(Q ** curve.l):
        raise NotTorsion(f"Q is not {curve.l}-torsion modulo q^Z")
    one = ctx.one()
    return ThetaObject(lambda u: theta_fundamental(u, curve) / theta_fundamental(u / Q, curve),
                       Q, 0, curve, TateDivisor.of(curve, [(one, 1), (Q, -1)]), "f_Q")


def normalized_torsion_power(Q, curve: TateCurve) -> ThetaObject:
    """F_Q(u) = u^k (theta(u)/theta(u/Q) * theta(1/Q)/eta^2)^l with Q^l = q^k.

    The inner factor tends to 1 - u as u -> 1, and F_Q is q-periodic.
    """
    ctx = curve.ctx
    Q = PadicNumber.coerce(ctx, Q)
    base = torsion_function(Q, curve)
    l = curve.l
    k = (Q ** l).val // curve.vq
    norm = theta_fundamental(Q.inverse(), curve) / eta(curve) ** 2

    def F(u):
        return u ** k * (base(u) * norm) ** l

    return ThetaObject(F, ctx.one(), 0, curve, None, "F_Q")


def torsion_ratio_residual(Q, m: int, u, curve: TateCurve):
    """Valuation of F_(Q q^m)(u) / F_Q(u) - 1; the ratio is the l-th power of a root of unity."""
    Q = PadicNumber.coerce(curve.ctx, Q)
    a = normalized_torsion_power(Q * curve.q ** m, curve)(u)
    b = normalized_torsion_power(Q, curve)(u)
    return (a / b - 1).valuation_lower_bound()


def dim_theta_space(c, r: int, curve: TateCurve) -> int:
    c = PadicNumber.coerce(curve.ctx, c)
    if r > 0:
        return r
    if r == 0 and curve.in_qZ(c):
        return 1
    return 0
