"""The group of analytic perturbations x + f(x) of the identity on Z_p.

Membership is certified by the checkable condition that every coefficient
of f has valuation >= 1, so f is Lipschitz with constant 1/p.  Series are
truncated at degree D; identities hold to that degree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import _intpoly
from .errors import (DomainError, NonConvergence, NotAMember, NotBijective, NotInImage,
                     PrecisionExhausted, ZeroScale)
from .padic import INF, PadicNumber, PrimeContext, padic_log, teichmuller_lift, unit_decompose
from .series import (TruncSeries, contracting_power, contracting_root, series_exp, series_log,
                     unipotent_power)


@dataclass(frozen=True, eq=False)
class DiffElement:
    f: TruncSeries
    certified: bool = True

    @property
    def ctx(self) -> PrimeContext:
        return self.f.ctx

    @property
    def D(self) -> int:
        return self.f.D

    @property
    def phi(self) -> TruncSeries:
        return self.f + TruncSeries.x(self.ctx, self.D)

    def derivative(self) -> TruncSeries:
        return self.phi.derivative()

    def __eq__(self, other):
        if not isinstance(other, DiffElement):
            return NotImplemented
        return self.f == other.f

    __hash__ = None

    def to_json(self) -> dict:
        return {**self.f.to_json(), "certified": self.certified}

    @classmethod
    def from_json(cls, ctx, data) -> DiffElement:
        return is_member(TruncSeries.from_json(ctx, data))


@dataclass(frozen=True, eq=False)
class ExtendedDiff:
    """a*x + b + a*f(x): an affine map applied after a core member."""

    a: PadicNumber
    b: PadicNumber
    core: DiffElement

    def __post_init__(self):
        if self.a.is_zero():
            raise ZeroScale("affine scale a must be nonzero")

    @property
    def phi(self) -> TruncSeries:
        return self.core.phi.scale(self.a) + self.b


@dataclass(frozen=True)
class FiniteDiff:
    """A permutation of Z/p^m, given as the table x -> phi(x) mod p^m."""

    p: int
    m: int
    table: tuple

    def __call__(self, x: int) -> int:
        return self.table[x % self.p ** self.m]

    def compose(self, other: FiniteDiff) -> FiniteDiff:
        return FiniteDiff(self.p, self.m, tuple(self.table[y] for y in other.table))

    def project(self, k: int) -> FiniteDiff:
        """Reduce the table to Z/p^k, k <= m."""
        mod = self.p ** k
        return FiniteDiff(self.p, k, tuple(self.table[x] % mod for x in range(mod)))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.table))


# ---------------------------------------------------------------------------
# construction


def is_member(f: TruncSeries) -> DiffElement:
    for k, c in enumerate(f.coeffs):
        if k == 0:
            if not c.is_zero():
                raise NotAMember("perturbation must vanish at 0", index=0)
            continue
        if c.valuation_lower_bound() < 1:
            raise NotAMember(f"coefficient {k} has valuation {c.val} < 1", index=k)
    return DiffElement(f, True)


def identity(ctx: PrimeContext, D: int | None = None) -> DiffElement:
    return DiffElement(TruncSeries.zero(ctx, D), True)


def from_phi(phi: TruncSeries) -> DiffElement:
    """Certify a full series phi = x + f."""
    return is_member(phi - TruncSeries.x(phi.ctx, phi.D))


def random_member(ctx: PrimeContext, rng: random.Random, D: int | None = None) -> DiffElement:
    D = ctx.D if D is None else D
    p = ctx.p
    coeffs = [0] + [p * rng.randrange(p ** (ctx.N - 1)) for _ in range(D)]
    return is_member(TruncSeries.from_values(ctx, coeffs, D))


# ---------------------------------------------------------------------------
# group law


def compose(phi: DiffElement, psi: DiffElement) -> DiffElement:
    """phi o psi, i.e. x + g + f(x + g)."""
    out = phi.f.compose(psi.phi) + psi.f
    return is_member(out)


def invert(phi: DiffElement, max_iter: int | None = None) -> DiffElement:
    """The inverse x + g, from the fixed point g = -f(x + g)."""
    ctx, D = phi.ctx, phi.D
    x = TruncSeries.x(ctx, D)
    g = TruncSeries.zero(ctx, D)
    for _ in range(max_iter or 2 * (D + ctx.N) + 5):
        nxt = -phi.f.compose(x + g)
        if nxt == g:
            return is_member(nxt)
        g = nxt
    raise NonConvergence("reversion did not stabilise; membership certificate violated?")


def cocycle(phi: DiffElement) -> TruncSeries:
    return phi.f


def cocycle_identity_check(phi: DiffElement, psi: DiffElement) -> bool:
    lhs = cocycle(compose(phi, psi))
    rhs = cocycle(phi).compose(psi.phi) + cocycle(psi)
    return lhs == rhs


def reduce_mod(phi: DiffElement, m: int) -> FiniteDiff:
    ctx = phi.ctx
    if not 1 <= m <= ctx.N:
        raise DomainError(f"level m must lie in 1..{ctx.N}")
    if phi.phi.min_absprec() < m:
        raise PrecisionExhausted("coefficients are not known modulo p^m")
    p = ctx.p
    mod = p ** m
    coeffs, _ = phi.phi.integral_ints(m)
    table = []
    for x in range(mod):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % mod
        table.append(acc)
    if len(set(table)) != mod:
        raise NotBijective(f"reduction mod {p}^{m} is not a bijection")
    return FiniteDiff(p, m, tuple(table))


# ---------------------------------------------------------------------------
# the embeddings Phi_m and Phi_inf


def phi_m(phi: DiffElement, m: int) -> TruncSeries:
    """((D phi)^(p^m) - 1) / p^m, computed on integer lifts so no digits are lost."""
    if m < 1:
        raise DomainError("m must be at least 1")
    return contracting_power(phi.derivative(), m)


def phi_m_inverse(g: TruncSeries, m: int) -> DiffElement:
    try:
        z = contracting_root(g, m)
        elt = is_member((z - 1).antiderivative())
    except (ArithmeticError, NotAMember, DomainError) as exc:
        raise NotInImage(f"series is not in the image of Phi_{m}: {exc}") from exc
    if phi_m(elt, m) != g:
        raise NotInImage(f"round trip through Phi_{m} failed")
    return elt


def phi_inf(phi: DiffElement) -> TruncSeries:
    return series_log(phi.derivative())


def phi_inf_inverse(g: TruncSeries) -> DiffElement:
    if g.valuation() < 1:
        raise DomainError("phi_inf_inverse needs every coefficient of valuation >= 1")
    return is_member((series_exp(g) - 1).antiderivative())


def phi_m_differential(phi: DiffElement, h: TruncSeries, m: int) -> TruncSeries:
    """Tangent map of Phi_m at phi in direction h: (D phi)^(p^m - 1) * Dh."""
    dphi = phi.derivative()
    return unipotent_power(dphi, m) * dphi.inverse() * h.derivative()


def phi_m_finite_difference(phi: DiffElement, h: TruncSeries, m: int, s: int = 1) -> TruncSeries:
    """(Phi_m(phi + p^s h) - Phi_m(phi)) / p^s."""
    t = phi.ctx.p ** s
    moved = is_member(phi.f + h.scale(t))
    return (phi_m(moved, m) - phi_m(phi, m)).scale(Fraction(1, t))


def finsler_norm(h: TruncSeries, r, depth: int = 12):
    """(integral of |Dh|^r)^(1/r), or sup |Dh| for r = inf."""
    from .integrate import NormIntegrand, haar_integral, sup_norm

    dh = h.derivative()
    if dh.is_zero():
        return Fraction(0)
    if r == INF or r == "inf":
        return sup_norm(dh, depth=depth)
    if r < 1:
        raise DomainError("r must be >= 1")
    val = haar_integral(NormIntegrand([(dh, r)]), depth)
    return rational_root(val, r)


def rational_root(x: Fraction, r: int):
    """x^(1/r) as a Fraction when exact, else a float."""
    if r == 1 or x == 0:
        return x

    def iroot(n):
        k = round(n ** (1.0 / r))
        for c in (k - 1, k, k + 1):
            if c >= 0 and c ** r == n:
                return c
        return None

    a, b = iroot(x.numerator), iroot(x.denominator)
    if a is not None and b is not None:
        return Fraction(a, b)
    return float(x) ** (1.0 / r)


# ---------------------------------------------------------------------------
# Schwarzian derivatives


def _series_of(phi) -> TruncSeries:
    return phi.phi if isinstance(phi, (DiffElement, ExtendedDiff)) else phi


def schwarzian(phi) -> TruncSeries:
    """u'' - u'^2/2 with u' = phi''/phi' (the derivative of log D phi); degree D-3."""
    s = _series_of(phi)
    if s.D < 3:
        raise DomainError("Schwarzian needs truncation degree D >= 3")
    d1 = s.derivative()
    d2 = d1.derivative()
    w = (d2 * d1.truncate(d2.D).inverse())
    return w.derivative() - (w * w).truncate(w.D - 1).scale(Fraction(1, 2))


def bers(phi) -> TruncSeries:
    return schwarzian(phi)


def frobenius_schwarzian(phi: DiffElement, m: int) -> TruncSeries:
    """((3 p^m / 2) (phi''/phi')^2 + S{phi}) (phi')^(p^m), truncated at degree D-3."""
    if m < 1:
        raise DomainError("m must be at least 1")
    s = phi.phi
    p = phi.ctx.p
    d1 = s.derivative()
    d2 = d1.derivative()
    n = s.D - 3
    w = (d2 * d1.truncate(d2.D).inverse()).truncate(n)
    inner = (w * w).scale(Fraction(3 * p ** m, 2)) + schwarzian(phi)
    return inner * unipotent_power(d1, m).truncate(n)


def frobenius_schwarzian_oracle(phi: DiffElement, m: int) -> TruncSeries:
    """6 D_y D_z V_m on the diagonal, with V_m = (Q^(p^m) - 1)/p^m and
    Q(y, z) = (phi(y) - phi(z)) / (y - z) expanded as a bivariate polynomial."""
    ctx = phi.ctx
    p = ctx.p
    D = phi.D
    coeffs, prec = phi.phi.integral_ints()
    Q = {}
    for k in range(1, D + 1):
        for i in range(k):
            e = (i, k - 1 - i)
            Q[e] = (Q.get(e, 0) + coeffs[k]) % p ** prec
    V = _intpoly.contracting_power(Q, p, m, D - 1, prec, 2)
    mod = p ** prec
    out = []
    for n in range(D - 2):
        acc = 0
        for i in range(1, n + 2):
            j = n + 2 - i
            acc += i * j * V.get((i, j), 0)
        out.append(6 * acc % mod)
    return TruncSeries.from_ints(ctx, out, prec)


# ---------------------------------------------------------------------------
# affine extensions


def compose_affine_left(A, phi) -> ExtendedDiff:
    """(a*x + b) o phi for A = (a, b)."""
    a, b = A
    if isinstance(phi, DiffElement):
        ctx = phi.ctx
        return ExtendedDiff(PadicNumber.coerce(ctx, a), PadicNumber.coerce(ctx, b), phi)
    ctx = phi.core.ctx
    a = PadicNumber.coerce(ctx, a)
    return ExtendedDiff(a * phi.a, a * phi.b + PadicNumber.coerce(ctx, b), phi.core)


@dataclass(frozen=True, eq=False)
class ExtendedLogValue:
    """s*log(p) + body(x), with body a series."""

    log_p_coeff: Fraction
    body: TruncSeries
    char_index: int

    def __eq__(self, other):
        if not isinstance(other, ExtendedLogValue):
            return NotImplemented
        return (self.log_p_coeff == other.log_p_coeff and self.char_index == other.char_index
                and self.body == other.body)

    __hash__ = None


def extended_log(e: ExtendedDiff, l: int) -> ExtendedLogValue:
    """Generalized log of D phi = a (1 + Df), coefficientwise in the series."""
    ctx = e.core.ctx
    if not 0 <= l <= ctx.p - 2:
        raise DomainError(f"character index must lie in 0..{ctx.p - 2}")
    if e.a.is_zero():
        raise ZeroScale("a must be nonzero")
    s, res, g = unit_decompose(e.a)
    body = series_log(e.core.derivative()) + padic_log(g)
    body = body.scale(teichmuller_lift(res, ctx) ** l)
    return ExtendedLogValue(Fraction(s), body, l)
