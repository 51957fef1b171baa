"""Totally ramified extensions Z_p[x]/(g) for an Eisenstein polynomial g."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ModulusMismatch, WildRamificationUnsupported
from .padic import INF, PadicNumber, PrimeContext


@dataclass(frozen=True, eq=False)
class EisensteinModulus:
    """Monic g = x^e + c_(e-1) x^(e-1) + ... + c_0, Eisenstein at p.

    ``coeffs`` lists c_0..c_(e-1) (the leading 1 is implicit).
    """

    ctx: PrimeContext
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(PadicNumber.coerce(self.ctx, c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if not cs:
            raise DomainError("degree must be at least 1")
        if cs[0].is_zero() or cs[0].val != 1:
            raise DomainError("constant term must have valuation exactly 1")
        for c in cs[1:]:
            if c.valuation_lower_bound() < 1:
                raise DomainError("non-leading coefficients must be divisible by p")

    @classmethod
    def from_ints(cls, ctx, coeffs_low_to_high) -> EisensteinModulus:
        """Accepts c_0..c_e with c_e = 1."""
        cs = list(coeffs_low_to_high)
        if cs[-1] != 1:
            raise DomainError("polynomial must be monic")
        return cls(ctx, tuple(cs[:-1]))

    @classmethod
    def x_e_minus_p(cls, ctx, e: int) -> EisensteinModulus:
        return cls(ctx, tuple([-ctx.p] + [0] * (e - 1)))

    @property
    def e(self) -> int:
        return len(self.coeffs)

    @property
    def p(self) -> int:
        return self.ctx.p

    def poly(self) -> list[PadicNumber]:
        return list(self.coeffs) + [self.ctx.one()]

    def derivative_poly(self) -> list[PadicNumber]:
        g = self.poly()
        return [k * g[k] for k in range(1, len(g))]

    def pi(self) -> ExtElement:
        return self.element([0, 1]) if self.e > 1 else self.element([-self.coeffs[0]])

    def element(self, coeffs) -> ExtElement:
        return ExtElement.from_poly(self, coeffs)

    def eval_poly(self, poly, x: ExtElement) -> ExtElement:
        acc = self.element([0])
        for c in reversed(poly):
            acc = acc * x + self.element([c])
        return acc

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "coeffs": [c.to_json() for c in self.poly()]}


class ExtElement:
    __slots__ = ("mod", "c")

    def __init__(self, mod: EisensteinModulus, coeffs):
        self.mod = mod
        self.c = tuple(coeffs)

    @classmethod
    def from_poly(cls, mod, coeffs) -> ExtElement:
        """Reduce an arbitrary polynomial in pi modulo g."""
        ctx = mod.ctx
        c = [PadicNumber.coerce(ctx, a) for a in coeffs]
        e = mod.e
        # pi^e = -(c_0 + ... + c_(e-1) pi^(e-1))
        for k in range(len(c) - 1, e - 1, -1):
            top = c[k]
            if top.is_exact_zero():
                continue
            for i in range(e):
                c[k - e + i] = c[k - e + i] - top * mod.coeffs[i]
            c[k] = ctx.zero()
        c = c[:e] + [ctx.zero()] * (e - len(c))
        return cls(mod, c)

    def _same(self, other):
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.mod.element([other])
        if other.mod is not self.mod and other.mod.poly() != self.mod.poly():
            raise ModulusMismatch("elements of different extensions")
        return other

    def __add__(self, other):
        other = self._same(other)
        return ExtElement(self.mod, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.mod, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        ctx = self.mod.ctx
        prod = [ctx.zero() for _ in range(2 * self.mod.e - 1)]
        for i, a in enumerate(self.c):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.c):
                if not b.is_exact_zero():
                    prod[i + j] = prod[i + j] + a * b
        return ExtElement.from_poly(self.mod, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.mod.element([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, x) -> ExtElement:
        x = PadicNumber.coerce(self.mod.ctx, x)
        return ExtElement(self.mod, [a * x for a in self.c])

    def valuation(self):
        """min_i (v_p(c_i) + i/e); exact zeros are skipped."""
        e = self.mod.e
        vals = [Fraction(a.val) + Fraction(i, e) for i, a in enumerate(self.c) if not a.is_zero()]
        return min(vals) if vals else INF

    def valuation_lower_bound(self):
        e = self.mod.e
        return min(Fraction(a.valuation_lower_bound()) + Fraction(i, e)
                   if a.valuation_lower_bound() != INF else INF
                   for i, a in enumerate(self.c))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def __eq__(self, other):
        if not isinstance(other, (ExtElement, int, Fraction, PadicNumber)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return " + ".join(f"({a})*pi^{i}" for i, a in enumerate(self.c) if not a.is_zero()) or "0"


def ext_valuation(a: ExtElement):
    return a.valuation()


def ext_log(z: ExtElement) -> ExtElement:
    """log(1 + z) by the alternating series, for v(z) > 1/(p-1)."""
    p = z.mod.p
    v = z.valuation()
    if v == INF:
        return z
    if v <= Fraction(1, p - 1):
        raise DomainError("log(1+z) needs v(z) > 1/(p-1)")
    target = z.mod.ctx.N
    total = z.mod.element([0])
    power = z.mod.element([1])
    n = 1
    while True:
        power = power * z
        term = power.scale(Fraction(1, n))
        total = total + term if n % 2 else total - term
        n += 1
        if n * v - int(math.log(n, p) + 1e-9) > target:
            break
    return total


def different_order(g: EisensteinModulus, strict: bool = False):
    """(d, logOrder): d = e * v(g'(pi)); logOrder = v(log(1 + g'(pi))) under the tame guard."""
    pi = g.pi()
    e, p = g.e, g.p
    gp = g.eval_poly(g.derivative_poly(), pi)
    v = gp.valuation()
    d = e * v
    if d.denominator != 1:
        raise DomainError("different exponent must be an integer")
    d = int(d)
    if math.gcd(e, p) != 1 or v <= Fraction(1, p - 1):
        if strict:
            raise WildRamificationUnsupported(
                f"guard fails for e={e}, p={p}, v(g'(pi))={v}", d=d)
        return d, None
    log_order = ext_log(gp).valuation()
    if log_order != Fraction(d, e):
        raise AssertionError(f"log order {log_order} differs from d/e = {Fraction(d, e)}")
    return d, log_order


def root_diffeo_check(g: EisensteinModulus, k: int = 1, samples: int = 50, seed: int = 0) -> dict:
    """Check |g(x) - g(y)| <= eps^(e-1) |x - y| for sampled x, y in p^k Z_p (eps = p^-k),
    and that phi = x + g(x) fixes pi in the extension."""
    e, p, ctx = g.e, g.p, g.ctx
    if e <= 1:
        raise DomainError("ramification index must exceed 1")
    if k < 1:
        raise DomainError("radius must be < 1")
    eps = Fraction(1, p ** k)
    bound = eps ** (e - 1)
    rng = random.Random(seed)
    poly = g.poly()

    def ev(x):
        acc = ctx.zero()
        for c in reversed(poly):
            acc = acc * x + c
        return acc

    worst = Fraction(0)
    checked = 0
    while checked < samples:
        x = p ** k * rng.randrange(p ** (ctx.N - k))
        y = p ** k * rng.randrange(p ** (ctx.N - k))
        if x == y:
            continue
        X, Y = ctx(x), ctx(y)
        ratio = (ev(X) - ev(Y)).abs() / (X - Y).abs()
        worst = max(worst, ratio)
        checked += 1
    pi = g.pi()
    fixes = (pi + g.eval_poly(poly, pi)) == pi
    return {"pairs": checked, "max_ratio": worst, "bound": bound,
            "lipschitz_ok": worst <= bound, "phi_fixes_pi": fixes}
