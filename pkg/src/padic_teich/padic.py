"""Capped-relative p-adic arithmetic in Q_p for odd p.

A nonzero :class:`PadicNumber` is ``p**val * unit`` where ``unit`` is known
modulo ``p**relprec``.  Zero carries only an absolute precision (``prec``),
or is exact (``prec == inf``).  Every operation derives the precision of its
result from the precision of its inputs, so equality tests are always
decided at the precision that is actually known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational

from .errors import DivisionByZero, DomainError, NonConvergence, PrecisionExhausted, ZeroInput

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp(n: int, p: int) -> float:
    """Valuation of an integer; ``inf`` for 0."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def teichmuller_int(a: int, p: int, k: int) -> int:
    """omega(a) mod p**k, by iterating x -> x**p until it stabilises."""
    mod = p ** k
    x = a % mod
    if x % p == 0:
        return 0
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


@dataclass(frozen=True)
class PrimeContext:
    """Prime ``p``, relative precision cap ``N`` and default series degree ``D``."""

    p: int
    N: int = 20
    D: int = 8

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or not is_prime(self.p):
            raise DomainError(f"p must be an odd prime, got {self.p!r}")
        if self.N < 2:
            raise DomainError("precision N must be at least 2")
        if self.D < 1:
            raise DomainError("degree D must be at least 1")

    def __call__(self, x, prec=None) -> PadicNumber:
        return PadicNumber.coerce(self, x, prec)

    def zero(self) -> PadicNumber:
        return PadicNumber(self, INF, 0, INF)

    def one(self) -> PadicNumber:
        return PadicNumber(self, 0, 1, self.N)

    def with_precision(self, N: int) -> PrimeContext:
        return PrimeContext(self.p, N, self.D)


class PadicNumber:
    __slots__ = ("ctx", "val", "unit", "prec")

    def __init__(self, ctx: PrimeContext, val, unit: int, prec):
        # prec is the *absolute* precision: the value is known mod p**prec
        self.ctx = ctx
        self.val = val
        self.unit = unit
        self.prec = prec

    # construction -------------------------------------------------------

    @classmethod
    def _normalize(cls, ctx, v, n, absprec):
        """Build p**v * n known modulo p**absprec."""
        p = ctx.p
        if absprec == INF:
            if n == 0:
                return ctx.zero()
            raise ValueError("only zero may be exact")
        width = absprec - v
        if width <= 0:
            return cls(ctx, INF, 0, absprec)
        n %= p ** width
        if n == 0:
            return cls(ctx, INF, 0, absprec)
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        v += k
        rel = min(absprec - v, ctx.N)
        return cls(ctx, v, n % p ** rel, v + rel)

    @classmethod
    def from_int(cls, ctx, n: int, prec=None) -> PadicNumber:
        if n == 0:
            return ctx.zero() if prec is None else cls(ctx, INF, 0, prec)
        v = vp(n, ctx.p)
        u = n // ctx.p ** v
        absprec = v + ctx.N if prec is None else min(prec, v + ctx.N)
        return cls._normalize(ctx, v, u, absprec)

    @classmethod
    def from_fraction(cls, ctx, x: Fraction, prec=None) -> PadicNumber:
        x = Fraction(x)
        if x == 0:
            return cls.from_int(ctx, 0, prec)
        p = ctx.p
        vn, vd = vp(x.numerator, p), vp(x.denominator, p)
        num = x.numerator // p ** vn
        den = x.denominator // p ** vd
        v = vn - vd
        rel = ctx.N if prec is None else min(ctx.N, prec - v)
        if rel <= 0:
            return cls(ctx, INF, 0, prec)
        mod = p ** rel
        return cls(ctx, v, num * pow(den, -1, mod) % mod, v + rel)

    @classmethod
    def coerce(cls, ctx, x, prec=None) -> PadicNumber:
        if isinstance(x, PadicNumber):
            if x.ctx.p != ctx.p:
                raise DomainError("cannot mix p-adic numbers for different primes")
            if prec is not None:
                return x.add_bigoh(prec)
            return x
        if isinstance(x, Integral):
            return cls.from_int(ctx, int(x), prec)
        if isinstance(x, Rational):
            return cls.from_fraction(ctx, Fraction(x), prec)
        raise TypeError(f"cannot convert {type(x).__name__} to a p-adic number")

    @classmethod
    def from_digits(cls, ctx, val: int, digits, prec=None) -> PadicNumber:
        n = sum(d * ctx.p ** i for i, d in enumerate(digits))
        absprec = val + len(digits) if prec is None else prec
        return cls._normalize(ctx, val, n, absprec)

    # precision bookkeeping ------------------------------------------------

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def valuation(self):
        return self.val

    @property
    def relprec(self) -> int:
        return 0 if self.val == INF else self.prec - self.val

    def is_zero(self) -> bool:
        return self.val == INF

    def is_exact_zero(self) -> bool:
        return self.val == INF and self.prec == INF

    def valuation_lower_bound(self):
        """Smallest valuation compatible with what is known."""
        return self.prec if self.val == INF else self.val

    def add_bigoh(self, absprec) -> PadicNumber:
        if absprec >= self.prec:
            return self
        if self.val == INF:
            return PadicNumber(self.ctx, INF, 0, absprec)
        return PadicNumber._normalize(self.ctx, self.val, self.unit, absprec)

    def abs(self) -> Fraction:
        """|x|_p as an exact rational."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(self.p) ** (-self.val)

    # arithmetic ------------------------------------------------------------

    def _other(self, other):
        if isinstance(other, PadicNumber):
            if other.ctx.p != self.ctx.p:
                raise DomainError("cannot mix p-adic numbers for different primes")
            return other
        if isinstance(other, (Integral, Rational)):
            return PadicNumber.coerce(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.is_exact_zero():
            return b
        if b.is_exact_zero():
            return a
        absprec = min(a.prec, b.prec)
        if a.val == INF and b.val == INF:
            return PadicNumber(a.ctx, INF, 0, absprec)
        if a.val == INF:
            a, b = b, a
        if b.val == INF:
            return a.add_bigoh(absprec)
        v0 = min(a.val, b.val)
        p = a.p
        n = a.unit * p ** (a.val - v0) + b.unit * p ** (b.val - v0)
        return PadicNumber._normalize(a.ctx, v0, n, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.val == INF:
            return self
        mod = self.p ** self.relprec
        return PadicNumber(self.ctx, self.val, (-self.unit) % mod, self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.is_exact_zero() or b.is_exact_zero():
            return a.ctx.zero()
        if a.val == INF or b.val == INF:
            if a.val == INF and b.val == INF:
                return PadicNumber(a.ctx, INF, 0, a.prec + b.prec)
            z, x = (a, b) if a.val == INF else (b, a)
            return PadicNumber(a.ctx, INF, 0, z.prec + x.val)
        rel = min(a.relprec, b.relprec)
        mod = a.p ** rel
        return PadicNumber(a.ctx, a.val + b.val, a.unit * b.unit % mod, a.val + b.val + rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if b.val == INF:
            raise DivisionByZero("division by a p-adic zero")
        if a.is_exact_zero():
            return a
        if a.val == INF:
            return PadicNumber(a.ctx, INF, 0, a.prec - b.val)
        rel = min(a.relprec, b.relprec)
        mod = a.p ** rel
        v = a.val - b.val
        return PadicNumber(a.ctx, v, a.unit * pow(b.unit, -1, mod) % mod, v + rel)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, Integral):
            return NotImplemented
        n = int(n)
        if n == 0:
            return self.ctx.one()
        if n < 0:
            if self.val == INF:
                raise DivisionByZero("negative power of zero")
            return (self.ctx.one() / self) ** (-n)
        if self.val == INF:
            if self.prec == INF:
                return self
            return PadicNumber(self.ctx, INF, 0, self.prec * n if self.prec > 0 else self.prec)
        # a unit known mod p^r has its n-th power known mod p^(r + v_p(n)) for odd p
        rel = min(self.relprec + vp(n, self.p), self.ctx.N)
        mod = self.p ** rel
        v = self.val * n
        return PadicNumber(self.ctx, v, pow(self.unit, n, mod), v + rel)

    def inverse(self):
        return self.ctx.one() / self

    # comparison --------------------------------------------------------------

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    __hash__ = None

    # conversions ---------------------------------------------------------------

    def residue(self) -> int:
        if self.val == INF:
            if self.prec < 1:
                raise PrecisionExhausted("residue of a zero with no known digits")
            return 0
        if self.val < 0:
            raise DomainError("residue of a non-integral p-adic number")
        return 0 if self.val > 0 else self.unit % self.p

    def lift(self) -> Fraction:
        """Rational representative p**val * unit."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def to_int(self) -> int:
        """Integer representative in [0, p**prec) of an integral number."""
        if self.val == INF:
            return 0
        if self.val < 0:
            raise DomainError("not a p-adic integer")
        return self.unit * self.p ** self.val

    def unit_part(self) -> PadicNumber:
        if self.val == INF:
            raise ZeroInput("zero has no unit part")
        return PadicNumber(self.ctx, 0, self.unit, self.relprec)

    def digits(self) -> list[int]:
        """Little-endian base-p digits of the unit, relprec of them."""
        out, n = [], self.unit
        for _ in range(self.relprec):
            out.append(n % self.p)
            n //= self.p
        return out

    def to_json(self) -> dict:
        if self.val == INF:
            return {"p": self.p, "val": None, "digits": [],
                    "prec": None if self.prec == INF else self.prec}
        return {"p": self.p, "val": self.val, "digits": self.digits(), "prec": self.relprec}

    @classmethod
    def from_json(cls, ctx, data: dict) -> PadicNumber:
        if data["p"] != ctx.p:
            raise DomainError(f"prime mismatch: {data['p']} vs {ctx.p}")
        if data["val"] is None:
            prec = data.get("prec")
            return ctx.zero() if prec is None else cls(ctx, INF, 0, prec)
        digits = list(data["digits"])[: data["prec"]]
        if not digits or digits[0] % ctx.p == 0:
            raise DomainError("unit digit vector must start with a nonzero digit")
        return cls.from_digits(ctx, data["val"], digits, data["val"] + data["prec"])

    def __repr__(self):
        if self.val == INF:
            return "0" if self.prec == INF else f"O({self.p}^{self.prec})"
        if self.val >= 0:
            return f"{self.to_int()} + O({self.p}^{self.prec})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec})"


# ---------------------------------------------------------------------------
# Teichmuller lifts and the exponential / logarithm


def teichmuller_lift(a: int, ctx: PrimeContext) -> PadicNumber:
    """The (p-1)-th root of unity congruent to ``a`` mod p."""
    if not 1 <= a <= ctx.p - 1:
        raise DomainError(f"residue must lie in 1..{ctx.p - 1}, got {a}")
    return PadicNumber(ctx, 0, teichmuller_int(a, ctx.p, ctx.N), ctx.N)


def _require_integral_positive(x: PadicNumber, name: str):
    if x.val != INF and x.val < 1:
        raise DomainError(f"{name} needs v_p(x) >= 1, got valuation {x.val}")


def padic_exp(x: PadicNumber) -> PadicNumber:
    """exp(x) = sum x^n/n! on v_p(x) >= 1."""
    ctx = x.ctx
    _require_integral_positive(x, "exp")
    if x.is_exact_zero():
        return ctx.one()
    target = min(x.prec, ctx.N)
    v = x.valuation_lower_bound()
    p = ctx.p
    total = ctx.one()
    if x.val == INF:
        return total.add_bigoh(target)
    term = ctx.one()
    n = 1
    # v_p(n!) <= (n-1)/(p-1), so terms have valuation >= n*v - (n-1)/(p-1)
    while n * v - Fraction(n - 1, p - 1) < target:
        term = term * x / n
        total = total + term
        n += 1
    return total.add_bigoh(target)


def padic_log(x: PadicNumber) -> PadicNumber:
    """log on Z_p^x, with torsion killed: log(omega(a) * g) = log(g)."""
    ctx = x.ctx
    if x.val == INF or x.val != 0:
        raise DomainError("log needs a p-adic unit (valuation 0)")
    a = x.residue()
    g = x if a == 1 else x / teichmuller_lift(a, ctx)
    z = g - 1
    if z.is_exact_zero():
        return ctx.zero()
    target = z.prec
    if z.val == INF:
        return z
    v = z.val
    p = ctx.p
    total = ctx.zero()
    power = ctx.one()
    n = 1
    while True:
        power = power * z
        term = power / n
        total = total + term if n % 2 else total - term
        n += 1
        # n*v - floor(log_p n) is increasing in n for v >= 1, p >= 3
        if n * v - int(math.log(n, p) + 1e-9) >= target:
            break
    return total.add_bigoh(target)


def frobenius_log(x: PadicNumber, m: int) -> PadicNumber:
    """(x^(p^m) - 1) / p^m, converging to log(x) as m grows."""
    ctx = x.ctx
    if m < 1:
        raise DomainError("m must be at least 1")
    if x.val != 0 or x.residue() != 1:
        raise DomainError("frobenius_log needs x in 1 + pZ_p")
    p = ctx.p
    a = x.prec
    # x mod p^a determines x^(p^m) mod p^(a+m)
    X = x.to_int()
    Y = (pow(X, p ** m, p ** (a + m)) - 1) % p ** (a + m)
    return PadicNumber._normalize(ctx, 0, Y // p ** m, a)


def frobenius_exp_approx(x: PadicNumber, m: int, max_iter: int | None = None) -> PadicNumber:
    """The p^m-th root of 1 + p^m x in 1 + pZ_p, by Newton iteration from 1."""
    ctx = x.ctx
    if m < 1:
        raise DomainError("m must be at least 1")
    _require_integral_positive(x, "frobenius_exp_approx")
    if x.is_exact_zero():
        return ctx.one()
    p = ctx.p
    a = min(x.prec, ctx.N)
    k = p ** m
    hi, lo = p ** (a + m), p ** a
    c = (1 + p ** m * x.to_int()) % hi
    z = 1
    for _ in range(max_iter or 4 * a + 20):
        f = (pow(z, k, hi) - c) % hi
        # z = 1 mod p and c = 1 mod p^(m+1), so f is divisible by p^m
        step = (f // p ** m) * pow(pow(z, k - 1, lo), -1, lo) % lo
        if step == 0:
            return PadicNumber._normalize(ctx, 0, z, a)
        z = (z - step) % lo
    raise NonConvergence(f"Newton iteration for the {k}-th root did not stabilise")


# ---------------------------------------------------------------------------
# generalized logarithms


@dataclass(frozen=True)
class FormalLogValue:
    """s*log(p) + body, where the log(p) part is purely formal."""

    log_p_coeff: Fraction
    body: PadicNumber
    char_index: int

    def __add__(self, other: FormalLogValue) -> FormalLogValue:
        if self.char_index != other.char_index:
            raise DomainError("cannot add generalized logs for different characters")
        return FormalLogValue(self.log_p_coeff + other.log_p_coeff, self.body + other.body,
                              self.char_index)

    def __eq__(self, other):
        if not isinstance(other, FormalLogValue):
            return NotImplemented
        return (self.log_p_coeff == other.log_p_coeff and self.char_index == other.char_index
                and self.body == other.body)

    __hash__ = None


def unit_decompose(x: PadicNumber) -> tuple[int, int, PadicNumber]:
    """Write x = p^s * omega(a) * g with g in 1 + pZ_p."""
    if x.val == INF:
        raise ZeroInput("cannot decompose zero")
    u = x.unit_part()
    a = u.residue()
    g = u / teichmuller_lift(a, x.ctx)
    return x.val, a, g


def generalized_log(x: PadicNumber, l: int) -> FormalLogValue:
    ctx = x.ctx
    if not 0 <= l <= ctx.p - 2:
        raise DomainError(f"character index must lie in 0..{ctx.p - 2}")
    s, a, g = unit_decompose(x)
    body = teichmuller_lift(a, ctx) ** l * padic_log(g)
    return FormalLogValue(Fraction(s), body, l)
