"""Truncated power series c_0 + c_1 x + ... + c_D x^D over Q_p."""
from __future__ import annotations

import math
from fractions import Fraction

from . import _intpoly
from .errors import DomainError, ModulusMismatch, PrecisionExhausted
from .padic import INF, PadicNumber, PrimeContext


class TruncSeries:
    __slots__ = ("ctx", "coeffs", "losses")

    def __init__(self, ctx: PrimeContext, coeffs, losses=()):
        coeffs = [PadicNumber.coerce(ctx, c) for c in coeffs]
        if not coeffs:
            coeffs = [ctx.zero()]
        self.ctx = ctx
        self.coeffs = tuple(coeffs)
        # (index, digits lost) entries from antiderivatives
        self.losses = tuple(losses)

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx, D=None):
        D = ctx.D if D is None else D
        return cls(ctx, [ctx.zero()] * (D + 1))

    @classmethod
    def one(cls, ctx, D=None):
        D = ctx.D if D is None else D
        return cls(ctx, [ctx.one()] + [ctx.zero()] * D)

    @classmethod
    def x(cls, ctx, D=None):
        D = ctx.D if D is None else D
        return cls(ctx, [ctx.zero(), ctx.one()] + [ctx.zero()] * (D - 1))

    @classmethod
    def from_values(cls, ctx, values, D=None):
        """Pad or truncate a list of ints/Fractions/PadicNumbers to degree D."""
        D = ctx.D if D is None else D
        vals = list(values)[: D + 1]
        vals += [0] * (D + 1 - len(vals))
        return cls(ctx, vals)

    # basic structure --------------------------------------------------------

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k) -> PadicNumber:
        return self.coeffs[k] if k <= self.D else self.ctx.zero()

    def truncate(self, D: int) -> TruncSeries:
        if D <= self.D:
            return TruncSeries(self.ctx, self.coeffs[: D + 1], self.losses)
        return TruncSeries(self.ctx, list(self.coeffs) + [self.ctx.zero()] * (D - self.D),
                           self.losses)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries(self.ctx, [other])
        if other.ctx.p != self.ctx.p:
            raise ModulusMismatch("series over different primes")
        return other

    def valuation(self):
        """min over coefficients of their valuation lower bounds."""
        return min(c.valuation_lower_bound() for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def min_absprec(self):
        return min(c.prec for c in self.coeffs)

    # arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        D = max(self.D, other.D)
        return TruncSeries(self.ctx, [self[k] + other[k] for k in range(D + 1)],
                           self.losses + other.losses)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.ctx, [-c for c in self.coeffs], self.losses)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def scale(self, c) -> TruncSeries:
        c = PadicNumber.coerce(self.ctx, c)
        return TruncSeries(self.ctx, [c * a for a in self.coeffs], self.losses)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        other = self._check(other)
        D = min(self.D, other.D)
        out = [self.ctx.zero() for _ in range(D + 1)]
        for i in range(D + 1):
            a = self.coeffs[i]
            if a.is_exact_zero():
                continue
            for j in range(D + 1 - i):
                b = other.coeffs[j]
                if not b.is_exact_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.ctx, out, self.losses + other.losses)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries.one(self.ctx, self.D)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> TruncSeries:
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise DomainError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for n in range(1, self.D + 1):
            s = self.ctx.zero()
            for k in range(1, n + 1):
                s = s + self.coeffs[k] * out[n - k]
            out.append(-s * inv0)
        return TruncSeries(self.ctx, out, self.losses)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self.scale(PadicNumber.coerce(self.ctx, other).inverse())

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # calculus -----------------------------------------------------------------

    def derivative(self) -> TruncSeries:
        if self.D == 0:
            return TruncSeries(self.ctx, [self.ctx.zero()], self.losses)
        return TruncSeries(self.ctx, [k * self.coeffs[k] for k in range(1, self.D + 1)],
                           self.losses)

    def antiderivative(self, budget: int | None = None) -> TruncSeries:
        """Constant term 0; dividing by k loses v_p(k) digits, recorded in ``losses``."""
        p = self.ctx.p
        out = [self.ctx.zero()]
        losses = list(self.losses)
        for k in range(1, self.D + 2):
            c = self.coeffs[k - 1]
            loss = 0
            kk = k
            while kk % p == 0:
                kk //= p
                loss += 1
            if loss:
                losses.append((k, loss))
                if budget is not None and loss > budget:
                    raise PrecisionExhausted(f"antiderivative at index {k} loses {loss} digits")
            out.append(c / k)
        return TruncSeries(self.ctx, out, losses)

    # substitution ---------------------------------------------------------------

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """self(inner(x)) truncated at min degree; inner must have zero constant term."""
        inner = self._check(inner)
        if not inner.coeffs[0].is_zero():
            raise DomainError("inner series must have zero constant term")
        D = min(self.D, inner.D)
        inner = inner.truncate(D)
        acc = TruncSeries(self.ctx, [self.coeffs[min(self.D, D)]] + [self.ctx.zero()] * D)
        for k in range(min(self.D, D) - 1, -1, -1):
            acc = acc * inner
            acc = TruncSeries(self.ctx, [acc.coeffs[0] + self.coeffs[k]] + list(acc.coeffs[1:]),
                              acc.losses)
        # terms of degree > D in self cannot contribute below degree D+1
        return TruncSeries(self.ctx, acc.coeffs, self.losses + inner.losses)

    def evaluate(self, x) -> PadicNumber:
        x = PadicNumber.coerce(self.ctx, x)
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def taylor_shift(self, a) -> TruncSeries:
        """Coefficients of self(a + x), exact for the polynomial self."""
        a = PadicNumber.coerce(self.ctx, a)
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return TruncSeries(self.ctx, c, self.losses)

    # integer lifts -----------------------------------------------------------------

    def integral_ints(self, prec: int | None = None) -> tuple[list[int], int]:
        """Integer representatives of integral coefficients modulo p**prec."""
        prec = self.min_absprec() if prec is None else prec
        prec = min(prec, self.min_absprec())
        if prec == INF:
            prec = self.ctx.N
        mod = self.ctx.p ** prec
        out = []
        for c in self.coeffs:
            if c.val != INF and c.val < 0:
                raise DomainError("series has a non-integral coefficient")
            out.append(c.to_int() % mod)
        return out, prec

    @classmethod
    def from_ints(cls, ctx, ints, prec) -> TruncSeries:
        return cls(ctx, [PadicNumber._normalize(ctx, 0, n, prec) for n in ints])

    # serialization ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"D": self.D, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx, data) -> TruncSeries:
        coeffs = [PadicNumber.from_json(ctx, c) if isinstance(c, dict) else c
                  for c in data["coeffs"]]
        return cls.from_values(ctx, coeffs, data.get("D", len(coeffs) - 1))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({c})*x^{k}" if k else f"({c})")
        return " + ".join(terms) if terms else "0"


def _require_small(s: TruncSeries, what: str):
    for k, c in enumerate(s.coeffs):
        if c.valuation_lower_bound() < 1:
            raise DomainError(f"{what}: coefficient {k} has valuation < 1")


def series_log(s: TruncSeries) -> TruncSeries:
    """log(s) for s = 1 + t with every coefficient of t of valuation >= 1."""
    t = s - 1
    _require_small(t, "series_log")
    ctx = s.ctx
    target = min(ctx.N + 1, t.min_absprec()) if t.min_absprec() != INF else ctx.N + 1
    p = ctx.p
    total = TruncSeries.zero(ctx, s.D)
    power = TruncSeries.one(ctx, s.D)
    n = 1
    while True:
        power = power * t
        term = power / n
        total = total + term if n % 2 else total - term
        n += 1
        if n - int(math.log(n, p) + 1e-9) >= target + 1:
            break
    return total


def series_exp(g: TruncSeries) -> TruncSeries:
    """exp(g) for g with every coefficient of valuation >= 1."""
    _require_small(g, "series_exp")
    ctx = g.ctx
    p = ctx.p
    target = ctx.N + 1
    total = TruncSeries.one(ctx, g.D)
    term = TruncSeries.one(ctx, g.D)
    n = 1
    while n - Fraction(n - 1, p - 1) < target + 1:
        term = term * g / n
        total = total + term
        n += 1
    return total


def contracting_power(s: TruncSeries, m: int) -> TruncSeries:
    """(s**(p**m) - 1) / p**m for s = 1 mod p, without losing m digits."""
    ctx = s.ctx
    ints, prec = s.integral_ints()
    res = _intpoly.contracting_power(_intpoly.uni(ints), ctx.p, m, s.D, prec, 1)
    return TruncSeries.from_ints(ctx, _intpoly.to_list(res, s.D), prec)


def unipotent_power(s: TruncSeries, m: int) -> TruncSeries:
    """s**(p**m) for s = 1 mod p, with the precision gain of m digits."""
    return contracting_power(s, m).scale(s.ctx.p ** m) + 1


def contracting_root(g: TruncSeries, m: int) -> TruncSeries:
    """The series z = 1 mod p with (z**(p**m) - 1) / p**m = g."""
    ctx = g.ctx
    p = ctx.p
    ints, prec = g.integral_ints()
    big = p ** (prec + m)
    c = [(p ** m * v) % big for v in ints]
    c[0] = (c[0] + 1) % big
    z = _intpoly.root_uni(_intpoly.uni(c), p, m, g.D, prec)
    return TruncSeries.from_ints(ctx, _intpoly.to_list(z, g.D), prec)
