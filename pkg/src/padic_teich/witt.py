"""Witt vectors over F_p, realised through W(F_p) = Z_p with Teichmuller digits."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, LengthMismatch, PrecisionExhausted
from .padic import PadicNumber, PrimeContext, teichmuller_int


@dataclass(frozen=True)
class WittVector:
    p: int
    digits: tuple

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        if not self.digits:
            raise DomainError("Witt vectors need length >= 1")
        if any(not 0 <= d < self.p for d in self.digits):
            raise DomainError(f"digits must lie in 0..{self.p - 1}")

    def __len__(self):
        return len(self.digits)

    def to_json(self) -> dict:
        return {"p": self.p, "digits": list(self.digits)}

    @classmethod
    def from_json(cls, data) -> WittVector:
        return cls(data["p"], tuple(data["digits"]))


def ghost_components(w: WittVector) -> list[int]:
    """W_k = sum_{i<=k} p^i X_i^(p^(k-i)) on the integer lifts 0..p-1 of the digits."""
    p = w.p
    return [sum(p ** i * w.digits[i] ** (p ** (k - i)) for i in range(k + 1))
            for k in range(len(w))]


def _ctx_for(w: WittVector, ctx):
    n = len(w)
    if ctx is None:
        return PrimeContext(w.p, max(n, 2))
    if ctx.p != w.p:
        raise DomainError("prime mismatch")
    if ctx.N < n:
        raise PrecisionExhausted(f"precision {ctx.N} < Witt length {n}")
    return ctx


def witt_to_zp(w: WittVector, ctx: PrimeContext | None = None) -> PadicNumber:
    """sum omega(X_i) p^i, known modulo p^n."""
    ctx = _ctx_for(w, ctx)
    n = len(w)
    p = w.p
    total = sum(teichmuller_int(d, p, n) * p ** i for i, d in enumerate(w.digits)) % p ** n
    return PadicNumber._normalize(ctx, 0, total, n)


def zp_to_witt(x: PadicNumber, n: int) -> WittVector:
    p = x.p
    if x.valuation_lower_bound() < 0:
        raise DomainError("only p-adic integers have Witt digits")
    if x.prec < n:
        raise PrecisionExhausted(f"value known only mod p^{x.prec}, need p^{n}")
    r = x.to_int() % p ** n
    digits = []
    for i in range(n):
        mod = p ** (n - i)
        d = r % p
        digits.append(d)
        # r <- (r - omega(d)) / p, all modulo p^(n-i)
        r = ((r - teichmuller_int(d, p, n - i)) % mod) // p
    return WittVector(p, tuple(digits))


def _binary(a: WittVector, b: WittVector, op) -> WittVector:
    if a.p != b.p:
        raise DomainError("prime mismatch")
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")
    ctx = PrimeContext(a.p, max(len(a), 2))
    return zp_to_witt(op(witt_to_zp(a, ctx), witt_to_zp(b, ctx)), len(a))


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return _binary(a, b, lambda x, y: x + y)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return _binary(a, b, lambda x, y: x * y)


def witt_neg(a: WittVector) -> WittVector:
    ctx = PrimeContext(a.p, max(len(a), 2))
    return zp_to_witt(-witt_to_zp(a, ctx), len(a))


def verschiebung(w: WittVector, grow: bool = False) -> WittVector:
    """(X_0, X_1, ...) -> (0, X_0, X_1, ...); drops the last digit unless ``grow``."""
    digits = (0,) + w.digits
    return WittVector(w.p, digits if grow else digits[:-1])


def frobenius_op(w: WittVector) -> WittVector:
    return WittVector(w.p, tuple(pow(d, w.p, w.p) for d in w.digits))
