"""Integer polynomials modulo M, truncated by total degree.

Polynomials are dicts mapping exponent tuples to ints.  They are used to
lift p-adic series computations to integers when a power p**m of a series
congruent to 1 mod p is needed: if Q is known mod p**a then Q**(p**m) is
known mod p**(a+m), which capped-relative arithmetic cannot see.
"""
from __future__ import annotations


def _deg(e):
    return sum(e)


def clean(a, M):
    return {e: c % M for e, c in a.items() if c % M}


def add(a, b, M):
    out = dict(a)
    for e, c in b.items():
        out[e] = (out.get(e, 0) + c) % M
    return {e: c for e, c in out.items() if c}


def mul(a, b, deg, M):
    out = {}
    for ea, ca in a.items():
        da = _deg(ea)
        for eb, cb in b.items():
            if da + _deg(eb) > deg:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % M
    return {e: c for e, c in out.items() if c}


def power(a, n, deg, M, nvars):
    result = {(0,) * nvars: 1 % M}
    base = clean(a, M)
    while n:
        if n & 1:
            result = mul(result, base, deg, M)
        n >>= 1
        if n:
            base = mul(base, base, deg, M)
    return result


def uni(coeffs):
    """List of ints -> univariate dict."""
    return {(i,): c for i, c in enumerate(coeffs) if c}


def to_list(a, deg):
    out = [0] * (deg + 1)
    for (i,), c in a.items():
        if i <= deg:
            out[i] = c
    return out


def inverse_uni(a, deg, M):
    """Inverse of a univariate series with unit constant term, mod M."""
    c = to_list(a, deg)
    inv0 = pow(c[0], -1, M)
    out = [0] * (deg + 1)
    out[0] = inv0
    for n in range(1, deg + 1):
        s = sum(c[k] * out[n - k] for k in range(1, n + 1))
        out[n] = (-s * inv0) % M
    return uni(out)


def contracting_power(a, p, m, deg, prec, nvars):
    """(a**(p**m) - 1) / p**m mod p**prec, for a = 1 mod p known mod p**prec."""
    big = p ** (prec + m)
    P = power(a, p ** m, deg, big, nvars)
    one = (0,) * nvars
    P[one] = P.get(one, 0) - 1
    out = {}
    for e, c in P.items():
        c %= big
        if c % p ** m:
            raise ArithmeticError("input was not congruent to 1 mod p")
        if c:
            out[e] = c // p ** m
    return out


def root_uni(c, p, m, deg, prec, max_iter=200):
    """z with z**(p**m) = c, z = 1 mod p, for c = 1 mod p**(m+1); z mod p**prec.

    Newton: z <- z - (z**k - c) / (k * z**(k-1)), where the division by k = p**m
    is done exactly on the integer lift.
    """
    k = p ** m
    hi, lo = p ** (prec + m), p ** prec
    z = {(0,): 1}
    for _ in range(max_iter):
        zk1 = power(z, k - 1, deg, hi, 1)
        f = add(mul(zk1, z, deg, hi), {e: -v for e, v in c.items()}, hi)
        if any(v % k for v in f.values()):
            raise ArithmeticError("target is not congruent to 1 mod p^(m+1)")
        f = {e: v // k % lo for e, v in f.items()}
        f = {e: v for e, v in f.items() if v}
        if not f:
            return {e: v % lo for e, v in z.items() if v % lo}
        step = mul(f, inverse_uni(zk1, deg, lo), deg, lo)
        z = add(z, {e: -v for e, v in step.items()}, lo)
    raise ArithmeticError("Newton iteration did not stabilise")
