"""Seeded invariant suites, shared by the CLI and the acceptance tests."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import diffgroup as dg
from . import integrate as ig
from . import lattice as lt
from . import theta as th
from . import witt as wt
from .padic import PrimeContext
from .series import TruncSeries


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, label: str, detail=None):
        self.checks += 1
        if not ok:
            self.failures.append({"check": label, "detail": str(detail)})

    def to_json(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "passed": self.passed,
                "failures": self.failures[:5]}


def witt_suite(seed: int = 0, count: int = 50, p: int = 5) -> SuiteReport:
    rng = random.Random(seed)
    rep = SuiteReport("witt")
    for _ in range(count):
        n = rng.randint(1, 6)
        a = wt.WittVector(p, [rng.randrange(p) for _ in range(n)])
        b = wt.WittVector(p, [rng.randrange(p) for _ in range(n)])
        ctx = PrimeContext(p, n + 1)
        pa = wt.witt_to_zp(a, ctx)
        rep.check(wt.witt_to_zp(wt.verschiebung(wt.frobenius_op(a), grow=True), ctx) == p * pa,
                  "VF = [p]", a)
        rep.check(wt.witt_to_zp(wt.frobenius_op(wt.verschiebung(a, grow=True)), ctx) == p * pa,
                  "FV = [p]", a)
        rep.check(wt.zp_to_witt(wt.witt_to_zp(a), n) == a, "round trip", a)
        s, m = wt.witt_add(a, b), wt.witt_mul(a, b)
        ga, gb, gs, gm = (wt.ghost_components(v) for v in (a, b, s, m))
        for i in range(n):
            mod = p ** (i + 1)
            rep.check((gs[i] - ga[i] - gb[i]) % mod == 0, "ghost add", (a, b, i))
            rep.check((gm[i] - ga[i] * gb[i]) % mod == 0, "ghost mul", (a, b, i))
    return rep


def diffgroup_suite(seed: int = 0, count: int = 100, p: int = 5, N: int = 10, D: int = 8) -> SuiteReport:
    ctx = PrimeContext(p, N, D)
    rng = random.Random(seed)
    rep = SuiteReport("diffgroup")
    ident = dg.identity(ctx)
    for _ in range(count):
        f, g, h = (dg.random_member(ctx, rng) for _ in range(3))
        fg = dg.compose(f, g)
        rep.check(dg.compose(fg, h) == dg.compose(f, dg.compose(g, h)), "associativity", f)
        rep.check(dg.compose(f, dg.invert(f)) == ident, "right inverse", f)
        rep.check(dg.compose(dg.invert(f), f) == ident, "left inverse", f)
        rep.check(fg.certified and fg.f.valuation() >= 1, "closure", fg)
        rep.check(dg.reduce_mod(f, 1).is_identity(), "reduce mod p is identity", f)
        rep.check(dg.reduce_mod(fg, 2) == dg.reduce_mod(f, 2).compose(dg.reduce_mod(g, 2)),
                  "table functoriality mod p^2", (f, g))
        rep.check(dg.cocycle_identity_check(f, g), "1-cocycle", (f, g))
        rep.check(dg.phi_inf(fg) == dg.phi_inf(g) + dg.phi_inf(f).compose(g.phi),
                  "log cocycle", (f, g))
    return rep


def integrate_suite(seed: int = 0, p: int = 5) -> SuiteReport:
    rep = SuiteReport("integrate")
    ctx = PrimeContext(p, 10, 4)
    x = TruncSeries.from_values(ctx, [0, 1])
    rep.check(ig.haar_integral(ig.NormIntegrand.constant(ctx), 3) == 1, "normalized Haar")
    for r in range(1, 5):
        oracle = (1 - Fraction(1, p)) / (1 - Fraction(p) ** (-r - 1))
        rep.check(ig.haar_integral(ig.NormIntegrand([(x, r)]), 4) == oracle, f"|x|^{r}")
    rng = random.Random(seed)
    for q in (5, 7, 11):
        done = 0
        while done < 10:
            a4, a6 = rng.randrange(q), rng.randrange(q)
            if (4 * a4 ** 3 + 27 * a6 ** 2) % q == 0:
                continue
            naive = 1 + sum(1 for xx in range(q) for yy in range(q)
                            if (yy * yy - xx ** 3 - a4 * xx - a6) % q == 0)
            inv = ig.elliptic_serre_invariant(a4, a6, q)
            rep.check(inv.value == (naive - 1) % (q - 1) + 1, "elliptic invariant", (a4, a6, q))
            done += 1
    return rep


def theta_suite(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("theta")
    ctx = PrimeContext(5, 40)
    curve = th.TateCurve(ctx(15), 24)
    for u in th.sample_units(curve, 10, seed=seed):
        r = th.theta_fundamental(u, curve) + u * th.theta_fundamental(curve.q * u, curve)
        rep.check(r.valuation_lower_bound() >= (curve.T - 1) * curve.vq, "theta type -u", u)
    for p, l in ((5, 3), (5, 5), (7, 5)):
        c2 = PrimeContext(p, 40)
        cur = th.TateCurve.from_q_tilde(c2(p), l, 24)
        for j in range(1, cur.l_star + 1):
            rep.check(th.theta_torsion_value(j, cur) == cur.q_tilde ** (j * j), "torsion", (l, j))
    return rep


def lattice_suite(seed: int = 0, p: int = 5) -> SuiteReport:
    rep = SuiteReport("lattice")
    for m in range(2, 9):
        for t in range(p):
            rep.check((lt.frobenius_lift(t, m, p) - lt.frobenius_lift(t, m - 1, p)) % p ** m == 0,
                      "F_m = F_(m-1) mod p^m", (t, m))
    ctx = PrimeContext(p, 9)
    for t in range(p - 1):
        lim = lt.lift_limit(t, ctx).to_int()
        for m in range(1, 9):
            rep.check((lim - lt.frobenius_lift(t, m, p)) % p ** m == 0, "limit", (t, m))
    start = lt.start_cell(ctx, 1 + p)
    k = 3
    trace = lt.lattice_walk(start, ["L"] * k, l=5)
    rep.check(trace.total == lt.log_volume(p, 1, 1, 1, "logShellNormalized").scale(k),
              "volume additivity")
    return rep


SUITES = {"witt": witt_suite, "diffgroup": diffgroup_suite, "integrate": integrate_suite,
          "theta": theta_suite, "lattice": lattice_suite}


def run_suite(name: str, seed: int = 0) -> list[SuiteReport]:
    if name == "all":
        return [fn(seed=seed) for fn in SUITES.values()]
    return [SUITES[name](seed=seed)]
