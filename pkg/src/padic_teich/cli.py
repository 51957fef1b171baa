"""Command-line interface: convergence tables, invariant suites, lattice walks."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import diffgroup as dg
from . import integrate as ig
from . import lattice as lt
from . import theta as th
from .errors import DepthInsufficient, PadicError
from .padic import INF, PadicNumber, PrimeContext, frobenius_log, padic_log
from .series import TruncSeries

EXIT_OK, EXIT_CONFIG, EXIT_ASSERT = 0, 2, 3


class ConfigError(Exception):
    pass


def _cell(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, PadicNumber):
        return json.dumps(v.to_json(), separators=(",", ":"))
    if v == INF:
        return "inf"
    return v


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, PadicNumber):
        return v.to_json()
    if isinstance(v, float) and v == INF:
        return "inf"
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def emit(args, header, rows, extra=None):
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(x) for x in r])
        text = buf.getvalue()
    else:
        doc = {"columns": header, "rows": [[_jsonable(x) for x in r] for r in rows]}
        if extra:
            doc.update(_jsonable(extra))
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ctx(args) -> PrimeContext:
    try:
        return PrimeContext(args.prime, args.precision, args.degree)
    except PadicError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {s!r}") from exc


# ---------------------------------------------------------------------------


def cmd_logapprox(args):
    ctx = _ctx(args)
    x = ctx(_parse_rational(args.x))
    if x.is_zero() or x.val != 0 or x.residue() != 1:
        raise ConfigError("x must lie in 1 + pZ_p")
    ref = padic_log(x)
    rows = []
    for m in range(1, args.M + 1):
        diff = frobenius_log(x, m) - ref
        rows.append([m, diff.valuation_lower_bound(), diff.is_zero()])
    vals = [r[1] for r in rows]
    if any(b < a for a, b in zip(vals, vals[1:])):
        emit(args, ["m", "valuation", "zero"], rows)
        raise AssertionError("convergence column is not monotone")
    emit(args, ["m", "valuation", "zero"], rows)


def cmd_suite(args):
    from .suites import run_suite

    reports = run_suite(args.name, seed=args.seed)
    rows = [[r.name, r.checks, r.passed] for r in reports]
    emit(args, ["suite", "checks", "passed"], rows,
         {"reports": [r.to_json() for r in reports]})
    bad = [r for r in reports if not r.passed]
    if bad:
        raise AssertionError(f"suite {bad[0].name} failed: {bad[0].failures[0]}")


def cmd_table(args):
    target = args.target
    if target == "torsion-theta":
        p = args.prime
        ctx = PrimeContext(p, args.precision)
        qt = ctx(_parse_rational(args.q_tilde)) if args.q_tilde else ctx(p)
        try:
            curve = th.TateCurve.from_q_tilde(qt, args.l, args.T)
        except PadicError as exc:
            raise ConfigError(str(exc)) from exc
        rows = []
        for j in range(1, curve.l_star + 1):
            val = th.theta_torsion_value(j, curve)
            rows.append([j, Fraction(val.val, qt.val), val])
        emit(args, ["j", "qtilde_order", "value"], rows)
    elif target == "log-volume":
        primes = [int(s) for s in args.primes.split(",")]
        rows = []
        for p in primes:
            for e in (1, 2):
                for f in (1, 2):
                    for m in (1, 2):
                        vols = [lt.log_volume(p, e, f, m, s) for s in lt.SUBSETS]
                        rows.append([p, e, f, m] + [str(v) for v in vols])
        emit(args, ["p", "e", "f", "m"] + list(lt.SUBSETS), rows)
    elif target == "serre-elliptic":
        p = args.prime
        rows = []
        for spec in args.curves.split(","):
            a4, a6 = (int(s) for s in spec.split(":"))
            n = ig.elliptic_point_count(a4, a6, p)
            rows.append([a4, a6, p, n, ig.elliptic_serre_invariant(a4, a6, p).value])
        emit(args, ["a4", "a6", "p", "points", "invariant"], rows)
    elif target == "frobenius-lift":
        p = args.prime
        rows = [[t, m, lt.frobenius_lift(t, m, p)] for t in range(p) for m in range(1, args.M + 1)]
        emit(args, ["t", "m", "F_m"], rows)
    else:
        raise ConfigError(f"unknown table {target!r}")


def cmd_lattice(args):
    p = args.prime
    ctx = PrimeContext(p, args.precision)
    start = lt.start_cell(ctx, _parse_rational(args.unit))
    trace = lt.lattice_walk(start, args.steps.split(","), l=args.l)
    rows = []
    running = lt.LogVolume()
    for i, cell in enumerate(trace.cells):
        if i:
            running = running + trace.step_volumes[i - 1]
        rows.append([i, cell.n, cell.m, " ".join(str(a) for a in cell.pilot), cell.unit,
                     str(running)])
    emit(args, ["step", "n", "m", "pilot", "unit", "cumulative_volume"], rows,
         {"trace": [c.to_json() for c in trace.cells], "total": str(trace.total)})


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def cmd_diff(args):
    ctx = _ctx(args)
    elts = [dg.DiffElement.from_json(ctx, _load_json(path)) for path in args.inputs]
    op = args.op
    if op == "compose":
        if len(elts) != 2:
            raise ConfigError("compose takes two series files")
        out = dg.compose(elts[0], elts[1]).to_json()
    elif op == "invert":
        out = dg.invert(elts[0]).to_json()
    elif op == "schwarzian":
        out = dg.schwarzian(elts[0]).to_json()
    else:
        raise ConfigError(f"unknown diff op {op!r}")
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_integrate(args):
    ctx = _ctx(args)
    doc = _load_json(args.input)
    poly = TruncSeries.from_json(ctx, doc["integrand"])
    r = doc.get("r", 1)
    depth = doc.get("depth", args.depth)
    p = ctx.p
    try:
        if r == "inf":
            value = ig.sup_norm(poly, depth)
        else:
            value = ig.haar_integral(ig.NormIntegrand([(poly, int(r))]), depth)
        out = {"value": str(value), "exact": True, "errorBound": None}
    except DepthInsufficient as exc:
        out = {"value": str(exc.partial), "exact": False,
               "errorBound": None if exc.error_bound is None else str(exc.error_bound),
               "note": f"unresolved at depth {depth} (p={p})"}
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "--p", dest="prime", type=int, default=5)
    common.add_argument("--precision", type=int, default=10)
    common.add_argument("--degree", type=int, default=8)
    common.add_argument("--depth", type=int, default=12)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None)

    ap = argparse.ArgumentParser(prog="padic-teich", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("log-approx", parents=[common], help="Frobenius-limit log convergence")
    s.add_argument("--x", default="6")
    s.add_argument("--M", type=int, default=8)
    s.set_defaults(func=cmd_logapprox)

    s = sub.add_parser("suite", parents=[common], help="run a seeded invariant suite")
    s.add_argument("name", choices=["diffgroup", "witt", "theta", "integrate", "lattice", "all"])
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("table", parents=[common], help="emit a table over a parameter grid")
    s.add_argument("target", choices=["torsion-theta", "log-volume", "serre-elliptic",
                                      "frobenius-lift"])
    s.add_argument("--l", type=int, default=5)
    s.add_argument("--q-tilde", default=None)
    s.add_argument("--T", type=int, default=24)
    s.add_argument("--primes", default="3,5")
    s.add_argument("--curves", default="0:1,1:0,1:1,1:2")
    s.add_argument("--M", type=int, default=8)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("lattice", help="log/theta lattice walker")
    lsub = s.add_subparsers(dest="lattice_cmd", required=True)
    w = lsub.add_parser("walk", parents=[common])
    w.add_argument("--l", type=int, default=5)
    w.add_argument("--steps", default="T,L,T,L")
    w.add_argument("--unit", default="1")
    w.set_defaults(func=cmd_lattice)

    s = sub.add_parser("diff", parents=[common], help="compose/invert/schwarzian on JSON series")
    s.add_argument("op", choices=["compose", "invert", "schwarzian"])
    s.add_argument("inputs", nargs="+")
    s.set_defaults(func=cmd_diff)

    s = sub.add_parser("integrate", parents=[common], help="Haar integral of |P|^r")
    s.add_argument("input")
    s.set_defaults(func=cmd_integrate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, PadicError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AssertionError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
