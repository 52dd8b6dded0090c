"""Command-line interface: ``aslfunc {lfunc,verify,stats,sweep}``.

Exit codes: 0 success, 1 a verification check failed (or a sweep instance
errored), 2 a size cap or work limit was exceeded, 3 an internal
integrality/consistency failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import traceback
from concurrent.futures import ProcessPoolExecutor

from . import curve, field
from .errors import (ASLError, EvenCharacteristic, FunctionalEquationViolated, MismatchAt,
                     NotPrime, NotRationalInteger, SizeCapExceeded, WorkLimitExceeded)

EX_USAGE = 64
SUMMARY_COLUMNS = (["q", "a", "gamma", "rank", "b", "L*", "log_ratio", "D*", "min_margin",
                    "log_sin2_avg"] + [f"M_{n}" for n in range(1, 9)] + ["status"])


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _check_q(q):
    try:
        field.prime_power(q)
    except (NotPrime, EvenCharacteristic) as exc:
        raise UsageError(f"invalid q={q}: {exc}") from None
    return q


def _check_gamma(q, gamma):
    if not 0 < gamma < q:
        raise UsageError(f"gamma must be an integer in [1, {q - 1}] (a nonzero element of F_{q})")
    return gamma


def _check_caps(args, q, a):
    if q**a > args.enum_cap:
        raise SizeCapExceeded(f"q^a = {q**a} exceeds the enumeration cap {args.enum_cap}")


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    atomic_write(path, text)


def atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _finite(x):
    return x if math.isfinite(x) else None


def lfunc_payload(params, debug=False):
    from .lfunction import l_polynomial, special_value
    L = l_polynomial(params, debug=debug)
    sv = special_value(params, L)
    out = L.to_json()
    rep = sv.as_dict()
    rep["special_value_float"] = _finite(rep["special_value_float"])
    out.update(rep)
    return out


def cmd_lfunc(args):
    q = _check_q(args.q)
    params = curve.CurveParams(q, args.a, _check_gamma(q, args.gamma))
    _check_caps(args, q, args.a)
    _write(args.out, _dump(lfunc_payload(params, debug=args.debug)))
    return 0


def _verify_checks(params, args):
    """Yield (name, ok, detail) for each verification check, in order."""
    from .kloosterman import kloosterman_salie, kloosterman_sum, place_values
    from .lfunction import (analytic_rank, l_polynomial, LPoly, special_value_division,
                            special_value_product, verify_functional_equation, verify_series)
    q, a, g = params.q, params.a, params.gamma
    ps, vals = place_values(q, a, g)

    bad = [v.label() for v, kv in zip(ps.places, vals)
           if kloosterman_salie(kv.alpha.ctx, kv.alpha) != kv.value]
    yield "salie_equals_definition", not bad, f"{len(vals)} places" + (f", first bad {bad[0]}" if bad else "")

    base = field.extension(q, 1)
    ok = True
    for beta in range(q):
        m = curve.m_sum(base, beta, g, work_limit=args.work_limit)
        t = base.tables
        want = 1 if beta == 0 else kloosterman_sum(base, int(t.mul(t.mul(beta, beta), g))) ** 2 - q
        ok &= m == want
    yield "m_sum_identity", ok, f"F_{q}, all beta"

    ok, fields = True, 0
    n = 1
    while q**n <= min(729, args.enum_cap):
        ctx = field.extension(q, n)
        for z in range(ctx.order):
            cnt, val = curve.artin_schreier_count(ctx, z, a)
            ok &= cnt == val
        fields += 1
        n += 1
    yield "counting_lemma", ok, f"{fields} fields"

    L = l_polynomial(params)
    yield "integrality_and_degree", L.b == params.b, f"b = {L.b}"
    if args.inject_mutation:
        c = list(L.coeffs)
        c[1] += 1
        L = LPoly(L.q, L.a, L.gamma, tuple(c))
    try:
        eps = verify_functional_equation(L)
        yield "functional_equation", True, f"eps = {eps:+d}"
    except FunctionalEquationViolated as exc:
        yield "functional_equation", False, str(exc)

    try:
        rep = verify_series(params, L, args.n_max, work_limit=args.work_limit)
        yield "series_vs_point_counts", True, f"n <= {rep.n_max}"
    except MismatchAt as exc:
        yield "series_vs_point_counts", False, str(exc)

    rho = analytic_rank(L)
    yield "rank_identity", rho == len(ps), f"rank {rho}, |P_q(a)| = {len(ps)}"

    try:
        via_a = special_value_division(L)
        via_b = special_value_product(params)
        yield "special_value_routes", via_a == via_b, f"{via_a} vs {via_b}"
    except ArithmeticError as exc:
        yield "special_value_routes", False, str(exc)


def cmd_verify(args):
    q = _check_q(args.q)
    params = curve.CurveParams(q, args.a, _check_gamma(q, args.gamma))
    _check_caps(args, q, args.a)
    if q ** (2 * args.n_max) > args.work_limit:
        raise WorkLimitExceeded(f"n_max = {args.n_max} needs q^(2n) = {q ** (2 * args.n_max)} "
                                f"> work limit {args.work_limit}")
    first_fail = None
    print(f"{'check':<26} {'result':<6} detail")
    for name, ok, detail in _verify_checks(params, args):
        print(f"{name:<26} {'PASS' if ok else 'FAIL':<6} {detail}")
        if not ok and first_fail is None:
            first_fail = name
    if first_fail:
        print(f"verification failed: {first_fail}", file=sys.stderr)
        return 1
    return 0


def cmd_stats(args):
    from .statistics import angle_ensemble, stats_report
    q = _check_q(args.q)
    params = curve.CurveParams(q, args.a, _check_gamma(q, args.gamma))
    _check_caps(args, q, args.a)
    if args.format == "csv":
        _write(args.out, angle_ensemble(params).to_csv())
    else:
        _write(args.out, _dump(stats_report(params)))
        if args.csv:
            atomic_write(args.csv, angle_ensemble(params).to_csv())
    return 0


def _format_lstar(log_value):
    """Scientific notation of exp(log_value) without overflowing a float."""
    l10 = log_value / math.log(10)
    e = math.floor(l10)
    mant = 10 ** (l10 - e)
    if mant >= 9.9999999999995:
        mant, e = mant / 10, e + 1
    return f"{mant:.12f}e{e:+03d}"


def sweep_instance(q, a, gamma, out_dir):
    """Compute, write the per-instance JSON, and return the summary row."""
    from .lfunction import l_polynomial, special_value
    from .statistics import stats_report
    params = curve.CurveParams(q, a, gamma)
    L = l_polynomial(params)
    sv = special_value(params, L)
    st = stats_report(params, sv)
    rep = sv.as_dict()
    rep["special_value_float"] = _finite(rep["special_value_float"])
    doc = {"lpoly": L.to_json(), "special_value": rep, "stats": st}
    atomic_write(os.path.join(out_dir, f"q{q}_a{a}_g{gamma}.json"), _dump(doc))
    row = [q, a, gamma, sv.rank, sv.b, _format_lstar(sv.log_value), repr(sv.log_ratio),
           repr(st["discrepancy"]), repr(st["min_margin"]), repr(st["log_sin2_avg"])]
    row += [repr(m) for m in st["moments"]] + ["ok"]
    return row


def _sweep_job(job):
    q, a, gamma, out_dir, enum_cap = job
    try:
        if q**a > enum_cap:
            raise SizeCapExceeded(f"q^a = {q**a} exceeds the enumeration cap {enum_cap}")
        return sweep_instance(q, a, gamma, out_dir)
    except Exception as exc:  # recorded per instance, the sweep continues
        return [q, a, gamma] + [""] * (len(SUMMARY_COLUMNS) - 4) + [f"error: {type(exc).__name__}: {exc}"]


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def cmd_sweep(args):
    qs = [_check_q(q) for q in args.q]
    jobs = []
    for q in qs:
        for a in args.a:
            if a < 1:
                raise UsageError("a must be positive")
            if args.gamma == "all":
                gammas = range(1, q)
            else:
                try:
                    gammas = [_check_gamma(q, int(args.gamma))]
                except ValueError:
                    raise UsageError(f"--gamma must be an integer or 'all', got {args.gamma!r}")
            jobs += [(q, a, g, args.out_dir, args.enum_cap) for g in gammas]
    if not jobs:
        raise UsageError("empty sweep grid")
    os.makedirs(args.out_dir, exist_ok=True)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_job, jobs))
    else:
        rows = [_sweep_job(j) for j in jobs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    w.writerows(rows)
    atomic_write(os.path.join(args.out_dir, "summary.csv"), buf.getvalue())
    failed = [r for r in rows if r[-1] != "ok"]
    for r in failed:
        print(f"q={r[0]} a={r[1]} gamma={r[2]}: {r[-1]}", file=sys.stderr)
    return 1 if failed else 0


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    ap = _Parser(prog="aslfunc", description="L-functions of the Artin-Schreier family "
                 "y^2 = x(x + 16 gamma)(x + (t^(q^a) - t)^2) over F_q(t).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--q", type=int, required=True, help="odd prime power")
        p.add_argument("--a", type=_positive, required=True)
        p.add_argument("--gamma", type=int, required=True,
                       help="integer representative of gamma in [1, q-1]")
        p.add_argument("--enum-cap", type=_positive, default=field.TABLE_CAP,
                       help="largest q^a to enumerate (default %(default)s)")
        p.add_argument("--work-limit", type=_positive, default=curve.WORK_LIMIT,
                       help="character evaluations per oracle call (default %(default)s)")

    p = sub.add_parser("lfunc", help="L-polynomial, rank and special value as JSON")
    common(p)
    p.add_argument("--out", default="-")
    p.add_argument("--debug", action="store_true", help="check partial products")
    p.set_defaults(func=cmd_lfunc)

    p = sub.add_parser("verify", help="run the identity checks and print a table")
    common(p)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--inject-mutation", action="store_true",
                   help="perturb c_1 by one before the functional-equation check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="angle statistics as JSON (or the angle table as CSV)")
    common(p)
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--csv", help="also write the angle table to this path")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="stats for a grid of (q, a, gamma)")
    p.add_argument("--q", type=_int_list, required=True, help="comma-separated, e.g. 3,5")
    p.add_argument("--a", type=_int_list, required=True, help="comma-separated, e.g. 1,2,3")
    p.add_argument("--gamma", default="all")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--enum-cap", type=_positive, default=field.TABLE_CAP)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"aslfunc: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (SizeCapExceeded, WorkLimitExceeded) as exc:
        print(f"aslfunc: limit exceeded: {exc}", file=sys.stderr)
        return 2
    except (NotRationalInteger, FunctionalEquationViolated, MismatchAt, ArithmeticError) as exc:
        print(f"aslfunc: internal consistency failure: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return 3
    except ASLError as exc:
        print(f"aslfunc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
