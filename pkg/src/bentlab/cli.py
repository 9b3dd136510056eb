"""bentlab command line: every subcommand emits a JSON certificate.

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or domain error.
Set BENTLAB_WORKERS to parallelize per-coefficient sweeps.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import carry, cyclotomy, families, graph
from .certificate import Report, emit_certificate, field_info
from .classify import classify_direct, classify_hou, extract_dual, routes_agree
from .cycint import CycInt
from .field import FIELD_CAP, FieldError, build_field
from .walsh import WalshError, walsh_spectrum, walsh_spectrum_naive

NAIVE_CHECK_CAP = 3**6


class UsageError(Exception):
    pass


def workers() -> int:
    try:
        return max(1, int(os.environ.get("BENTLAB_WORKERS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def parse_modulus(text):
    """'c_n ... c_0' (spaces or commas) -> low-to-high coefficient tuple."""
    if text is None:
        return None
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(c) for c in reversed(parts))
    except ValueError as exc:
        raise UsageError(f"bad modulus {text!r}") from exc


def parse_log(text, ctx):
    """'zero' or an integer t meaning xi^t; returns the element index."""
    if text is None:
        return None
    if str(text).strip().lower() == "zero":
        return 0
    try:
        return ctx.element(int(text))
    except ValueError as exc:
        raise UsageError(f"element must be a discrete log or 'zero', got {text!r}") from exc


def log_label(a, ctx):
    return "zero" if a == 0 else int(ctx.discrete_log(a))


def _field(args):
    return build_field(args.p, args.n, parse_modulus(getattr(args, "modulus", None)))


def _write(path, text):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)
    return str(path)


def _monomial(args, ctx):
    if args.d is None:
        raise UsageError("--d is required")
    a = parse_log(args.monomial_a_log, ctx)
    return a, families.monomial_table(a, args.d, ctx)


# ---------------------------------------------------------------------------
# subcommands

def cmd_field(args, rep: Report):
    ctx = _field(args)
    rep.field_params = field_info(ctx)
    rep.parameters.update(p=args.p, n=args.n)
    q = ctx.q
    order = q - 1
    xi_order_ok = all(ctx.pow(ctx.xi, order // r) != 1 for r in _prime_divisors(order))
    rep.verdict("xi_has_order_q_minus_1", xi_order_ok and ctx.pow(ctx.xi, order) == 1)
    idx = ctx.nonzero()
    rep.verdict("exp_log_roundtrip", bool(np.array_equal(ctx.element(ctx.discrete_log(idx)), idx)))
    counts = np.bincount(ctx.trace_abs(ctx.all_elements()), minlength=ctx.p)
    rep.verdict("trace_balanced", bool(np.all(counts == q // ctx.p)))
    rep.verdict("frobenius_order_n", bool(np.array_equal(ctx.frobenius(idx, ctx.n), idx)))
    rep.results.update(q=q, text=ctx.to_text(), gram_matrix=ctx.gram_matrix())


def _prime_divisors(m):
    from .field import prime_factors
    return sorted(set(prime_factors(m)))


def cmd_spectrum(args, rep: Report):
    ctx = _field(args)
    rep.field_params = field_info(ctx)
    a, table = _monomial(args, ctx)
    rep.parameters.update(p=args.p, n=args.n, d=args.d, a_log=log_label(a, ctx))
    spec = walsh_spectrum(table, ctx)
    rep.verdict("parseval", spec.parseval_ok())
    if args.check_naive:
        if ctx.q > NAIVE_CHECK_CAP:
            raise UsageError(f"--check-naive limited to q <= {NAIVE_CHECK_CAP}")
        rep.verdict("fast_equals_naive", spec == walsh_spectrum_naive(table, ctx))
    norms = spec.norms()
    rep.results.update(S0=spec.render(0), is_bent=bool(np.all(norms == 3**ctx.n)),
                       distinct_values=len({(int(x), int(y)) for x, y in zip(spec.x, spec.y)}))
    rep.results["csv_ref"] = _write(args.csv, spec.to_csv()) if args.csv else None
    if args.figure:
        from .plotting import plot_spectrum
        rep.results["figure_ref"] = str(plot_spectrum(spec, args.figure))


def cmd_classify(args, rep: Report):
    ctx = _field(args)
    rep.field_params = field_info(ctx)
    a, table = _monomial(args, ctx)
    spec = walsh_spectrum(table, ctx)
    d = classify_direct(spec)
    h = classify_hou(spec)
    rep.parameters.update(p=args.p, n=args.n, d=args.d, a_log=log_label(a, ctx))
    rep.verdict("parseval", spec.parseval_ok())
    rep.verdict("routes_agree", routes_agree(spec))
    rep.verdict("no_valuation_anomaly", not h.anomaly)
    dual_ref = None
    if d.is_weakly_regular:
        try:
            dual = extract_dual(spec, d, ctx)
            rep.verdict("dual_weakly_regular", True)
        except Exception:
            dual = None
            rep.verdict("dual_weakly_regular", False)
        if dual is not None and args.dual_csv:
            rows = ["b_index,dual"] + [f"{b},{int(v)}" for b, v in enumerate(dual)]
            dual_ref = _write(args.dual_csv, "\n".join(rows) + "\n")
    rep.results.update(
        p=ctx.p, n=ctx.n, modulus=list(reversed(ctx.modulus)), d=args.d, a_log=log_label(a, ctx),
        is_bent=d.is_bent, is_weakly_regular=d.is_weakly_regular, is_regular=d.is_regular,
        sign=d.sign, parity_branch=d.parity_branch, S0=spec.render(0), dual_csv_ref=dual_ref,
        hou={"is_bent": h.is_bent, "is_weakly_regular": h.is_weakly_regular, "anomaly": h.anomaly,
             "nu3_at_zero": h.report.nu3_at_zero},
    )
    if args.expect_weakly_regular:
        rep.verdict("weakly_regular", d.is_weakly_regular and h.is_weakly_regular)


def _classify_one(ctx, d):
    def run(a):
        spec = walsh_spectrum(families.monomial_table(a, d, ctx), ctx)
        dc, hc = classify_direct(spec), classify_hou(spec)
        return {"a": a, "parseval": spec.parseval_ok(), "direct": dc.is_weakly_regular,
                "hou": hc.is_weakly_regular, "agree": routes_agree(spec), "S0": spec.render(0)}
    return run


def _a_values(args, ctx):
    if args.all_a:
        return [int(a) for a in ctx.nonzero()]
    if args.random_a:
        rng = np.random.default_rng(args.seed)
        return [int(a) for a in rng.integers(1, ctx.q, args.random_a)]
    return [parse_log(args.a_log, ctx)]


def cmd_family(args, rep: Report):
    fam = args.family
    if fam in ("kasami", "helleseth_kholosha"):
        if args.k is None:
            raise UsageError(f"--k is required for {fam}")
        args.n = 2 * args.k
    if args.n is None:
        raise UsageError("--n is required")
    if 3**args.n > FIELD_CAP:
        raise UsageError(f"3^{args.n} exceeds the field cap")
    ctx = _field(args)
    rep.field_params = field_info(ctx)
    rep.parameters.update(family=fam, n=args.n, k=args.k)
    if args.random_a:
        rep.provenance = {"exhaustive": False, "samples": args.random_a, "seed": args.seed}
    if fam == "helleseth_kholosha":
        fs = families.hk_params(args.k, ctx)
        spec = walsh_spectrum(fs.table(ctx), ctx)
        d, h = classify_direct(spec), classify_hou(spec)
        rep.verdict("parseval", spec.parseval_ok())
        rep.verdict("weakly_regular_bent", d.is_weakly_regular and h.is_weakly_regular)
        s0 = CycInt.integer(3, -(3**args.k))
        rep.verdict("S0_equals_minus_3_pow_k", spec[0] == s0, spec.render(0))
        rep.results.update(d=fs.d, a_log=log_label(fs.a, ctx), sign=d.sign, S0=spec.render(0))
        return
    if fam == "kasami":
        avals = _a_values(args, ctx) if (args.all_a or args.random_a or args.a_log is not None) else None
        res = families.verify_kasami(args.k, ctx, avals)
        rep.verdict("closed_form_and_nonbent_cases", res["ok"], {"mismatches": res["mismatches"]})
        rep.results.update(d=3**args.k + 1, matched=res["matched"], nonbent_ok=res["nonbent_ok"])
        return
    if fam == "coulter_matthews":
        if args.k is None:
            raise UsageError("--k is required for coulter_matthews")
        d = families.cm_params(args.n, args.k, 1).d
    else:
        if args.d is None:
            raise UsageError("--d is required for general_monomial")
        d = args.d
    if args.a_log is None and not (args.all_a or args.random_a):
        args.a_log = "0"
    rows = _pmap(_classify_one(ctx, d), _a_values(args, ctx))
    labels = lambda key: [log_label(r["a"], ctx) for r in rows if not r[key]]  # noqa: E731
    rep.verdict("parseval", not labels("parseval"))
    rep.verdict("routes_agree", not labels("agree"), {"disagree_a_log": labels("agree")})
    if fam == "coulter_matthews":
        both = [log_label(r["a"], ctx) for r in rows if not (r["direct"] and r["hou"])]
        rep.verdict("weakly_regular_bent", not both, {"failing_a_log": both})
    rep.results.update(d=d, a_count=len(rows),
                       weakly_regular_count=sum(r["direct"] for r in rows),
                       S0_by_a_log={str(log_label(r["a"], ctx)): r["S0"] for r in rows[:64]})


def cmd_conjecture_dual(args, rep: Report):
    ctx = families.canonical_hk_field(args.k) if args.modulus is None else build_field(
        3, 2 * args.k, parse_modulus(args.modulus))
    rep.field_params = field_info(ctx)
    rep.parameters.update(k=args.k)
    res = families.verify_conjecture_dual(args.k, ctx)
    rep.verdict("every_value_in_conjectured_pair", res["all_match"])
    rep.results.update({k: v for k, v in res.items() if k != "per_b_sign"})
    if args.csv:
        rows = ["b_index,sign"] + [f"{b},{s}" for b, s in enumerate(res["per_b_sign"])]
        rep.results["csv_ref"] = _write(args.csv, "\n".join(rows) + "\n")
    if args.decomposition_samples:
        rng = np.random.default_rng(args.seed)
        bs = rng.integers(1, ctx.q, args.decomposition_samples)
        cyc = cyclotomy.CyclotomyCtx(ctx, 4)
        bad = [int(b) for b in bs if not families.hk_decomposition_check(args.k, int(b), ctx, cyc)]
        rep.verdict("class_decomposition", not bad, {"failing_b": bad})
        rep.provenance = {"exhaustive": True, "decomposition_samples": args.decomposition_samples,
                          "seed": args.seed}


def cmd_cyclotomy(args, rep: Report):
    ctx = _field(args)
    rep.field_params = field_info(ctx)
    rep.parameters.update(p=args.p, n=args.n, e=args.e)
    cyc = cyclotomy.CyclotomyCtx(ctx, args.e)
    periods = cyc.periods_direct()
    rep.results.update(cyclotomic_matrix=cyc.cyclotomic_matrix(),
                       periods=[p.to_json() for p in periods])
    try:
        pred = cyclotomy.uniform_periods_predict(args.e, ctx.p, ctx.n)
    except cyclotomy.CyclotomyError as exc:
        rep.results["prediction"] = f"not applicable: {exc}"
    else:
        rep.results["prediction"] = pred
        rep.verdict("periods_match_prediction",
                    all(per == CycInt.integer(ctx.p, v) for per, v in zip(periods, pred)))
    k = ctx.n // 2
    if args.e == 4 and ctx.p % 8 == 3 and ctx.n % 2 == 0 and k % 2 == 1:
        cyc4 = cyc
        sc = cyclotomy.simplecase_check(k, cyc4)
        rep.verdict("fiber_structure", all(v["ok"] for v in sc.values()))
        subs = cyclotomy.subfield_elements(ctx, k)
        rep.verdict("class_sum_total", all(cyclotomy.class_sum_check(int(c), k, cyc4) for c in subs))
        rep.verdict("conjugate_identity", all(cyclotomy.conjugate_identity_check(int(c), j, k, cyc4)
                                              for c in subs for j in range(4)))
    if ctx.q <= 3**7:
        sums = cyclotomy.gauss_sums_all(ctx)
        mags = np.abs(sums[1:]) ** 2
        rep.verdict("gauss_norms", bool(np.all(np.abs(mags - ctx.q) <= 1e-6 * ctx.q)),
                    float(np.max(np.abs(mags - ctx.q)) / ctx.q) if len(mags) else 0.0)
        rep.verdict("gauss_trivial_character", abs(sums[0] + 1) <= 1e-9)


def cmd_weights(args, rep: Report):
    k = args.k
    if args.mode == "wtinequ":
        if k > carry.WTINEQ_CAP_K:
            raise UsageError(f"k={k} exceeds the exhaustive cap {carry.WTINEQ_CAP_K}")
        scan = carry.wtinequ_scan(k)
        if k % 2:
            rep.verdict("min_lhs_at_least_bound", scan.passed)
            rep.verdict("bound_attained", scan.min_lhs == scan.bound)
        else:
            rep.results["note"] = "the 2k bound is claimed for odd k only; minimum reported without a verdict"
        if args.figure:
            from .plotting import plot_weight_scan
            lhs1, _ = carry.wtinequ_values(k)
            rep.results["figure_ref"] = str(plot_weight_scan(lhs1, scan.bound, args.figure))
    elif args.mode == "genwi":
        if k <= carry.GENWI_EXHAUSTIVE_CAP_K:
            scan = carry.genwi_exhaustive(k)
        elif args.exhaustive:
            raise UsageError(f"k={k} exceeds the exhaustive cap {carry.GENWI_EXHAUSTIVE_CAP_K}")
        else:
            scan = carry.genwi_sampled(k, args.samples, args.seed)
        rep.verdict("min_lhs_at_least_bound", scan.passed)
        if scan.exhaustive:
            rep.verdict("bound_attained", scan.min_lhs == scan.bound)
    else:
        if not args.u_digits or not args.v_digits:
            raise UsageError("--u-digits and --v-digits are required for gengenwi")
        u, v = tuple(args.u_digits), tuple(args.v_digits)
        if len(u) > 8:
            raise UsageError("pattern length is capped at 8")
        scan = carry.gengenwi_exhaustive(u, v)
        rep.verdict("min_lhs_at_least_bound", scan.passed)
    rep.parameters.update(k=k, mode=args.mode)
    rep.provenance = {"exhaustive": scan.exhaustive}
    if not scan.exhaustive:
        rep.provenance.update(samples=scan.samples, seed=scan.seed)
    rep.results.update(scan.to_json())


def cmd_awc(args, rep: Report):
    rep.parameters.update(p=args.p, n=args.n)
    if args.random:
        rng = np.random.default_rng(args.seed)
        instances = [_random_awc(rng, args.p, args.n) for _ in range(args.random)]
        rep.provenance = {"exhaustive": False, "samples": args.random, "seed": args.seed}
    else:
        if not args.t or not args.a or len(args.t) != len(args.a):
            raise UsageError("--t and --a need the same nonzero length")
        instances = [carry.AwcInstance.from_ints(args.p, args.n, args.t, args.a)]
    failures = []
    for inst in instances:
        try:
            res = carry.awc_solve(inst)
            if carry.awc_poly_solve(inst) != res.c:
                failures.append({"t": inst.t, "addends": inst.addends, "error": "routes differ"})
        except carry.CarryError as exc:
            failures.append({"t": inst.t, "addends": inst.addends, "error": str(exc)})
    rep.verdict("carries_valid_and_routes_agree", not failures, {"failures": failures[:10]})
    if len(instances) == 1 and not failures:
        rep.results.update(s_digits=res.s, carries=res.c, t=inst.t)
    rep.results["instances"] = len(instances)


def _random_awc(rng, p, n):
    m = int(rng.integers(1, 5))
    t = [int(v) for v in rng.choice([-3, -2, -1, 1, 2, 3], m)]
    addends = [tuple(int(d) for d in rng.integers(0, p, n)) for _ in range(m)]
    return carry.AwcInstance(p, n, tuple(t), tuple(addends))


def cmd_graph(args, rep: Report):
    rep.parameters.update(action=args.action)
    if args.action == "prove":
        res = graph.prove()
        rep.verdict("vertex_count_162", res["vertices"] == 162)
        rep.verdict("arcs_nonpositive", res["max_arc_weight"] <= 0)
        rep.verdict("max_arc_weight_zero", res["max_arc_weight"] == 0)
        rep.results.update(res)
        if args.dot:
            rep.results["dot_ref"] = _write(args.dot, graph.build_graph().to_dot())
        return
    if args.k is None:
        raise UsageError("--k is required for walk")
    m = 3 ** (2 * args.k) - 1
    if args.walks:
        rng = np.random.default_rng(args.seed)
        pairs = [(int(a), int(b)) for a, b in rng.integers(0, m, (args.walks, 2))]
        rep.provenance = {"exhaustive": False, "samples": args.walks, "seed": args.seed}
    else:
        if args.a is None or args.b is None:
            raise UsageError("--a and --b (or --walks) are required for walk")
        pairs = [(args.a % m, args.b % m)]
    g = graph.build_graph()
    bad = []
    for a, b in pairs:
        try:
            walk = graph.instance_to_walk(a, b, args.k, g)
            graph.walk_to_computation(walk, g)
        except graph.GraphError as exc:
            bad.append({"a": a, "b": b, "error": str(exc)})
    rep.verdict("walks_valid", not bad, {"failures": bad[:10]})
    if len(pairs) == 1 and not bad:
        rep.results.update(weights=walk.weights, total=walk.total,
                           lhs=carry.genwi_check(pairs[0][0], pairs[0][1], args.k))


COMMANDS = {
    "field": cmd_field, "spectrum": cmd_spectrum, "classify": cmd_classify, "family": cmd_family,
    "conjecture-dual": cmd_conjecture_dual, "cyclotomy": cmd_cyclotomy, "weights": cmd_weights,
    "awc": cmd_awc, "graph": cmd_graph,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the certificate here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    fieldp = argparse.ArgumentParser(add_help=False)
    fieldp.add_argument("--p", type=int, default=3)
    fieldp.add_argument("--n", type=int)
    fieldp.add_argument("--modulus", help="primitive modulus coefficients, 'c_n ... c_0'")

    mono = argparse.ArgumentParser(add_help=False)
    mono.add_argument("--d", type=int)
    mono.add_argument("--monomial-a-log", default="0", help="a = xi^t, or 'zero'")

    ap = argparse.ArgumentParser(prog="bentlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common, fieldp], help="build and check F_{p^n}")

    sp = sub.add_parser("spectrum", parents=[common, fieldp, mono], help="Walsh spectrum of Tr(a x^d)")
    sp.add_argument("--csv")
    sp.add_argument("--figure")
    sp.add_argument("--check-naive", action="store_true")

    cp = sub.add_parser("classify", parents=[common, fieldp, mono], help="bent / weakly regular verdicts")
    cp.add_argument("--dual-csv")
    cp.add_argument("--expect-weakly-regular", action="store_true",
                    help="turn weak regularity into a verdict")

    fp = sub.add_parser("family", parents=[common, fieldp], help="verify a monomial family")
    fp.add_argument("--family", choices=families.FAMILIES, required=True)
    fp.add_argument("--k", type=int)
    fp.add_argument("--d", type=int)
    fp.add_argument("--a-log")
    grp = fp.add_mutually_exclusive_group()
    grp.add_argument("--all-a", action="store_true")
    grp.add_argument("--random-a", type=int, default=0)

    dp = sub.add_parser("conjecture-dual", parents=[common], help="test the conjectured HK dual")
    dp.add_argument("--k", type=int, required=True)
    dp.add_argument("--modulus")
    dp.add_argument("--csv")
    dp.add_argument("--decomposition-samples", type=int, default=0)

    yp = sub.add_parser("cyclotomy", parents=[common, fieldp], help="classes, periods, Gauss sums")
    yp.add_argument("--e", type=int, default=4)

    wp = sub.add_parser("weights", parents=[common], help="ternary weight inequalities")
    wp.add_argument("--k", type=int, required=True)
    wp.add_argument("--mode", choices=("wtinequ", "genwi", "gengenwi"), default="wtinequ")
    wp.add_argument("--exhaustive", action="store_true")
    wp.add_argument("--samples", type=int, default=10**6)
    wp.add_argument("--u-digits", type=int, nargs="*")
    wp.add_argument("--v-digits", type=int, nargs="*")
    wp.add_argument("--figure")

    awp = sub.add_parser("awc", parents=[common], help="modular add-with-carry")
    awp.add_argument("--p", type=int, default=3)
    awp.add_argument("--n", type=int, required=True)
    awp.add_argument("--t", type=int, nargs="*")
    awp.add_argument("--a", type=int, nargs="*")
    awp.add_argument("--random", type=int, default=0)

    gp = sub.add_parser("graph", parents=[common], help="carry graph certificate")
    gp.add_argument("action", choices=("prove", "walk"))
    gp.add_argument("--dot")
    gp.add_argument("--k", type=int)
    gp.add_argument("--a", type=int)
    gp.add_argument("--b", type=int)
    gp.add_argument("--walks", type=int, default=0)
    return ap


def run(argv=None) -> tuple[int, Report | None]:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    rep = Report(command=args.command)
    try:
        if getattr(args, "n", 0) is None and args.command in ("field", "spectrum", "classify", "cyclotomy"):
            raise UsageError("--n is required")
        COMMANDS[args.command](args, rep)
    except (UsageError, FieldError, WalshError, families.FamilyError, carry.CapError,
            cyclotomy.CyclotomyError, ValueError) as exc:
        print(f"bentlab: error: {exc}", file=sys.stderr)
        return 2, None
    rep.parameters.setdefault("seed", args.seed)
    text = emit_certificate(rep.finish())
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if not rep.passed:
        print(f"bentlab: verification failed: {', '.join(rep.failed())}", file=sys.stderr)
        return 1, rep
    return 0, rep


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
