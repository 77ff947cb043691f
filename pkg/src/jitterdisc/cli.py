"""Command-line interface.

Exit codes: 0 success, 1 usage or validation error, 2 property-test
failure (a computation that ran fine but whose check did not pass, as
in zerotest, collapse, or khdemo).  Argparse usage errors are remapped
from its default exit 2 to keep that code reserved for failed checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import binom, bounds, rng
from .discrepancy import (
    CoverSpec,
    normalized,
    star_disc_certified_upper,
    star_disc_exact,
    star_disc_heuristic,
)
from .errors import ApplicabilityError, JitterdiscError, ValidationError
from .harness import (
    collapse_analysis,
    kh_demo,
    parse_config,
    run_sweep,
    with_output,
)
from .io import format_float, read_point_set, write_point_set
from .sampler import FullGridSpec, HalfCubeSpec
from .witness import (
    mean_disc_is_zero_test,
    witness_construct,
    witness_discrete,
    witness_smallm,
)
from .harness import _generate as _generate_points
from .discrepancy import AxisRect

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, human_lines) -> None:
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _default_threads() -> int:
    env = os.environ.get("JITTERDISC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=_default_threads())
    common.add_argument("--deterministic", action="store_true")
    common.add_argument("--json", action="store_true")

    parser = _Parser(prog="jitterdisc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="generate a point set file")
    p.add_argument("--sampler", choices=("jittered", "halfcube", "uniform", "lhs"),
                   default="jittered")
    p.add_argument("--m", type=int, help="grid resolution (jittered)")
    p.add_argument("--half-cube", type=int, dest="d_prime",
                   help="split dimensions (halfcube)")
    p.add_argument("--n", type=int, help="point count (uniform, lhs)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("disc", parents=[common], help="star discrepancy of a point set")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=("exact", "heuristic", "certified"),
                   required=True)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--grid", type=int, help="cover resolution M (certified)")
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("witness", parents=[common], help="witness lower-bound box")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--scheme", choices=("construct", "discrete", "smallm"),
                   required=True)
    p.add_argument("--r", help="anchor multiples of 1/m, comma-separated (construct)")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("zerotest", parents=[common],
                       help="mean-zero discrepancy check on random boxes")
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--half-cube", type=int, dest="d_prime")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--boxes", type=int, required=True)
    p.set_defaults(func=_cmd_zerotest)

    p = sub.add_parser("maxbin", parents=[common],
                       help="binomial-maximum bounds and oracles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=float)
    p.add_argument("--expect", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=_cmd_maxbin)

    p = sub.add_parser("bounds", parents=[common], help="closed-form bound formulas")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--multiplier", type=float, default=1.0)
    p.add_argument("--proof-constant", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", parents=[common], help="run a sweep config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="override the config's output path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("collapse", parents=[common],
                       help="scaling-collapse spread of a sweep CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--threshold", type=float, default=1.5)
    p.set_defaults(func=_cmd_collapse)

    p = sub.add_parser("khdemo", parents=[common],
                       help="quadrature error vs discrepancy bound")
    p.add_argument("--in", dest="infile")
    p.add_argument("--sampler", choices=("jittered", "halfcube", "uniform", "lhs"),
                   default="jittered")
    p.add_argument("--m", type=int)
    p.add_argument("--half-cube", type=int, dest="d_prime")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.set_defaults(func=_cmd_khdemo)
    return parser


def _sampler_size(parser_name: str, args) -> int:
    if args.sampler == "jittered":
        if args.m is None:
            raise ValidationError(f"{parser_name}: sampler jittered needs --m")
        return args.m
    if args.sampler == "halfcube":
        if args.d_prime is None:
            raise ValidationError(f"{parser_name}: sampler halfcube needs --half-cube")
        return args.d_prime
    if args.n is None:
        raise ValidationError(f"{parser_name}: sampler {args.sampler} needs --n")
    return args.n


def _cmd_gen(args) -> int:
    size = _sampler_size("gen", args)
    ps = _generate_points(args.sampler, size, args.d, args.seed)
    write_point_set(args.out, ps)
    _emit(args, {
        "out": args.out, "sampler": args.sampler, "n": ps.n, "d": ps.d,
        "seed": args.seed,
    }, [f"wrote {args.out}: {args.sampler}, N={ps.n}, d={ps.d}, seed={args.seed}"])
    return 0


def _cmd_disc(args) -> int:
    ps = read_point_set(args.infile)
    if args.method == "exact":
        est = star_disc_exact(ps)
    elif args.method == "heuristic":
        est = star_disc_heuristic(ps, restarts=args.restarts, seed=args.seed)
    else:
        if args.grid is None:
            raise ValidationError("disc: certified method needs --grid M")
        est = star_disc_certified_upper(ps, CoverSpec.for_resolution(args.grid, ps.d))
    witness = None
    if est.witness is not None:
        witness = {"corner": list(est.witness.corner), "side": est.witness.side.value}
    _emit(args, {
        "value": est.value, "kind": est.kind.value,
        "normalized": normalized(est, ps.n), "witness": witness, "delta": est.delta,
    }, [
        f"value = {format_float(est.value)} ({est.kind.value})",
        f"normalized = {format_float(normalized(est, ps.n))}",
        f"witness corner = {witness['corner'] if witness else None}"
        + (f" ({witness['side']})" if witness else ""),
    ] + ([f"delta = {format_float(est.delta)}"] if est.delta is not None else []))
    return 0


def _cmd_witness(args) -> int:
    ps = read_point_set(args.infile)
    if args.scheme == "construct":
        if args.r is None:
            raise ValidationError("witness: scheme construct needs --r")
        r = [float(tok) for tok in args.r.split(",")]
        res = witness_construct(ps, r)
    elif args.scheme == "discrete":
        res = witness_discrete(ps)
    else:
        res = witness_smallm(ps)
    _emit(args, {
        "scheme": res.scheme,
        "box": list(res.box.hi),
        "per_dim_disc": list(res.per_dim_disc),
        "total": res.total,
        "slabs": [{"lo": list(s.lo), "hi": list(s.hi)} for s in res.slabs],
        "closed": list(res.closed),
    }, [
        f"scheme = {res.scheme}",
        f"box corner = {[format_float(v) for v in res.box.hi]}",
        f"per-dim disc = {[format_float(v) for v in res.per_dim_disc]}",
        f"total = {format_float(res.total)}",
    ])
    return 0


def _cmd_zerotest(args) -> int:
    if args.d_prime is not None:
        spec = HalfCubeSpec(args.d_prime, args.d)
    else:
        if args.m is None:
            raise ValidationError("zerotest: need --m (or --half-cube)")
        spec = FullGridSpec(args.m, args.d)
    corners = rng.stream_uniforms(rng.child_seeds(rng.mix(args.seed, 1), args.boxes),
                                  args.d)
    rects = [AxisRect.anchored(np.maximum(row, 1e-9)) for row in corners]
    report = mean_disc_is_zero_test(spec, rects, args.reps, rng.mix(args.seed, 0))
    _emit(args, {
        "replications": report.replications,
        "passed": report.passed,
        "results": [
            {"corner": list(r.rect.hi), "mean": r.mean, "std": r.std,
             "bound": r.bound, "passed": r.passed}
            for r in report.results
        ],
    }, [
        f"boxes = {len(report.results)}, replications = {report.replications}",
        f"failures = {sum(0 if r.passed else 1 for r in report.results)}",
        f"passed = {report.passed}",
    ])
    return 0 if report.passed else 2


def _cmd_maxbin(args) -> int:
    if args.c is None and not args.expect:
        raise ValidationError("maxbin: need --c and/or --expect")
    payload: dict = {"n": args.n, "k": args.k}
    lines = [f"n = {args.n}, k = {args.k}"]
    if args.c is not None:
        params = binom.MaxBinParams(args.n, args.k, args.c)
        a = binom.alpha(params)
        pb = binom.prob_bound(params)
        payload.update({"c": args.c, "alpha": a, "prob_bound": pb})
        lines += [f"alpha({args.c:g}) = {format_float(a)}",
                  f"prob_bound = {format_float(pb)}"]
        if args.oracle:
            exact = binom.exact_max_exceed_prob(args.n, args.k, a)
            payload["prob_exact"] = exact
            payload["prob_margin"] = exact - pb
            lines += [f"prob_exact = {format_float(exact)}",
                      f"prob_margin = {format_float(exact - pb)}"]
    if args.expect:
        eb = binom.expect_bound(args.n, args.k)
        payload["expect_bound"] = eb
        lines.append(f"expect_bound = {format_float(eb)}")
        if args.oracle:
            exact = binom.exact_max_binomial_expect(args.n, args.k)
            payload["expect_exact"] = exact
            payload["expect_margin"] = exact - eb
            lines += [f"expect_exact = {format_float(exact)}",
                      f"expect_margin = {format_float(exact - eb)}"]
    _emit(args, payload, lines)
    return 0


def _bound_payload(bv: bounds.BoundValue) -> dict:
    return {"value": bv.value, "applicable": bv.applicable, "reason": bv.reason}


def _cmd_bounds(args) -> int:
    try:
        lower = _bound_payload(bounds.lower_main_bound(args.m, args.d))
    except ApplicabilityError as exc:
        lower = {"value": None, "applicable": False, "reason": str(exc)}
    try:
        smallm = _bound_payload(bounds.smallm_lower_bound(args.m, args.d))
    except JitterdiscError as exc:
        smallm = {"value": None, "applicable": False, "reason": str(exc)}
    upper = _bound_payload(
        bounds.upper_thm_bound(args.m, args.d, use_proof_constant=args.proof_constant)
    )
    mc = _bound_payload(
        bounds.mc_reference(args.m ** args.d, args.d, multiplier=args.multiplier)
    )
    payload = {"m": args.m, "d": args.d, "bounds": {
        "lower_main": lower, "smallm_lower": smallm, "upper_thm": upper,
        "mc_reference": mc,
    }}
    lines = []
    for name, item in payload["bounds"].items():
        val = "n/a" if item["value"] is None else format_float(item["value"])
        note = "" if item["applicable"] else f"  [not applicable: {item['reason']}]"
        lines.append(f"{name} = {val}{note}")
    _emit(args, payload, lines)
    return 0


def _cmd_sweep(args) -> int:
    config = with_output(parse_config(args.config), args.out)
    run = run_sweep(config, threads=args.threads, deterministic=args.deterministic)
    rows = [
        {"m": r.m, "d": r.d, "N": r.n, "sampler": r.sampler, "method": r.method,
         "R": r.replications, "mean_disc": r.mean_disc, "std_disc": r.std_disc,
         "ci95_lo": r.ci95_lo, "ci95_hi": r.ci95_hi,
         "mean_normalized": r.mean_normalized, "witness_mean": r.witness_mean,
         "bound_lower": r.bound_lower, "bound_upper": r.bound_upper, "seed": r.seed}
        for r in run.records
    ]
    lines = []
    for r in run.records:
        lines.append(
            f"{r.sampler} {r.m}x{r.d} N={r.n} {r.method} R={r.replications}: "
            f"mean D* = {format_float(r.mean_disc)}, "
            f"normalized = {format_float(r.mean_normalized)}"
        )
    if run.csv_path:
        lines.append(f"wrote {run.csv_path}")
    _emit(args, {"records": rows, "csv": run.csv_path}, lines)
    return 0


def _cmd_collapse(args) -> int:
    report = collapse_analysis(args.infile, threshold=args.threshold)
    _emit(args, {
        "ratios": list(report.ratios), "min_ratio": report.min_ratio,
        "max_ratio": report.max_ratio, "spread": report.spread,
        "threshold": report.threshold, "passed": report.passed,
    }, [
        f"ratios = {[format_float(v) for v in report.ratios]}",
        f"spread = {format_float(report.spread)} "
        f"(threshold {format_float(report.threshold)})",
        f"passed = {report.passed}",
    ])
    return 0 if report.passed else 2


def _cmd_khdemo(args) -> int:
    if args.infile:
        ps = read_point_set(args.infile)
    else:
        if args.d is None:
            raise ValidationError("khdemo: need --in FILE or --d with sampler sizes")
        size = _sampler_size("khdemo", args)
        ps = _generate_points(args.sampler, size, args.d, args.seed)
    report = kh_demo(ps)
    _emit(args, {
        "n": report.n, "d": report.d, "empirical_mean": report.empirical_mean,
        "integral": report.integral, "error": report.error,
        "disc_value": report.disc_value, "disc_kind": report.disc_kind.value,
        "variation": report.variation, "bound": report.bound, "holds": report.holds,
    }, [
        f"N = {report.n}, d = {report.d}",
        f"quadrature error = {format_float(report.error)}",
        f"disc bound ({report.disc_kind.value}) = {format_float(report.bound)}",
        f"holds = {report.holds}",
    ])
    return 0 if report.holds else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (JitterdiscError, OSError) as exc:
        print(f"jitterdisc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
