"""Command-line interface.

Subcommands: enumerate, eval, verify, hilbert, bounds, plan.  Exit codes:
0 = success (and, for verify, every checked identity held), 1 = an identity
check came back false (the math disagrees; investigate), 2 = usage, parse or
size-guard errors.  Every JSON output embeds schema_version, the command name
and the seed it ran with; replaying the seed reproduces the output exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import LocalInvError, ReconstructionInconclusive, SizeGuardError
from .evaluation import evaluate
from .hilbert import (
    bound_report_to_json,
    check_pole_orders,
    default_truncation,
    degree_bounds,
    hs_local,
    reconstruct_rational,
    verify_bound_empirically,
)
from .monomials import (
    enumerate_generators,
    from_json_dict,
    girth,
    is_connected,
    render_text,
    to_json_dict,
)
from .planner import evaluate_with_plan, plan_contraction
from .spanchecks import commutant_dimension_mu, span_dimension_rho, verify_generation
from .tensors import endotuple_from_json, format_scalar

SCHEMA_VERSION = 1


@dataclass
class JobSpec:
    command: str
    dims: tuple[int, ...] | None = None
    m: int | None = None
    alpha: tuple[int, ...] | None = None
    order: int | None = None
    seed: int = 0
    connected: bool = False
    apply_girth: bool = False
    small_dim: bool = False
    use_plan: bool = False
    as_json: bool = True


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        print(f"error: {what} must be comma-separated integers: {text!r}", file=sys.stderr)
        raise SystemExit(2) from None


def _envelope(spec: JobSpec, payload: dict) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": spec.command,
        "seed": spec.seed,
    }
    out.update(payload)
    return out


def _emit(spec: JobSpec, payload: dict, text_lines) -> None:
    if spec.as_json:
        print(json.dumps(_envelope(spec, payload), indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_enumerate(spec: JobSpec) -> int:
    dims = spec.dims
    alpha = spec.alpha
    if sum(alpha) == 0:
        payload = {
            "alpha": list(alpha),
            "dims": list(dims),
            "count": 0,
            "monomials": [],
            "note": "multidegree zero: only the empty (unit) monomial",
        }
        _emit(spec, payload, [payload["note"]])
        return 0
    full = enumerate_generators(alpha, dims)
    kept = enumerate_generators(
        alpha,
        dims,
        connected_only=spec.connected,
        apply_girth=spec.apply_girth,
        small_dim=spec.small_dim,
    )
    payload = {
        "alpha": list(alpha),
        "dims": list(dims),
        "count_unfiltered": len(full),
        "count": len(kept),
        "filters": {
            "connected": spec.connected,
            "girth": spec.apply_girth,
            "small_dim": spec.small_dim,
        },
        "monomials": [
            dict(to_json_dict(t), girth=list(girth(t)), connected=is_connected(t))
            for t in kept
        ],
    }
    lines = [f"{len(kept)} monomials (of {len(full)} unfiltered)"]
    lines += [render_text(t) for t in kept]
    _emit(spec, payload, lines)
    return 0


def cmd_eval(spec: JobSpec, monomial_path: str, endos_path: str) -> int:
    with open(monomial_path) as fh:
        monomial = from_json_dict(json.load(fh))
    with open(endos_path) as fh:
        endos = endotuple_from_json(json.load(fh))
    if spec.use_plan:
        plan = plan_contraction(monomial, endos[0].dims)
        value = evaluate_with_plan(monomial, endos, plan)
    else:
        value = evaluate(monomial, endos)
    payload = {
        "monomial": to_json_dict(monomial),
        "dims": list(endos[0].dims),
        "planned": spec.use_plan,
        "value": format_scalar(value),
    }
    _emit(spec, payload, [format_scalar(value)])
    return 0


def cmd_verify(spec: JobSpec, centralizer: bool) -> int:
    dims, m = spec.dims, spec.m
    if centralizer:
        rho = span_dimension_rho(dims, m)
        mu = commutant_dimension_mu(dims, m)
        parts = [span_dimension_rho((d,), m) for d in dims]
        prod = 1
        for p in parts:
            prod *= p
        match = rho == mu and rho == prod
        payload = {
            "check": "centralizer",
            "d": list(dims),
            "m": m,
            "span_rho": rho,
            "commutant_mu": mu,
            "per_factor_span": parts,
            "product_formula_ok": rho == prod,
            "match": match,
        }
        _emit(
            spec,
            payload,
            [
                f"span_rho={rho} commutant_mu={mu} product={prod} "
                f"match={'yes' if match else 'NO'}"
            ],
        )
        return 0 if match else 1
    report = verify_generation(spec.alpha, dims, m, seed=spec.seed)
    payload = dict(report)
    payload["check"] = "generation"
    _emit(
        spec,
        payload,
        [
            f"alpha={report['alpha']} oracle_dim={report['oracle_dim']} "
            f"span_dim={report['span_dim']} match={'yes' if report['match'] else 'NO'}"
        ],
    )
    return 0 if report["match"] else 1


def cmd_hilbert(spec: JobSpec) -> int:
    dims, m = spec.dims, spec.m
    order = spec.order if spec.order is not None else default_truncation(dims)
    series = hs_local(m, dims, order)
    payload = {
        "dims": list(dims),
        "m": m,
        "series": {"N": order, "coeffs": [format_scalar(c) for c in series.coeffs]},
        "bounds": bound_report_to_json(degree_bounds(m, dims)),
    }
    lines = [f"series to order {order}: {[str(c) for c in series.coeffs[:10]]}..."]
    try:
        rational = reconstruct_rational(series)
        payload["rational"] = {
            "status": "ok",
            "num": [format_scalar(c) for c in rational.num],
            "den": [format_scalar(c) for c in rational.den],
        }
        bound = 1
        for d in dims:
            bound *= d
        pole = check_pole_orders(rational, bound * bound)
        payload["pole_check"] = pole
        lines.append(
            f"rational: num deg {len(rational.num) - 1}, den deg "
            f"{len(rational.den) - 1}; pole check ok={pole['ok']}"
        )
    except ReconstructionInconclusive as exc:
        payload["rational"] = {"status": "inconclusive", "detail": str(exc)}
        lines.append(f"reconstruction inconclusive: {exc}")
    _emit(spec, payload, lines)
    return 0


def cmd_bounds(spec: JobSpec, empirical_max: int | None) -> int:
    payload = {"bounds": bound_report_to_json(degree_bounds(spec.m, spec.dims))}
    lines = [str(payload["bounds"])]
    if empirical_max is not None:
        report = verify_bound_empirically(spec.dims, empirical_max, seed=spec.seed)
        payload["empirical"] = report
        lines.append(
            "largest degree needing new generators <= "
            f"{report['largest_new_generator_degree']}"
        )
    _emit(spec, payload, lines)
    return 0


def cmd_plan(spec: JobSpec, monomial_path: str) -> int:
    with open(monomial_path) as fh:
        monomial = from_json_dict(json.load(fh))
    plan = plan_contraction(monomial, spec.dims)
    payload = {
        "monomial": to_json_dict(monomial),
        "dims": list(spec.dims),
        "total_cost": plan.total_cost,
        "peak_size": plan.peak_size,
        "naive_cost": plan.naive_cost,
        "steps": [
            {
                "kind": s.kind,
                "left": list(s.left),
                "right": list(s.right),
                "closed": [list(e) for e in s.closed],
                "cost": s.cost,
                "result_size": s.result_size,
            }
            for s in plan.steps
        ],
    }
    lines = [
        f"{len(plan.steps)} steps, total cost {plan.total_cost} "
        f"(naive {plan.naive_cost}), peak intermediate {plan.peak_size}"
    ]
    _emit(spec, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localinv",
        description="Trace-monomial invariants under local conjugation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dims=True, m=False, alpha=False):
        if dims:
            p.add_argument("--dims", required=True, help="comma-separated d_1,...,d_n")
        if m:
            p.add_argument("--m", type=int, default=1, help="number of inputs")
        if alpha:
            p.add_argument("--alpha", required=True, help="comma-separated multidegree")
        p.add_argument("--seed", type=int, default=0)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="as_json", action="store_true", default=True)
        fmt.add_argument("--text", dest="as_json", action="store_false")

    p = sub.add_parser("enumerate", help="list canonical monomials of a multidegree")
    common(p, alpha=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--girth", action="store_true", help="apply the girth filter")
    p.add_argument("--small-dim", action="store_true")

    p = sub.add_parser("eval", help="evaluate a monomial file on an endotuple file")
    p.add_argument("monomial", help="TraceMonomial JSON file")
    p.add_argument("endos", help="endomorphism tuple JSON file")
    p.add_argument("--plan", action="store_true", help="use the contraction planner")
    p.add_argument("--seed", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true", default=True)
    fmt.add_argument("--text", dest="as_json", action="store_false")

    p = sub.add_parser("verify", help="run the centralizer/generation witnesses")
    common(p, m=True)
    p.add_argument("--alpha", help="multidegree for the generation check")
    p.add_argument(
        "--centralizer",
        action="store_true",
        help="check span_rho == commutant_mu and the product formula",
    )

    p = sub.add_parser("hilbert", help="series, reconstruction, pole check, bounds")
    common(p, m=True)
    p.add_argument("--N", type=int, default=None, help="truncation order")

    p = sub.add_parser("bounds", help="degree-bound report")
    common(p, m=True)
    p.add_argument(
        "--empirical",
        type=int,
        default=None,
        metavar="K",
        help="also measure observed generation degrees up to K (m=1)",
    )

    p = sub.add_parser("plan", help="contraction plan for a monomial file")
    common(p)
    p.add_argument("monomial", help="TraceMonomial JSON file")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = JobSpec(
        command=args.command,
        dims=_ints(args.dims, "--dims") if getattr(args, "dims", None) else None,
        m=getattr(args, "m", None),
        alpha=_ints(args.alpha, "--alpha") if getattr(args, "alpha", None) else None,
        order=getattr(args, "N", None),
        seed=args.seed,
        connected=getattr(args, "connected", False),
        apply_girth=getattr(args, "girth", False),
        small_dim=getattr(args, "small_dim", False),
        use_plan=getattr(args, "plan", False),
        as_json=args.as_json,
    )
    if spec.dims is not None and any(d < 1 for d in spec.dims):
        print("error: dimensions must be positive", file=sys.stderr)
        return 2
    try:
        if args.command == "enumerate":
            return cmd_enumerate(spec)
        if args.command == "eval":
            return cmd_eval(spec, args.monomial, args.endos)
        if args.command == "verify":
            if not args.centralizer and spec.alpha is None:
                print("error: verify needs --alpha or --centralizer", file=sys.stderr)
                return 2
            return cmd_verify(spec, args.centralizer)
        if args.command == "hilbert":
            return cmd_hilbert(spec)
        if args.command == "bounds":
            return cmd_bounds(spec, args.empirical)
        if args.command == "plan":
            return cmd_plan(spec, args.monomial)
        raise AssertionError(f"unhandled command {args.command}")
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LocalInvError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
