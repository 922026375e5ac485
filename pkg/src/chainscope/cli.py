"""Command-line surface.

Subcommands: analyze, chains, classify-chaos, furstenberg, shadow, corpus.
Exit codes: 0 success, 2 validation error, 3 budget exceeded, 4 internal
invariant failure.  The CHAINSCOPE_BUDGET environment variable overrides the
default enumeration budget.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

from .basins import assign_basins
from .chains import build_chain_digraph, critical_deltas
from .chaos import ClassifyParams, classify_finite_component, classify_sft
from .cyclic import cyclic_classes
from .errors import BudgetExceeded, ChainscopeError, InternalError, ValidationError
from .families import (EventuallyPeriodicSet, WindowParams, inclusion_audit,
                       rle_to_window, rotation_time_set)
from .report import (AnalysisConfig, basin_section, chain_section, chaos_section,
                     cmd_analyze, condensation_dot, cyclic_section, polyline_svg,
                     report_to_json, resolve_model, write_csv, write_text)
from .sft import SftGraph
from .shadowing import (default_schedule, find_shadowing_point, sft_shadow,
                        validate_limit_pseudo_orbit, validate_pseudo_orbit)
from .specio import load_pseudo_orbit
from .systems import FiniteSystem


def _default_budget() -> int:
    env = os.environ.get("CHAINSCOPE_BUDGET")
    return int(env) if env else 10**6


def _print_json(obj, out: str | None) -> None:
    text = report_to_json(obj)
    if out:
        write_text(out, text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _add_common(parser) -> None:
    parser.add_argument("--budget", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None)


def _cmd_analyze(args) -> int:
    config = AnalysisConfig(
        spec=args.spec,
        ladder_policy=args.ladder_policy,
        ladder=tuple(args.ladder.split(",")) if args.ladder else (),
        top_k=args.top_k,
        delta=args.delta,
        n_max=args.n_max,
        horizon=args.horizon,
        eps_depth=args.eps_depth,
        m_max=args.m_max,
        budget=_default_budget() if args.budget is None else args.budget,
        seed=args.seed,
        with_witness=not args.no_witness,
    )
    report = cmd_analyze(config)
    _print_json(report, args.out)
    if args.emit_dot:
        model = resolve_model(args.spec)
        if isinstance(model, FiniteSystem):
            delta = Fraction(args.delta) if args.delta else critical_deltas(model)[0]
            write_text(args.emit_dot, condensation_dot(build_chain_digraph(model, delta)))
            print(f"wrote {args.emit_dot}")
    return 0


def _cmd_chains(args) -> int:
    model = resolve_model(args.spec)
    if not isinstance(model, FiniteSystem):
        raise ValidationError("chain analysis applies to finite systems")
    delta = Fraction(args.delta) if args.delta is not None else critical_deltas(model)[0]
    dg = build_chain_digraph(model, delta)
    ba = assign_basins(model, dg)
    out = {"chain": chain_section(dg), "cyclic": cyclic_section(dg),
           "basins": basin_section(ba)}
    _print_json(out, args.out)
    if args.emit_dot:
        write_text(args.emit_dot, condensation_dot(dg))
        print(f"wrote {args.emit_dot}")
    if args.emit_csv:
        rows = [[x, ba.component_of[x], ba.class_of_basin[x][1]]
                for x in sorted(ba.component_of)]
        write_csv(args.emit_csv, ["node", "component", "class"], rows)
        print(f"wrote {args.emit_csv}")
    return 0


def _cmd_classify(args) -> int:
    model = resolve_model(args.spec)
    params = ClassifyParams(n_max=args.n_max, horizon=args.horizon,
                            eps_depth=args.eps_depth,
                            with_witness=not args.no_witness,
                            budget=_default_budget() if args.budget is None
                            else args.budget)
    sections = []
    if isinstance(model, SftGraph):
        section, _ = chaos_section(classify_sft(model, args.n_max, params))
        sections.append(section)
        if args.emit_csv or args.emit_svg:
            _emit_witness_traces(model, args)
    else:
        delta = Fraction(args.delta) if args.delta is not None else critical_deltas(model)[0]
        dg = build_chain_digraph(model, delta)
        from .chains import chain_components

        for comp in chain_components(dg):
            dec = cyclic_classes(dg, comp, p2="record")
            section, _ = chaos_section(classify_finite_component(dec, args.n_max, params))
            sections.append(section)
    _print_json({"chaos": sections}, args.out)
    return 0


def _emit_witness_traces(model, args) -> None:
    """Per-time min/max pairwise distances of a constructed witness tuple,
    the raw data behind its separation and proximity windows."""
    from itertools import combinations

    from .chaos import construct_witness, pair_profile

    built = construct_witness(model, 2, "DC1", args.horizon)
    profiles = [pair_profile(model, a, b, args.horizon)
                for a, b in combinations(built.points, 2)]
    mins = [min(p[i] for p in profiles) for i in range(args.horizon)]
    maxs = [max(p[i] for p in profiles) for i in range(args.horizon)]
    if args.emit_csv:
        rows = [[i, str(mins[i]), str(maxs[i])] for i in range(args.horizon)]
        write_csv(args.emit_csv, ["i", "min_pairwise", "max_pairwise"], rows)
        print(f"wrote {args.emit_csv}")
    if args.emit_svg:
        write_text(args.emit_svg,
                   polyline_svg([float(x) for x in mins],
                                title="witness min pairwise distance"))
        print(f"wrote {args.emit_svg}")


def _parse_kv(tokens, allowed) -> dict:
    out = {}
    for token in tokens:
        if "=" not in token:
            raise ValidationError(f"expected key=value, got {token!r}")
        k, v = token.split("=", 1)
        if k not in allowed:
            raise ValidationError(f"unknown key {k!r}; allowed: {sorted(allowed)}")
        out[k] = v
    return out


def _cmd_furstenberg(args) -> int:
    params = WindowParams(m_max=args.m_max, run_req=args.run_req)
    if args.eventually_periodic:
        kv = _parse_kv(args.eventually_periodic, {"pre", "pat"})
        pre = tuple(int(b) for b in kv.get("pre", ""))
        pat = tuple(int(b) for b in kv.get("pat", ""))
        subject = EventuallyPeriodicSet(pre, pat)
    elif args.rotation:
        kv = _parse_kv(args.rotation, {"alpha", "H"})
        alpha_text = kv.get("alpha", "golden")
        alpha = (math.sqrt(5) - 1) / 2 if alpha_text == "golden" else float(alpha_text)
        subject = rotation_time_set(alpha, int(kv.get("H", 10000)))
    elif args.set_file:
        text = open(args.set_file, encoding="utf-8").read().strip()
        subject = rle_to_window(text)
    else:
        raise ValidationError(
            "choose one of --eventually-periodic, --rotation, --set-file")
    from .report import _jsonable

    audit = inclusion_audit(subject, params)
    out = {
        "verdicts": [
            {"family": v.family, "member": v.member, "mode": v.mode,
             "certificate": _jsonable(v.certificate)}
            for v in audit.verdicts
        ],
        "monotone": audit.monotone,
        "warnings": list(audit.warnings),
    }
    _print_json(out, args.out)
    return 0


def _cmd_shadow(args) -> int:
    model = resolve_model(args.spec)
    states = load_pseudo_orbit(args.orbit, model)
    delta = Fraction(args.delta) if args.delta is not None else Fraction(1, 2**args.depth)
    po = validate_pseudo_orbit(model, states, delta)
    limit = validate_limit_pseudo_orbit(po, delta, default_schedule(delta))
    if isinstance(model, SftGraph):
        result = sft_shadow(model, po, args.depth)
    else:
        epsilon = Fraction(args.epsilon) if args.epsilon is not None else delta
        result = find_shadowing_point(model, po, epsilon)
    out = {
        "states": len(po.states),
        "max_step_error": str(max(po.errors)) if po.errors else "0",
        "limit_verdict": {"ok": limit.ok, "failing_checkpoint": limit.failing_checkpoint},
        "shadow_point": str(result.point) if result.point is not None else None,
        "achieved_bound": str(result.epsilon) if result.epsilon is not None else None,
    }
    _print_json(out, args.out)
    if args.emit_csv:
        rows = [[i, str(e), str(result.tail_profile[i]) if i < len(result.tail_profile) else ""]
                for i, e in enumerate(po.errors)]
        write_csv(args.emit_csv, ["i", "step_error", "tracking_suffix_max"], rows)
        print(f"wrote {args.emit_csv}")
    if args.emit_svg:
        series = [float(x) for x in (result.tail_profile or po.errors)]
        write_text(args.emit_svg, polyline_svg(series, title="tracking error"))
        print(f"wrote {args.emit_svg}")
    return 0


def _cmd_corpus(args) -> int:
    from .corpus import corpus_names, load_corpus
    from .specio import dump_system

    if args.export:
        model = load_corpus(args.export)
        _print_json(dump_system(model), args.out)
        return 0
    for name in corpus_names():
        model = load_corpus(name)
        kind = "sft" if isinstance(model, SftGraph) else "finite"
        size = model.vertex_count if isinstance(model, SftGraph) else len(model.points)
        print(f"{name:12s} {kind:6s} size={size}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chainscope",
                                 description="chain structure and chaos analysis")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full pipeline report")
    p.add_argument("spec", help="spec file path or corpus:NAME")
    p.add_argument("--ladder-policy", default="all-critical",
                   choices=["all-critical", "explicit", "top-k"])
    p.add_argument("--ladder", default=None, help="comma list of resolutions")
    p.add_argument("--top-k", type=int, default=6)
    p.add_argument("--delta", default=None)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--horizon", type=int, default=512)
    p.add_argument("--eps-depth", type=int, default=6)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--no-witness", action="store_true")
    p.add_argument("--emit-dot", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("chains", help="chain analysis at one resolution")
    p.add_argument("spec")
    p.add_argument("--delta", default=None)
    p.add_argument("--emit-dot", default=None)
    p.add_argument("--emit-csv", default=None, help="basin rows (node, component, class)")
    _add_common(p)
    p.set_defaults(func=_cmd_chains)

    p = sub.add_parser("classify-chaos", help="hierarchy classification only")
    p.add_argument("spec")
    p.add_argument("--delta", default=None)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--horizon", type=int, default=512)
    p.add_argument("--eps-depth", type=int, default=6)
    p.add_argument("--no-witness", action="store_true")
    p.add_argument("--emit-csv", default=None, help="witness min/max distance trace")
    p.add_argument("--emit-svg", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("furstenberg", help="time-set family verdicts")
    p.add_argument("--eventually-periodic", nargs="+", default=None,
                   metavar="KEY=VAL", help="pre=BITS pat=BITS")
    p.add_argument("--rotation", nargs="+", default=None,
                   metavar="KEY=VAL", help="alpha=golden|FLOAT H=N")
    p.add_argument("--set-file", default=None, help="run-length encoded window")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--run-req", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_furstenberg)

    p = sub.add_parser("shadow", help="validate and shadow a pseudo-orbit")
    p.add_argument("spec")
    p.add_argument("--orbit", required=True)
    p.add_argument("--delta", default=None)
    p.add_argument("--epsilon", default=None)
    p.add_argument("--depth", type=int, default=3, help="agreement depth n")
    p.add_argument("--emit-csv", default=None)
    p.add_argument("--emit-svg", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_shadow)

    p = sub.add_parser("corpus", help="list or export built-in systems")
    p.add_argument("--export", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 4
    except ChainscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
