"""Command-line front end.

Exit codes: 0 success / verification pass, 1 verification fail, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from spseg.constructions import greedy_segmentation, solve_target_u
from spseg.core import Segmentation
from spseg.errors import InputFormatError, SegmentationError
from spseg.frontier import FrontierConfig, sp_region_sample
from spseg.io import (
    dumps,
    format_rational,
    parse_market_file,
    parse_rational,
    parse_segmentation_file,
    segmentation_to_dict,
)
from spseg.plot import frontier_csv, surplus_svg
from spseg.pricing import aggregate_stats, min_price_assignment, welfare_of
from spseg.verifier import OffPathPolicy, is_strategy_proof, spe_check

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_MODES = {
    "strategyproof": None,
    "spe-limitmin": OffPathPolicy.LIMIT_MIN_PRICE,
    "spe-maxprice": OffPathPolicy.MAX_OPTIMAL_PRICE,
}


def _r(x: Fraction) -> str:
    return format_rational(x)


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _stats_doc(stats) -> dict:
    return {
        "v_star": _r(stats.v_star),
        "pi_star": _r(stats.pi_star),
        "u_star": _r(stats.u_star),
        "w_bar": _r(stats.w_bar),
        "triangle": {k: [_r(p), _r(u)] for k, (p, u) in stats.triangle.items()},
    }


def cmd_analyze(args) -> int:
    stats = aggregate_stats(parse_market_file(args.market))
    doc = _stats_doc(stats)
    lines = [f"v* = {doc['v_star']}", f"pi* = {doc['pi_star']}", f"u* = {doc['u_star']}", f"w_bar = {doc['w_bar']}"]
    lines += [f"{k} = ({p}, {u})" for k, (p, u) in doc["triangle"].items()]
    _emit(args, doc, lines)
    return EXIT_PASS


def _segmentation_report(args, seg: Segmentation, extra: dict) -> int:
    prices = min_price_assignment(seg)
    welfare = welfare_of(seg, prices)
    sp = is_strategy_proof(seg, 0)
    seg_doc = segmentation_to_dict(seg)
    if args.out:
        Path(args.out).write_text(dumps(seg_doc), encoding="utf-8")
    doc = dict(extra)
    doc.update(
        {
            "segmentation": seg_doc,
            "prices": [_r(p) for p in prices],
            "pi": _r(welfare.producer_surplus),
            "u": _r(welfare.consumer_surplus),
            "strategy_proof": sp.strategy_proof,
        }
    )
    lines = [f"{k} = {v}" for k, v in extra.items()]
    for i, (m, p) in enumerate(zip(seg, prices)):
        lines.append(f"X{i + 1}: ({', '.join(_r(x) for x in m.masses)})  price {_r(p)}")
    lines.append(f"(pi, u) = ({doc['pi']}, {doc['u']})")
    lines.append(f"verifier: {'PASS' if sp.strategy_proof else 'FAIL'} (strategy-proof, cost 0)")
    _emit(args, doc, lines)
    return EXIT_PASS if sp.strategy_proof else EXIT_FAIL


def cmd_greedy(args) -> int:
    g = greedy_segmentation(parse_market_file(args.market))
    extra = {"rounds": g.t, "shares": [_r(a) for a in g.shares]}
    if args.format == "text":
        extra = {"rounds": g.t, "shares": " ".join(_r(a) for a in g.shares)}
    return _segmentation_report(args, g.segmentation(), extra)


def cmd_construct(args) -> int:
    g = greedy_segmentation(parse_market_file(args.market))
    target = parse_rational(args.target_u, "--target-u")
    params, seg = solve_target_u(g, target)
    extra = {"k": params.k, "alpha": _r(params.alpha), "psi": _r(params.psi)}
    return _segmentation_report(args, seg, extra)


def cmd_verify(args) -> int:
    seg, file_prices = parse_segmentation_file(args.segmentation)
    cost = parse_rational(args.cost, "--cost")
    if cost < 0:
        raise InputFormatError("--cost: must be nonnegative")
    policy = _MODES[args.mode]
    if policy is None:
        res = is_strategy_proof(seg, cost)
        passed, witnesses = res.strategy_proof, res.witnesses
        doc = {
            "mode": args.mode,
            "cost": _r(cost),
            "pass": passed,
            "indifference_condition": res.indifference.passed,
            "indifference_violations": [v.label() for v in res.indifference.violations],
        }
    else:
        res = spe_check(seg, file_prices, policy)
        passed, witnesses = res.passed, res.witnesses
        doc = {"mode": args.mode, "pass": passed}
    doc["witnesses"] = [
        {
            "source_market": w.source_market,
            "valuation_index": w.valuation_index,
            "target_market": w.target_market,
            "gain": _r(w.gain),
            "label": w.label(),
        }
        for w in witnesses
    ]
    lines = [f"{'PASS' if passed else 'FAIL'} ({args.mode}" + (f", cost {_r(cost)})" if policy is None else ")")]
    lines += [f"witness {w.label()}" for w in witnesses]
    if policy is None:
        cross = "holds" if doc["indifference_condition"] else "fails: " + "; ".join(doc["indifference_violations"])
        lines.append(f"indifference condition {cross}")
    _emit(args, doc, lines)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_frontier(args) -> int:
    aggregate = parse_market_file(args.market)
    stats = aggregate_stats(aggregate)
    cost = parse_rational(args.cost, "--cost")
    config = FrontierConfig(args.denominator, args.max_markets, cost)
    points = sp_region_sample(aggregate, config)
    table = frontier_csv(points)
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    if args.plot:
        svg = surplus_svg(stats, points, title=f"strategy-proof sample, cost {_r(cost)}")
        Path(args.plot).write_text(svg, encoding="utf-8")
    doc = {"cost": _r(cost), "points": [[_r(p.pi), _r(p.u)] for p in points]}
    if args.format == "json":
        _emit(args, doc, [])
    elif not args.out:
        sys.stdout.write(table)
    else:
        sys.stdout.write(f"{len(points)} points written to {args.out}\n")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spseg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "uniform-monopoly statistics and surplus triangle")
    p.add_argument("market")

    p = add("greedy", cmd_greedy, "greedy extremal segmentation")
    p.add_argument("market")
    p.add_argument("--out", help="write the segmentation file here")

    p = add("construct", cmd_construct, "family member with a target consumer surplus")
    p.add_argument("market")
    p.add_argument("--target-u", required=True)
    p.add_argument("--out", help="write the segmentation file here")

    p = add("verify", cmd_verify, "check a segmentation file")
    p.add_argument("segmentation")
    p.add_argument("--cost", default="0")
    p.add_argument("--mode", choices=tuple(_MODES), default="strategyproof")

    p = add("frontier", cmd_frontier, "sample strategy-proof welfare points on a mass lattice")
    p.add_argument("market")
    p.add_argument("--cost", default="0")
    p.add_argument("--denominator", type=int, required=True)
    p.add_argument("--max-markets", type=int, default=3)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--plot", help="SVG output path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SegmentationError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
