"""Command line: count, decompose, generate and verify.

Exit codes: 0 success, 2 bad input, 3 class rejection, 4 engine budget or
cap exceeded, 5 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .context import ENGINES, RunContext
from .cutset import count_claw_odd_hole_free, decompose_cutsets
from .errors import BudgetExceeded, CapExceeded, InputError, NotInClass
from .fork import count_fork_free, count_max_weight
from .generators import GENERATORS, WEIGHT_MODES, generate
from .graph import connected_components, induced_subgraph, normalize
from .io import (
    cutset_tree_dict,
    cutset_tree_dot,
    emit_document,
    frac_str,
    load_graph,
    modular_tree_dict,
    modular_tree_dot,
)
from .modular import extended_tree, standard_tree
from .oracle import brute_total_weight, brute_weight_vector

EXIT_OK, EXIT_INPUT, EXIT_REJECTED, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4, 5

DRIVERS = {"claw": count_claw_odd_hole_free, "fork": count_fork_free}

log = logging.getLogger("wiscount")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1) + "\n")


def _value_fields(key: str, x: Fraction) -> dict:
    return {key: frac_str(x), f"{key}_float": float(x)}


def _run(args, ctx: RunContext, G):
    log.info("counting n=%d m=%d with the %s driver", G.n, G.m, args.graph_class)
    driver = DRIVERS[args.graph_class]
    eps = args.epsilon if ctx.engine == "mcmc" else 0.0
    if args.max_only:
        return count_max_weight(G, driver, args.epsilon, ctx)
    return driver(G, eps, ctx)


def cmd_count(args) -> int:
    ctx = RunContext(engine=args.engine, seed=args.seed, exact_cap=args.exact_cap)
    start = time.perf_counter()
    G = load_graph(args.input)
    est = _run(args, ctx, G)
    report = {"class": args.graph_class, "n": G.n, "m": G.m}
    if args.max_only:
        report.update(_value_fields("W_alpha", est.value))
        if all(G.weight(v).denominator == 1 for v in G):
            # integer weights make W_alpha an integer below the estimate
            report["W_alpha_floor"] = int(est.value)
    else:
        report.update(_value_fields("W", est.value))
    report.update(eps=est.eps, engine=ctx.engine, trace=dict(ctx.trace),
                  wall_time=round(time.perf_counter() - start, 6))
    _emit(report)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = load_graph(args.input)
    if args.tree == "cutset":
        comps = []
        dots = []
        for comp in connected_components(normalize(G)):
            tree = decompose_cutsets(induced_subgraph(G, comp))
            comps.append(cutset_tree_dict(tree))
            dots.append(cutset_tree_dot(tree))
        body = {"tree": "cutset", "components": comps}
        dot = "".join(dots)
    else:
        root = standard_tree(G)
        ext = extended_tree(G, lambda leaf: Fraction(1))
        body = {"tree": "modular", **modular_tree_dict(root, ext)}
        dot = modular_tree_dot(root, ext)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(dot)
    if args.format == "dot":
        sys.stdout.write(dot)
    else:
        body["dot"] = dot
        _emit(body)
    return EXIT_OK


def cmd_generate(args) -> int:
    G = generate(args.graph_class, args.size, args.seed, args.weights)
    prov = {"generator": args.graph_class, "size": args.size, "seed": args.seed, "weights": args.weights}
    sys.stdout.write(emit_document(G, prov))
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = RunContext(engine=args.engine, seed=args.seed, exact_cap=args.exact_cap)
    G = load_graph(args.input)
    try:
        truth = brute_weight_vector(G)[-1] if args.max_only else brute_total_weight(G)
    except CapExceeded as exc:
        raise InputError(str(exc)) from exc
    report: dict = {"class": args.graph_class, "n": G.n, "engine": ctx.engine, **_value_fields("oracle", truth)}
    try:
        est = _run(args, ctx, G)
    except NotInClass as exc:
        report["rejected"] = str(exc)
        _emit(report)
        return EXIT_REJECTED
    report.update(_value_fields("result", est.value))
    rel = abs(Fraction(est.value) / truth - 1) if truth else Fraction(abs(est.value))
    report["relative_error"] = float(rel)
    if est.eps == 0:
        ok = est.value == truth
        report["status"] = "exact match" if ok else "mismatch"
    else:
        ok = rel <= Fraction(est.eps)
        report["status"] = "within eps" if ok else "outside eps"
    report["trace"] = dict(ctx.trace)
    _emit(report)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wiscount", description="Weighted independent set counting.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def engine_opts(sp) -> None:
        sp.add_argument("input", help="graph document (JSON) or DIMACS edge file; '-' for stdin")
        sp.add_argument("--class", dest="graph_class", choices=sorted(DRIVERS), default="claw")
        sp.add_argument("--engine", choices=ENGINES, default="exact")
        sp.add_argument("--epsilon", type=float, default=0.05, help="relative error for mcmc and --max-only")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--exact-cap", type=int, default=22, help="largest exact permanent")
        sp.add_argument("--max-only", action="store_true", help="report W_alpha instead of W")

    c = sub.add_parser("count", help="count W(G) or W_alpha(G)")
    engine_opts(c)
    c.set_defaults(func=cmd_count)

    d = sub.add_parser("decompose", help="clique cutset or modular decomposition tree")
    d.add_argument("input")
    d.add_argument("--tree", choices=("cutset", "modular"), default="cutset")
    d.add_argument("--format", choices=("json", "dot"), default="json")
    d.add_argument("--dot", metavar="FILE", help="also write DOT to FILE")
    d.set_defaults(func=cmd_decompose)

    g = sub.add_parser("generate", help="emit a random in-class instance")
    g.add_argument("--class", dest="graph_class", choices=GENERATORS, required=True)
    g.add_argument("--size", type=int, default=4)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--weights", choices=WEIGHT_MODES, default="unit")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="compare a driver run against the brute-force oracle")
    engine_opts(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotInClass as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
