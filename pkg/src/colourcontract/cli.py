"""Command line front end.

Exit codes: 0 success, 1 validation or verification failure, 2 usage error.
``-`` stands for stdin on inputs and stdout on outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .engine import contract_to_fixpoint, equivalent_contractions, iteration_bound
from .generators import RandomSpec, assign_random_colours, gen_erdos_renyi, permute_enumeration
from .graph_io import export_dot, parse_graph, serialize_graph, stats_dict, stats_json
from .oracle import colour_partition, component_contraction
from .worstcase import classify_roles, generate_fib_instance


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_contract(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.input))
    if args.permute_seed is not None:
        g, _ = permute_enumeration(g, args.permute_seed)
    final, trace = contract_to_fixpoint(g, scratchpad=args.scratchpad)
    stats_target = args.stats if args.stats else ("-" if args.trace else None)
    graph_target = args.out
    if graph_target is None and stats_target != "-":
        graph_target = "-"
    if graph_target is not None:
        _write_text(graph_target, serialize_graph(final))
    if stats_target is not None:
        _write_text(stats_target, stats_json(g, final, trace, include_trace=args.trace))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.input))
    contracted, _ = component_contraction(g)
    _write_text(args.out if args.out else "-", serialize_graph(contracted))
    return 0


def _pulled_back_blocks(total_map: np.ndarray, perm: np.ndarray | None) -> set[frozenset[int]]:
    blocks: dict[int, list[int]] = {}
    for v, t in enumerate(total_map.tolist()):
        blocks.setdefault(int(t), []).append(v)
    if perm is not None:
        inverse = np.empty(perm.size, dtype=np.int64)
        inverse[perm] = np.arange(perm.size, dtype=np.int64)
        return {frozenset(int(inverse[x]) for x in b) for b in blocks.values()}
    return {frozenset(b) for b in blocks.values()}


def _cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.input))
    final, trace = contract_to_fixpoint(g)
    partition = colour_partition(g)
    ok = equivalent_contractions(g, trace, partition)
    print(f"base: {'equivalent' if ok else 'MISMATCH'} (iterations={trace.iterations}, blocks={len(partition.blocks)})")
    base_blocks = _pulled_back_blocks(trace.total_map, None)
    for seed in args.seeds or []:
        h, perm = permute_enumeration(g, seed)
        _, trace_h = contract_to_fixpoint(h)
        ok_h = equivalent_contractions(h, trace_h, colour_partition(h))
        stable = _pulled_back_blocks(trace_h.total_map, perm) == base_blocks
        ok = ok and ok_h and stable
        print(f"seed {seed}: {'equivalent' if ok_h else 'MISMATCH'}, partition {'stable' if stable else 'UNSTABLE'} under relabelling")
    print(f"verify: {'OK' if ok else 'FAILED'}")
    return 0 if ok else 1


def _cmd_gen_fib(args: argparse.Namespace) -> int:
    inst = generate_fib_instance(args.level)
    text = serialize_graph(inst.graph)
    if args.roles:
        text = f"# level: {inst.level}\n# roles: {' '.join(inst.roles)}\n" + text
    sys.stdout.write(text)
    return 0


def _cmd_gen_random(args: argparse.Namespace) -> int:
    spec = RandomSpec(n=args.n, m=args.m, p=args.p, colours=args.colours, seed=args.seed)
    g = gen_erdos_renyi(spec)
    # colour draws use seed + 1 so the edge stream stays reproducible on its own
    g = assign_random_colours(g, spec.colours, spec.seed + 1)
    sys.stdout.write(serialize_graph(g))
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    g = parse_graph(_read_text(args.input))
    roles = classify_roles(g) if args.roles else None
    sys.stdout.write(export_dot(g, role_labels=roles))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    runs = []
    for seed in range(args.seeds):
        spec = RandomSpec(n=args.n, m=args.m, colours=args.colours, seed=seed)
        g = assign_random_colours(gen_erdos_renyi(spec), spec.colours, seed + 1)
        final, trace = contract_to_fixpoint(g)
        summary = stats_dict(g, final, trace)
        runs.append(
            {
                "seed": seed,
                "iterations": summary["iterations"],
                "final_n": summary["final_n"],
                "final_m": summary["final_m"],
                "total_wall_time_ms": summary["total_wall_time_ms"],
            }
        )
    iterations = [r["iterations"] for r in runs]
    report = {
        "n": args.n,
        "m": args.m,
        "colours": args.colours,
        "seeds": args.seeds,
        "runs": runs,
        "summary": {
            "min_iterations": min(iterations) if iterations else 0,
            "max_iterations": max(iterations) if iterations else 0,
            "mean_iterations": sum(iterations) / len(iterations) if iterations else 0.0,
            "mean_wall_time_ms": sum(r["total_wall_time_ms"] for r in runs) / len(runs) if runs else 0.0,
            "iteration_bound": iteration_bound(args.n) if args.n >= 1 else 0,
        },
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colourcontract",
        description="Contract every connected monochromatic region of a vertex-coloured graph to a single vertex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    contract = sub.add_parser("contract", help="iteratively contract a graph to its fixpoint")
    contract.add_argument("input", help="graph file, or - for stdin")
    contract.add_argument("--out", help="write the contracted graph here (- for stdout)")
    contract.add_argument("--stats", help="write run statistics JSON here (- for stdout)")
    contract.add_argument("--trace", action="store_true", help="include per-iteration vertex mappings in the statistics")
    contract.add_argument("--permute-seed", type=int, default=None, help="relabel vertices with this seed before contracting")
    contract.add_argument("--scratchpad", choices=["faithful", "epoch"], default="faithful", help="edge merge scratchpad variant")
    contract.set_defaults(handler=_cmd_contract)

    oracle = sub.add_parser("oracle", help="contract with the naive traversal-based reference")
    oracle.add_argument("input", help="graph file, or - for stdin")
    oracle.add_argument("--out", help="write the contracted graph here (- for stdout)")
    oracle.set_defaults(handler=_cmd_oracle)

    verify = sub.add_parser("verify", help="cross-check the engine against the reference on one graph")
    verify.add_argument("input", help="graph file, or - for stdin")
    verify.add_argument("--seeds", type=int, nargs="+", default=None, help="also verify under these relabelling seeds")
    verify.set_defaults(handler=_cmd_verify)

    gen = sub.add_parser("gen", help="generate instances")
    gen_sub = gen.add_subparsers(dest="generator", required=True)
    fib = gen_sub.add_parser("fib", help="worst-case instance attaining the iteration bound")
    fib.add_argument("--level", type=int, required=True, help="family level (iterations needed to contract)")
    fib.add_argument("--roles", action="store_true", help="prepend per-vertex role labels as comments")
    fib.set_defaults(handler=_cmd_gen_fib)
    rand = gen_sub.add_parser("random", help="seeded random graph")
    rand.add_argument("--n", type=int, required=True)
    group = rand.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, default=None, help="exact edge count")
    group.add_argument("--p", type=float, default=None, help="per-pair edge probability")
    rand.add_argument("--colours", type=int, required=True, help="colours drawn uniformly with seed + 1")
    rand.add_argument("--seed", type=int, required=True)
    rand.set_defaults(handler=_cmd_gen_random)

    export = sub.add_parser("export-dot", help="emit DOT text for rendering")
    export.add_argument("input", help="graph file, or - for stdin")
    export.add_argument("--roles", action="store_true", help="style vertices by contraction role instead of colour id")
    export.set_defaults(handler=_cmd_export_dot)

    bench = sub.add_parser("bench", help="time contraction over seeded random instances")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--m", type=int, required=True)
    bench.add_argument("--colours", type=int, required=True)
    bench.add_argument("--seeds", type=int, required=True, help="number of seeds, 0..K-1")
    bench.set_defaults(handler=_cmd_bench)

    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse and dispatch; returns the process exit code instead of exiting."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.handler(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
