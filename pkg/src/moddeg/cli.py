"""Command-line front end.

Subcommands:

* ``find``    read a bipartite graph, output a verified induced subgraph
              with every degree congruent to 1 mod k
* ``oracle``  exact maximum order for any residue/modulus pair, optionally
              cross-checked against full enumeration
* ``gen``     emit a generated instance in the labeled edge-list format
* ``bench``   run a reproducible batch and print a canonical report
* ``mixing``  near-uniformity table for the dyadic residue distribution

Exit status: 0 on success with all verifications passing, 1 when a
verification or cross-check fails, 2 for bad input or bad usage.  The
``MODDEG_SEED`` environment variable supplies the default seed wherever
``--seed`` is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators, harness, mixing, oracle
from .construction import AnalysisConfig, find_mod_one_subgraph
from .graph import GraphError, ResidueSpec, parse_graph, serialize_graph, verify_residue

ENV_SEED = "MODDEG_SEED"


def _default_seed() -> int:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_SEED} must be an integer, got {raw!r}")


def _read_graph(path: str, permissive: bool):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    return parse_graph(text, permissive=permissive)


def _parse_param(item: str) -> tuple[str, object]:
    key, sep, raw = item.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
    for cast in (int, float):
        try:
            return key, cast(raw)
        except ValueError:
            continue
    return key, raw


def _add_graph_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input",
        default="-",
        metavar="PATH",
        help="edge-list file, or - for stdin (default)",
    )
    parser.add_argument(
        "--permissive",
        action="store_true",
        help="accept arbitrary vertex ids and infer the bipartition",
    )


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moddeg",
        description="Induced subgraphs of bipartite graphs with degrees 1 mod k.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    find = sub.add_parser("find", help="find a verified degrees-1-mod-k subgraph")
    _add_graph_input(find)
    find.add_argument("--k", type=int, required=True, help="modulus, at least 2")
    find.add_argument(
        "--mode",
        choices=("sampled", "derandomized"),
        default="sampled",
        help="subset selection strategy (default: sampled)",
    )
    find.add_argument("--seed", type=int, default=None, help="sampling seed")
    find.add_argument(
        "--retries", type=int, default=16, help="sampling draws per route"
    )
    find.add_argument(
        "--threshold-exponent",
        type=int,
        default=3,
        help="high-degree cutoff is k to this power (default 3)",
    )
    find.add_argument("--json", action="store_true", help="emit the full trace as JSON")
    find.add_argument(
        "--trace",
        default=None,
        metavar="PATH",
        help="also write the trace as JSON to this file",
    )
    find.add_argument(
        "--verbose", action="store_true", help="include per-route vertex sets"
    )

    orc = sub.add_parser("oracle", help="exact maximum order for a residue target")
    _add_graph_input(orc)
    orc.add_argument(
        "--modulus", "--q", "-q", type=int, required=True, help="modulus, at least 2"
    )
    orc.add_argument(
        "--residue", "--r", "-r", type=int, default=1, help="target residue (default 1)"
    )
    orc.add_argument(
        "--budget",
        type=int,
        default=100_000_000,
        help="node budget for the branch-and-bound search",
    )
    orc.add_argument(
        "--naive",
        action="store_true",
        help="cross-check against full subset enumeration (small graphs only)",
    )
    orc.add_argument("--json", action="store_true", help="emit the result as JSON")

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument(
        "--kind",
        required=True,
        choices=sorted(generators.GENERATORS),
        help="instance family",
    )
    gen.add_argument(
        "--param",
        action="append",
        default=[],
        type=_parse_param,
        metavar="KEY=VALUE",
        help="generator parameter, repeatable",
    )
    gen.add_argument("--seed", type=int, default=None, help="generation seed")
    gen.add_argument("--out", default="-", metavar="PATH", help="output file")

    bench = sub.add_parser("bench", help="run a reproducible batch")
    bench.add_argument(
        "--spec",
        default=None,
        metavar="PATH",
        help="JSON batch spec file with keys k, mode, retries, instances "
        "(a list of {kind, count, params}); command-line flags win on overlap",
    )
    bench.add_argument(
        "--kind",
        default=None,
        choices=sorted(generators.GENERATORS),
        help="instance family (inline alternative to --spec)",
    )
    bench.add_argument(
        "--param",
        action="append",
        default=[],
        type=_parse_param,
        metavar="KEY=VALUE",
        help="generator parameter, repeatable",
    )
    bench.add_argument("--count", type=int, default=10, help="number of instances")
    bench.add_argument("--k", type=int, default=None, help="modulus, at least 2")
    bench.add_argument(
        "--mode",
        choices=("sampled", "derandomized"),
        default=None,
        help="subset selection strategy (default: sampled)",
    )
    bench.add_argument("--seed", type=int, default=None, help="master seed")
    bench.add_argument(
        "--retries", type=int, default=None, help="sampling draws per route"
    )
    bench.add_argument(
        "--oracle-max-n",
        type=int,
        default=None,
        metavar="N",
        help="also compute the exact optimum for instances with up to N vertices",
    )
    bench.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="report format"
    )
    bench.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock timings (breaks byte-for-byte reproducibility)",
    )
    bench.add_argument("--out", default="-", metavar="PATH", help="output file")

    mix = sub.add_parser("mixing", help="near-uniformity table of the residue DP")
    mix.add_argument("--k-max", type=int, default=25, help="largest modulus to check")
    mix.add_argument(
        "--threshold-exponent",
        type=int,
        default=3,
        help="evaluate sums of k to this power terms (default 3)",
    )
    mix.add_argument(
        "--format", choices=("text", "csv"), default="text", help="table format"
    )

    return parser


def _cmd_find(args) -> int:
    graph = _read_graph(args.input, args.permissive)
    config = AnalysisConfig.default()
    if args.threshold_exponent != config.threshold_exponent:
        config = AnalysisConfig(
            matching_share=config.matching_share,
            heavy_share=config.heavy_share,
            threshold_exponent=args.threshold_exponent,
        )
    seed = args.seed if args.seed is not None else _default_seed()
    subgraph, trace = find_mod_one_subgraph(
        graph,
        args.k,
        mode=args.mode,
        seed=seed,
        retries=args.retries,
        config=config,
    )
    check = verify_residue(graph, subgraph, ResidueSpec(1, args.k))
    payload = trace.to_dict(verbose=args.verbose)
    payload["vertices"] = subgraph.ids()
    payload["verified"] = bool(check)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, indent=2)
            handle.write("\n")
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(
            f"order {len(subgraph)} of {graph.n} vertices "
            f"(ratio {len(subgraph) / graph.n:.4f})"
        )
        print(f"route {trace.case} (analysis route {trace.analysis_case})")
        print("vertices:", " ".join(map(str, subgraph.ids())))
        status = "ok" if check else f"FAILED at vertex {check.witness}"
        print(f"verification (degrees = 1 mod {args.k}): {status}")
    return 0 if check and len(subgraph) > 0 else 1


def _cmd_oracle(args) -> int:
    graph = _read_graph(args.input, args.permissive)
    spec = ResidueSpec(residue=args.residue, modulus=args.modulus)
    result = oracle.exact_max_order(graph, spec, budget=args.budget)
    agree = None
    naive_order = None
    if args.naive:
        naive = oracle.enumerate_max_order(graph, spec)
        naive_order = naive.order
        agree = naive.order == result.order and not result.timed_out
    if args.json:
        payload = {
            "order": result.order,
            "witness": result.witness.ids(),
            "explored": result.explored,
            "budget": result.budget,
            "timed_out": result.timed_out,
            "residue": spec.residue,
            "modulus": spec.modulus,
        }
        if args.naive:
            payload["naive_order"] = naive_order
            payload["agree"] = agree
        print(json.dumps(payload, sort_keys=True))
    else:
        exactness = "lower bound (budget exhausted)" if result.timed_out else "exact"
        print(
            f"{exactness} order: {result.order} "
            f"(explored {result.explored} nodes, budget {result.budget})"
        )
        print("witness:", " ".join(map(str, result.witness.ids())) or "(empty)")
        if args.naive:
            verdict = "agree" if agree else "DISAGREE"
            print(f"cross-check (full enumeration): order {naive_order} -- {verdict}")
    if result.timed_out:
        return 1
    if args.naive and not agree:
        return 1
    return 0


def _cmd_gen(args) -> int:
    params = dict(args.param)
    seed = args.seed if args.seed is not None else _default_seed()
    graph, descriptor = generators.generate(args.kind, seed=seed, **params)
    _write_out(f"# {descriptor}\n" + serialize_graph(graph), args.out)
    return 0


def _cmd_bench(args) -> int:
    file_spec: dict = {}
    if args.spec is not None:
        with open(args.spec, encoding="utf-8") as handle:
            file_spec = json.load(handle)
    specs: list[tuple[str, dict]] = []
    for block in file_spec.get("instances", []):
        specs.extend([(block["kind"], block.get("params", {}))] * block.get("count", 1))
    if args.kind is not None:
        if args.count < 1:
            raise SystemExit("error: --count must be at least 1")
        specs.extend([(args.kind, dict(args.param))] * args.count)
    if not specs:
        raise SystemExit("error: no instances; pass --spec or --kind")
    k = args.k if args.k is not None else file_spec.get("k")
    if k is None:
        raise SystemExit("error: no modulus; pass --k or put k in the spec file")
    mode = args.mode if args.mode is not None else file_spec.get("mode", "sampled")
    retries = args.retries if args.retries is not None else file_spec.get("retries", 16)
    if args.seed is not None:
        seed = args.seed
    elif "seed" in file_spec:
        seed = int(file_spec["seed"])
    else:
        seed = _default_seed()
    report = harness.run_batch(
        specs,
        int(k),
        mode=mode,
        seed=seed,
        retries=int(retries),
        oracle_max_n=args.oracle_max_n,
    )
    if args.format == "json":
        text = report.to_json(include_timing=args.timing)
    else:
        text = report.to_csv(include_timing=args.timing)
    _write_out(text, args.out)
    return 0 if report.summary()["all_verified"] else 1


def _cmd_mixing(args) -> int:
    try:
        checks = mixing.uniformity_table(args.k_max, args.threshold_exponent)
    except AssertionError as exc:
        print(f"uniformity check failed: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(mixing.format_uniformity_table(checks, args.format))
    return 0 if all(c.passed for c in checks) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "find": _cmd_find,
        "oracle": _cmd_oracle,
        "gen": _cmd_gen,
        "bench": _cmd_bench,
        "mixing": _cmd_mixing,
    }
    try:
        return handlers[args.command](args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
