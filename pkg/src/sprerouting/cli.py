"""Command line entry point: ``sprerouting <command> ...``.

Exit codes: 0 success, 1 internal failure (including an oracle
disagreement), 2 bad input, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import oracle as oracle_mod
from .batch import run_batch
from .encoding import DEFAULT_CAP
from .errors import InputError, InvariantViolation, ResourceError
from .generators import FAMILIES, generate
from .instance import validate_plane_instance
from .reduction import reducedness_report
from .solve import ORACLE_VARIANT, query_from_document, run_query
from .sprg import read_sprg, write_sprg
from .standard_form import check_standard_form
from .switches import decide_spr_planar

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True) if as_json else text)


def cmd_decide(args) -> int:
    q = query_from_document(read_sprg(args.input), args.variant)
    out = run_query(q, args.max_encoding_nodes, args.check_oracle)
    if not args.witness:
        out.pop("witness", None)
    text = f"{q.variant}: {'reachable' if out['reachable'] else 'not reachable'}"
    if args.witness and out.get("witness"):
        text += "\nwitness: " + " ".join(map(str, out["witness"]))
    if args.check_oracle:
        text += "\noracle agrees"
    _emit(out, args.json, text)
    return EXIT_OK


def _oracle_variant(name: str) -> str:
    name = name.strip()
    if name.upper() in ORACLE_VARIANT:
        return ORACLE_VARIANT[name.upper()]
    if name.lower() in oracle_mod.VARIANTS:
        return name.lower()
    raise InputError(f"unknown variant {name!r}")


def cmd_oracle(args) -> int:
    doc = read_sprg(args.input)
    q = query_from_document(doc, None if args.variant.lower() in oracle_mod.VARIANTS else args.variant)
    variant = _oracle_variant(args.variant)
    rg = oracle_mod.build_rerouting_graph(q.inst, variant, args.max_paths)
    if args.dot:
        sys.stdout.write(rg.to_dot())
        return EXIT_OK
    v = oracle_mod.oracle_decide(q.inst, q.P, q.target, variant, sequence=args.sequence, graph=rg)
    out = v.to_json()
    out["variant"] = variant
    text = f"{variant}: {'reachable' if v.reachable else 'not reachable'} ({len(rg.paths)} S-paths)"
    if v.sequence:
        text += "\n" + "\n".join(" ".join(map(str, p)) for p in v.sequence)
    _emit(out, args.json, text)
    return EXIT_OK


def cmd_gen(args) -> int:
    doc = generate(args.family, args.params, args.seed)
    comment = f"{args.family} {' '.join(map(str, args.params))} seed={args.seed}"
    text = write_sprg(doc, comment)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    doc = read_sprg(args.input)
    inst = doc.instance()
    out = {"vertices": doc.graph.vertex_count, "edges": doc.graph.edge_count, "d": inst.d}
    if doc.graph.rotation is not None:
        out["embedding"] = validate_plane_instance(inst, expect_reduced=args.reduced)
    if args.reduced:
        out["reduced"] = reducedness_report(inst)
    if args.standard_form:
        out["standard_form"] = check_standard_form(inst).to_json()
    lines = [f"{k}: {v}" for k, v in out.items()]
    _emit(out, args.json, "\n".join(lines))
    return EXIT_OK


def bench_instance(family: str, size: int, seed: int = 0):
    if family == "grid":
        return generate("grid", [size, size])
    if family == "random_layered":
        return generate("random_layered", [size, max(2, size // 3)], seed)
    return generate(family, [size])


def cmd_bench(args) -> int:
    rows = []
    for size in (int(x) for x in args.sizes.split(",")):
        doc = bench_instance(args.family, size, args.seed)
        inst = doc.instance()
        t0 = time.perf_counter()
        v = decide_spr_planar(inst, doc.path, doc.target.vertices, args.max_encoding_nodes)
        rows.append({
            "size": size,
            "vertices": doc.graph.vertex_count,
            "edges": doc.graph.edge_count,
            "reachable": v.reachable,
            "seconds": time.perf_counter() - t0,
            "dp_allocated": v.diagnostics["stats"]["dp_allocated"],
        })
    text = "\n".join(["size  vertices  seconds  dp_allocated"] +
                     [f"{r['size']:>4}  {r['vertices']:>8}  {r['seconds']:7.3f}  {r['dp_allocated']:>12}"
                      for r in rows])
    _emit({"family": args.family, "rows": rows}, args.json, text)
    return EXIT_OK


def cmd_batch(args) -> int:
    report = run_batch(args.inputs, args.variant, args.max_encoding_nodes, args.check_oracle,
                       workers=args.workers)
    text = json.dumps(report["summary"])
    _emit(report, args.json, text)
    return EXIT_FAIL if report["summary"].get("disagreement") else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sprerouting", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide reachability for one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--variant", choices=list(ORACLE_VARIANT))
    p.add_argument("--witness", action="store_true")
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("--max-encoding-nodes", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", help="brute-force answer over all S-paths")
    p.add_argument("--input", required=True)
    p.add_argument("--variant", required=True,
                   help="SPR|GSPR|RSPR|TSPR or unrestricted|restricted|topological")
    p.add_argument("--sequence", action="store_true")
    p.add_argument("--max-paths", type=int, default=oracle_mod.DEFAULT_MAX_PATHS)
    p.add_argument("--dot", action="store_true", help="print the rerouting graph as DOT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("family", choices=list(FAMILIES))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check embedding, reducedness or standard form")
    p.add_argument("--input", required=True)
    p.add_argument("--standard-form", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="time the planar solver on a family")
    p.add_argument("--family", required=True, choices=list(FAMILIES))
    p.add_argument("--sizes", required=True, help="comma separated, e.g. 10,20,40")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-encoding-nodes", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("batch", help="decide many instances into a JSON report")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--variant", choices=list(ORACLE_VARIANT))
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("--max-encoding-nodes", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource limit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
