"""Command-line interface: mutate, verify, class, green, dt, exchange-graph, serve."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from quiverkit.dt import UnknownWithinBounds, dt_invariant, dt_product, verify_identity
from quiverkit.fixtures import fixture, fixture_names
from quiverkit.qalgebra import AlgebraError
from quiverkit.quiver import Quiver, QuiverError, frame
from quiverkit.search import (
    build_exchange_graph,
    enumerate_mutation_class,
    key_digest,
    search_green_sequences,
    verify_sequence,
)

USAGE_ERROR = 2


def _load_quiver(path: str) -> Quiver:
    if path.startswith("fixture:"):
        return fixture(path[len("fixture:") :]).quiver
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise QuiverError(f"cannot read quiver file {path}: {exc}") from exc
    return Quiver.from_json(text)


def _parse_seq(text: Optional[str], flag: str) -> tuple[int, ...]:
    if not text:
        return ()
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(int(token))
        except ValueError:
            raise QuiverError(f"{flag}: cannot parse vertex token {token!r}") from None
    return tuple(out)


def _cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver)
    seq = _parse_seq(args.seq, "--seq")
    state = frame(q).apply(seq)
    unframed = Quiver(q.n, 0, state.quiver.mutable_block())
    payload = {
        "quiver": unframed.to_dict(),
        "c_matrix": [list(row) for row in state.c_matrix().entries],
        "greens": state.greens(),
        "reds": state.reds(),
        "history": list(seq),
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_verify(args) -> int:
    q = _load_quiver(args.quiver)
    seq_a = _parse_seq(args.seq_a, "--seq-a")
    seq_b = _parse_seq(args.seq_b, "--seq-b")
    report = verify_identity(q, seq_a, seq_b, args.degree)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.equal else 1


def _cmd_class(args) -> int:
    q = _load_quiver(args.quiver)
    result = enumerate_mutation_class(q, args.max_nodes)
    print(json.dumps(result.to_dict()))
    return 0


def _cmd_green(args) -> int:
    q = _load_quiver(args.quiver)
    if args.seq is not None:
        report = verify_sequence(q, _parse_seq(args.seq, "--seq"))
        print(json.dumps(report.to_dict(), indent=2))
        return 0
    result = search_green_sequences(
        q, max_depth=args.max_depth, max_nodes=args.max_nodes, want=args.want
    )
    payload = {
        "sequences": [list(s) for s in result.sequences],
        "truncated": result.truncated,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_dt(args) -> int:
    q = _load_quiver(args.quiver)
    if args.seq is not None:
        product = dt_product(q, _parse_seq(args.seq, "--seq"), args.degree)
        print(json.dumps(product.to_dict(), indent=2))
        return 0
    try:
        series = dt_invariant(
            q, args.degree, max_depth=args.max_depth, max_nodes=args.max_nodes
        )
    except UnknownWithinBounds as exc:
        print(json.dumps({"error": str(exc)}))
        return 1
    print(json.dumps({"degree": args.degree, "series": series.to_json_terms()}, indent=2))
    return 0


def _cmd_exchange_graph(args) -> int:
    q = _load_quiver(args.quiver)
    graph = build_exchange_graph(q, max_nodes=args.max_nodes)
    if args.format == "dot":
        print(graph.to_dot())
    else:
        payload = {
            "nodes": [key_digest(key, 16) for key in graph.nodes],
            "edges": [
                [key_digest(src, 16), vertex, key_digest(dst, 16)]
                for src, vertex, dst in graph.edges
            ],
            "unique_source": graph.has_unique_source,
            "sink_count": graph.sink_count,
            "truncated": graph.truncated,
        }
        print(json.dumps(payload, indent=2))
    return 0


def _cmd_catalog(_args) -> int:
    entries = []
    for name in fixture_names():
        fx = fixture(name)
        entries.append(
            {
                "name": name,
                "description": fx.description,
                "quiver": fx.quiver.to_dict(),
                "sequences": [list(s) for s in fx.sequences],
            }
        )
    print(json.dumps(entries, indent=2))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from quiverkit.service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverkit",
        description="Exact quiver mutation, green sequences, and dilogarithm products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quiver_arg(p):
        p.add_argument(
            "--quiver",
            required=True,
            help='quiver JSON file, or "fixture:NAME" for a catalog entry',
        )

    p = sub.add_parser("mutate", help="apply a mutation sequence and print the state")
    add_quiver_arg(p)
    p.add_argument("--seq", default="", help="comma-separated vertices, e.g. 1,2")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("verify", help="compare the products of two sequences")
    add_quiver_arg(p)
    p.add_argument("--seq-a", required=True)
    p.add_argument("--seq-b", required=True)
    p.add_argument("--degree", type=int, default=8)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("class", help="enumerate the mutation class up to isomorphism")
    add_quiver_arg(p)
    p.add_argument("--max-nodes", type=int, default=100_000)
    p.set_defaults(func=_cmd_class)

    p = sub.add_parser("green", help="verify a sequence or search for maximal green ones")
    add_quiver_arg(p)
    p.add_argument("--seq", default=None, help="verify this sequence instead of searching")
    p.add_argument("--search", action="store_true", help="search for sequences (default)")
    p.add_argument("--max-depth", type=int, default=12)
    p.add_argument("--max-nodes", type=int, default=100_000)
    p.add_argument("--want", choices=["first", "all"], default="all")
    p.set_defaults(func=_cmd_green)

    p = sub.add_parser("dt", help="invariant series from a sequence or a bounded search")
    add_quiver_arg(p)
    p.add_argument("--seq", default=None, help="use this sequence (any sequence allowed)")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--max-depth", type=int, default=12)
    p.add_argument("--max-nodes", type=int, default=20_000)
    p.set_defaults(func=_cmd_dt)

    p = sub.add_parser("exchange-graph", help="oriented exchange graph slice")
    add_quiver_arg(p)
    p.add_argument("--max-nodes", type=int, default=10_000)
    p.add_argument("--format", choices=["json", "dot"], default="dot")
    p.set_defaults(func=_cmd_exchange_graph)

    p = sub.add_parser("catalog", help="list the built-in fixture quivers")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (QuiverError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
