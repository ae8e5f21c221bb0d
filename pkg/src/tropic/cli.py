"""Command line entry points: one-shot runs, the HTTP server, demo data."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import TropicError
from .ingestion import parse_base_knowledge, parse_edge_list
from .pipeline import config_from_env, render_csv, run_pipeline
from .scoring import ScoringConfig
from .synthetic import demo_discussion


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropic",
        description="Trustworthiness ratings for online publishers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="process an edge list and write the CSV")
    run.add_argument("edge_list", help="edge list file (url,user per row)")
    run.add_argument(
        "-b", "--base-knowledge", help="publisher,score annotations file"
    )
    run.add_argument(
        "-o", "--output", default="-", help="output CSV path (default stdout)"
    )
    run.add_argument("--only-annotated", action="store_true",
                     help="export only annotated rows")
    run.add_argument("--alpha", type=float, help="FDR level")
    run.add_argument("--label-threshold", type=float,
                     help="score cutoff for the T label")
    run.add_argument("--seed", type=int, help="community detection seed")
    run.add_argument("--max-edges", type=int,
                     help="edge cap (0 disables)")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)

    demo = sub.add_parser("demo", help="write the bundled demo input files")
    demo.add_argument("-d", "--directory", default=".",
                      help="where to write demo files")
    return parser


def _run_config(args):
    from dataclasses import replace

    config = config_from_env()
    if args.alpha is not None:
        config = replace(config, alpha=args.alpha)
    if args.label_threshold is not None:
        config = replace(
            config, scoring=ScoringConfig(label_threshold=args.label_threshold)
        )
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    if args.max_edges is not None:
        config = replace(config, max_edges=args.max_edges)
    return config


def _cmd_run(args) -> int:
    config = _run_config(args)
    with open(args.edge_list, "rb") as fh:
        edge_list = parse_edge_list(fh, limit=config.edge_limit)
    baseline = {}
    if args.base_knowledge:
        with open(args.base_knowledge, "rb") as fh:
            baseline = parse_base_knowledge(fh)
    state = run_pipeline(edge_list, baseline, config)
    payload = render_csv(state.scoring.records, only_annotated=args.only_annotated)
    if args.output == "-":
        sys.stdout.buffer.write(payload)
    else:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    return 0


def _bind_addr() -> tuple[str, int]:
    addr = os.environ.get("TROPIC_BIND_ADDR", "127.0.0.1:8000")
    host, _, port = addr.rpartition(":")
    return host or "127.0.0.1", int(port)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, port = _bind_addr()
    if args.host is not None:
        host = args.host
    if args.port is not None:
        port = args.port
    uvicorn.run(create_app(), host=host, port=port)
    return 0


def _cmd_demo(args) -> int:
    demo = demo_discussion()
    edge_path = os.path.join(args.directory, "demo_edges.csv")
    base_path = os.path.join(args.directory, "demo_base_knowledge.csv")
    with open(edge_path, "w", encoding="utf-8") as fh:
        fh.write(demo.edge_text)
    with open(base_path, "w", encoding="utf-8") as fh:
        fh.write(demo.base_text)
    print(f"wrote {edge_path} and {base_path}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "serve":
            return _cmd_serve(args)
        return _cmd_demo(args)
    except TropicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
