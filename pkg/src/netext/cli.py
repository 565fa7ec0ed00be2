"""Command line entry point: ``netext run`` and the per-stage subcommands."""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .fixtures import TWO_TOPIC_SPEC, CorpusGeneratorSpec, generate_corpus
from .pipeline import (
    STAGES, ConfigError, PipelineError, make_config, read_config_file, run_pipeline, run_stage,
)

# flag dest -> config key; flag values default to None so unset flags never
# shadow the config file
FLAG_KEYS = {
    "input": "input",
    "format": "format",
    "stopwords": "stopwords",
    "keep": "relevance_keep",
    "drop": "relevance_drop",
    "negation": "negation_particles",
    "min_token_length": "min_token_length",
    "top_n": "top_n",
    "min_doc_freq": "min_doc_freq",
    "min_pair_weight": "min_pair_weight",
    "top_k": "top_k",
    "resolution": "resolution",
    "seed": "seed",
    "out": "out",
}
PATH_KEYS = ("input", "stopwords", "out")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML or JSON config file; flags override it")
    p.add_argument("--input", help="corpus file (JSONL or CSV)")
    p.add_argument("--format", choices=("jsonl", "csv"))
    p.add_argument("--stopwords", help="stopword file, one token per line (default: bundled Indonesian list)")
    p.add_argument("--keep", action="append", metavar="PATTERN", help="relevance keep pattern (repeatable)")
    p.add_argument("--drop", action="append", metavar="PATTERN", help="relevance drop pattern (repeatable)")
    p.add_argument("--negation", action="append", metavar="PARTICLE",
                   help="negation particle (repeatable; replaces the default list)")
    p.add_argument("--min-token-length", type=int)
    p.add_argument("--top-n", type=int, help="dominant word cap (default 200)")
    p.add_argument("--min-doc-freq", type=int, help="minimum document frequency of a dominant word (default 3)")
    p.add_argument("--min-pair-weight", type=int, help="minimum pair weight kept as an edge (default 2)")
    p.add_argument("--top-k", type=int, help="word pairs shown in the report (default 10)")
    p.add_argument("--resolution", type=float, help="modularity resolution (default 1.0)")
    p.add_argument("--seed", type=int, help="seed for the community search visit order (default 42)")
    p.add_argument("--out", help="output directory (stage working directory for subcommands)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netext",
        description="Build a word co-occurrence network from short texts and find its topic communities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every stage and write the full output directory")
    _add_config_flags(run)

    helps = {
        "ingest": "load the input corpus into corpus.jsonl",
        "preprocess": "clean and tokenize corpus.jsonl into processed.jsonl",
        "pairs": "term statistics and word pairs (terms.csv, pairs.csv)",
        "graph": "build graph.json from pairs.csv",
        "communities": "modularity communities of graph.json (partition.csv)",
        "report": "report.json, report.md, graph.gexf, graph.dot",
    }
    for stage in STAGES:
        _add_config_flags(sub.add_parser(stage, help=helps[stage]))

    gen = sub.add_parser("generate", help="write a synthetic corpus with planted topics")
    gen.add_argument("--count", type=int, default=2000)
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--two-topic", action="store_true", help="small two-topic corpus with disjoint vocabularies")
    gen.add_argument("--out", required=True, help="JSONL file to write")
    return parser


def config_from_args(args: argparse.Namespace):
    file_values, base_dir = {}, Path.cwd()
    if args.config:
        file_values = read_config_file(args.config)
        base_dir = Path(args.config).resolve().parent
    overrides = {}
    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        if key in PATH_KEYS:
            # flags are relative to the working directory, not the config file
            value = os.path.abspath(value)
        overrides[key] = value
    return make_config(file_values, overrides, base_dir)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        if args.two_topic:
            spec = TWO_TOPIC_SPEC
        else:
            spec = CorpusGeneratorSpec(seed=args.seed, count=args.count)
        generate_corpus(spec, args.out)
        return 0
    try:
        cfg = config_from_args(args)
        if cfg.out is None:
            raise ConfigError("--out is required")
        if args.command == "run":
            start = time.perf_counter()
            report = run_pipeline(cfg)
            p = report.profile
            print(
                f"{p.raw} raw, {p.processed} processed, {p.nodes} nodes, {p.edges} edges; "
                f"{report.communities.count if report.communities else 0} groups "
                f"in {time.perf_counter() - start:.2f}s -> {cfg.out}"
            )
        else:
            run_stage(args.command, cfg, cfg.resolve(cfg.out))
    except PipelineError as exc:
        print(f"netext: error in stage {exc}", file=sys.stderr)
        return 1
    except (ConfigError, OSError, ValueError) as exc:
        print(f"netext: config error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
