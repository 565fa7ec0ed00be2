"""Pipeline deliverables: data profile, top word pairs, network properties,
community summary, and graph files."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Sequence

from . import __version__, graphio
from .association import WordPair
from .community import CommunityEntry, CommunitySummary, Partition
from .wordgraph import WordGraph, node_metrics

REPORT_SCHEMA = "netext.report"
REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DataProfile:
    raw: int = 0
    processed: int = 0
    nodes: int = 0
    edges: int = 0


@dataclass(frozen=True)
class NodeRow:
    term: str
    doc_freq: int | None
    degree: int
    weighted_degree: float
    community: int | None


@dataclass(frozen=True)
class AnalysisReport:
    name: str = ""
    profile: DataProfile = field(default_factory=DataProfile)
    top_pairs: tuple[WordPair, ...] = ()
    density: float | None = None
    modularity: float | None = None
    communities: CommunitySummary | None = None
    nodes: tuple[NodeRow, ...] = ()
    config: dict = field(default_factory=dict)
    pipeline_version: str = __version__


def _num(x):
    return None if x is None else (int(x) if isinstance(x, int) else float(x))


def to_dict(report: AnalysisReport) -> dict:
    comm = report.communities
    return {
        "schema": REPORT_SCHEMA,
        "version": REPORT_SCHEMA_VERSION,
        "pipeline_version": report.pipeline_version,
        "name": report.name,
        "profile": {
            "raw_data": report.profile.raw,
            "processed_data": report.profile.processed,
            "nodes": report.profile.nodes,
            "edges": report.profile.edges,
        },
        "density": report.density,
        "modularity": report.modularity,
        "top_pairs": [
            {"words": p.label, "a": p.a, "b": p.b, "weight": _num(p.weight)}
            for p in report.top_pairs
        ],
        "communities": None if comm is None else {
            "count": comm.count,
            "modularity": comm.modularity,
            "n_nodes": comm.n_nodes,
            "groups": [
                {
                    "id": e.id,
                    "size": e.size,
                    "size_percent": float(e.size_percent),
                    "nodes": list(e.nodes),
                }
                for e in comm.communities
            ],
        },
        "nodes": [
            {
                "term": n.term,
                "doc_freq": n.doc_freq,
                "degree": n.degree,
                "weighted_degree": _num(n.weighted_degree),
                "community": n.community,
            }
            for n in report.nodes
        ],
        "config": report.config,
    }


def from_dict(data: dict) -> AnalysisReport:
    if data.get("schema") != REPORT_SCHEMA:
        raise ValueError("not a netext report")
    if data.get("version") != REPORT_SCHEMA_VERSION:
        raise ValueError(f"report schema version {data.get('version')} not supported")
    prof = data["profile"]
    comm = data["communities"]
    summary = None
    if comm is not None:
        summary = CommunitySummary(
            tuple(
                CommunityEntry(g["id"], tuple(g["nodes"]), Decimal(repr(g["size_percent"])).quantize(Decimal("0.01")))
                for g in comm["groups"]
            ),
            comm["modularity"],
            comm["n_nodes"],
        )
    return AnalysisReport(
        name=data["name"],
        profile=DataProfile(prof["raw_data"], prof["processed_data"], prof["nodes"], prof["edges"]),
        top_pairs=tuple(WordPair(p["a"], p["b"], p["weight"]) for p in data["top_pairs"]),
        density=data["density"],
        modularity=data["modularity"],
        communities=summary,
        nodes=tuple(
            NodeRow(n["term"], n["doc_freq"], n["degree"], n["weighted_degree"], n["community"])
            for n in data["nodes"]
        ),
        config=data["config"],
        pipeline_version=data["pipeline_version"],
    )


def render_json(report: AnalysisReport) -> str:
    return json.dumps(to_dict(report), ensure_ascii=False, indent=2) + "\n"


def parse_json(text: str) -> AnalysisReport:
    return from_dict(json.loads(text))


def _fmt_weight(w) -> str:
    return graphio.fmt_num(w)


def _opt(x, spec: str) -> str:
    return "n/a" if x is None else format(x, spec)


def render_markdown(report: AnalysisReport, max_group_words: int = 12) -> str:
    name = report.name or "corpus"
    p = report.profile
    lines = [
        f"# Network text report: {name}",
        "",
        "## Data Profile",
        "",
        f"| | {name} |",
        "|---|---:|",
        f"| Raw Data | {p.raw} |",
        f"| Processed Data | {p.processed} |",
        f"| Nodes | {p.nodes} |",
        f"| Edges | {p.edges} |",
        "",
        f"## Top {len(report.top_pairs)} Word Pairs",
        "",
        "| Words | Weight |",
        "|---|---:|",
    ]
    lines += [f"| {pair.label} | {_fmt_weight(pair.weight)} |" for pair in report.top_pairs]
    comm = report.communities
    lines += [
        "",
        "## Network Properties",
        "",
        "| Density | Modularity | Groups |",
        "|---:|---:|---:|",
        f"| {_opt(report.density, '.4f')} | {_opt(report.modularity, '.3f')} | "
        f"{comm.count if comm else 0} |",
        "",
        "## Modularity Groups",
        "",
    ]
    if comm is None or not comm.communities:
        lines.append("No groups.")
    else:
        lines.append(f"{comm.count} groups, modularity {comm.modularity:.3f}.")
        lines += ["", "| Group | Size | Share | Words |", "|---:|---:|---:|---|"]
        for e in comm.communities:
            words = ", ".join(e.nodes[:max_group_words])
            if len(e.nodes) > max_group_words:
                words += ", ..."
            lines.append(f"| {e.id} | {e.size} | {e.size_percent}% | {words} |")
    if report.nodes:
        lines += [
            "",
            "## Central Words",
            "",
            "| Word | Degree | Weighted Degree | Group |",
            "|---|---:|---:|---:|",
        ]
        ranked = sorted(report.nodes, key=lambda n: (-n.weighted_degree, n.term))[:10]
        for n in ranked:
            group = "" if n.community is None else n.community
            lines.append(f"| {n.term} | {n.degree} | {_fmt_weight(n.weighted_degree)} | {group} |")
    return "\n".join(lines) + "\n"


def render_report(report: AnalysisReport, format: str, path) -> Path:
    if format == "json":
        text = render_json(report)
    elif format == "markdown":
        text = render_markdown(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path


def export_graph(graph: WordGraph, partition: Partition | None, format: str, path) -> Path:
    writers = {"gexf": graphio.to_gexf, "dot": graphio.to_dot, "json": graphio.to_json}
    if format not in writers:
        raise ValueError(f"unknown graph format {format!r}")
    path = Path(path)
    path.write_text(writers[format](graph, partition), encoding="utf-8")
    return path


def node_rows(graph: WordGraph, partition: Partition | None) -> tuple[NodeRow, ...]:
    metrics = node_metrics(graph)
    rows = []
    for i, term in enumerate(graph.nodes):
        met = metrics[term]
        rows.append(NodeRow(term, graph.doc_freq.get(term), met.degree, met.weighted_degree,
                            None if partition is None else partition.assignment[i]))
    return tuple(rows)


def top_pair_rows(pairs: Sequence[WordPair]) -> list[tuple[str, str]]:
    """Table-ready (``a-b``, weight) rows."""
    return [(p.label, _fmt_weight(p.weight)) for p in pairs]
