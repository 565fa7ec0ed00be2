"""GEXF 1.2, Graphviz DOT and JSON adjacency serialisation for WordGraph.

Writers are hand-rolled rather than going through networkx so that the
bytes are fully determined by the graph (no generation timestamps).
"""
from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from xml.sax.saxutils import quoteattr

from .community import Partition
from .wordgraph import WordGraph, from_edges, node_metrics

GEXF_NS = "http://www.gexf.net/1.2draft"
GRAPH_SCHEMA = "netext.graph"
GRAPH_SCHEMA_VERSION = 1


def fmt_num(x) -> str:
    """Shortest exact text for a weight: integers without a decimal point."""
    if isinstance(x, int) or float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def parse_num(s: str):
    v = float(s)
    return int(v) if v.is_integer() and not any(ch in s for ch in ".eE") else v


def _communities(graph: WordGraph, partition: Partition | None):
    if partition is None:
        return None
    if len(partition.assignment) != graph.n_nodes:
        raise ValueError("partition does not match graph")
    return partition.assignment


def to_gexf(graph: WordGraph, partition: Partition | None = None) -> str:
    comm = _communities(graph, partition)
    metrics = node_metrics(graph)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<gexf xmlns="{GEXF_NS}" version="1.2">',
        '  <graph mode="static" defaultedgetype="undirected">',
        '    <attributes class="node">',
        '      <attribute id="doc_freq" title="doc_freq" type="integer"/>',
        '      <attribute id="degree" title="degree" type="integer"/>',
        '      <attribute id="weighted_degree" title="weighted_degree" type="double"/>',
        '      <attribute id="community" title="community" type="integer"/>',
        '    </attributes>',
        '    <nodes>',
    ]
    for i, term in enumerate(graph.nodes):
        met = metrics[term]
        vals = [
            ("doc_freq", graph.doc_freq.get(term)),
            ("degree", met.degree),
            ("weighted_degree", met.weighted_degree),
            ("community", None if comm is None else comm[i]),
        ]
        out.append(f'      <node id="{i}" label={quoteattr(term)}>')
        out.append('        <attvalues>')
        for key, val in vals:
            if val is not None:
                out.append(f'          <attvalue for="{key}" value="{fmt_num(val)}"/>')
        out.append('        </attvalues>')
        out.append('      </node>')
    out.append('    </nodes>')
    out.append('    <edges>')
    for e, (i, j, w) in enumerate(graph.edges):
        out.append(f'      <edge id="{e}" source="{i}" target="{j}" weight="{fmt_num(w)}"/>')
    out.append('    </edges>')
    out.append('  </graph>')
    out.append('</gexf>')
    return "\n".join(out) + "\n"


def from_gexf(text: str) -> tuple[WordGraph, dict[str, int]]:
    """Parse GEXF back into a graph plus any ``community`` node attribute."""
    root = ET.fromstring(text)
    ns = {"g": GEXF_NS}
    graph_el = root.find("g:graph", ns)
    if graph_el is None:
        raise ValueError("not a GEXF 1.2 document")
    labels = {}
    doc_freq = {}
    communities = {}
    for node in graph_el.iterfind("g:nodes/g:node", ns):
        label = node.get("label", node.get("id"))
        labels[node.get("id")] = label
        for av in node.iterfind("g:attvalues/g:attvalue", ns):
            if av.get("for") == "doc_freq":
                doc_freq[label] = int(av.get("value"))
            elif av.get("for") == "community":
                communities[label] = int(av.get("value"))
    edges = [
        (labels[e.get("source")], labels[e.get("target")], parse_num(e.get("weight", "1")))
        for e in graph_el.iterfind("g:edges/g:edge", ns)
    ]
    return from_edges(edges, doc_freq), communities


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: WordGraph, partition: Partition | None = None, max_penwidth: float = 8.0) -> str:
    """Graphviz ``graph`` with edge ``weight`` and penwidth scaled so the
    heaviest edge gets ``max_penwidth``."""
    comm = _communities(graph, partition)
    heaviest = max((w for _, _, w in graph.edges), default=1)
    lines = ["graph netext {", "  node [shape=ellipse];"]
    for i, term in enumerate(graph.nodes):
        attrs = [f"label={_dot_id(term)}"]
        if comm is not None:
            attrs.append(f"community={comm[i]}")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j, w in graph.edges:
        pen = max_penwidth * w / heaviest
        lines.append(f"  n{i} -- n{j} [weight={fmt_num(w)}, penwidth={pen:.3f}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: WordGraph, partition: Partition | None = None) -> str:
    comm = _communities(graph, partition)
    metrics = node_metrics(graph)
    nodes = []
    for i, term in enumerate(graph.nodes):
        rec = {
            "id": term,
            "doc_freq": graph.doc_freq.get(term),
            "degree": metrics[term].degree,
            "weighted_degree": metrics[term].weighted_degree,
        }
        if comm is not None:
            rec["community"] = comm[i]
        nodes.append(rec)
    payload = {
        "schema": GRAPH_SCHEMA,
        "version": GRAPH_SCHEMA_VERSION,
        "directed": False,
        "nodes": nodes,
        "edges": [[a, b, w] for a, b, w in graph.labeled_edges()],
    }
    return json.dumps(payload, ensure_ascii=False, indent=1) + "\n"


def from_json(text: str) -> WordGraph:
    payload = json.loads(text)
    if payload.get("schema") != GRAPH_SCHEMA:
        raise ValueError("not a netext graph document")
    if payload.get("version") != GRAPH_SCHEMA_VERSION:
        raise ValueError(
            f"graph schema version {payload.get('version')} not supported "
            f"(expected {GRAPH_SCHEMA_VERSION})"
        )
    doc_freq = {n["id"]: n["doc_freq"] for n in payload["nodes"] if n.get("doc_freq") is not None}
    return from_edges([tuple(e) for e in payload["edges"]], doc_freq)
