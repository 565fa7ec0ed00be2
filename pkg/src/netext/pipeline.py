"""Stage-by-stage pipeline over a working directory.

Each stage reads the previous stage's artifact and writes its own:

    ingest       input file         -> corpus.jsonl
    preprocess   corpus.jsonl       -> processed.jsonl
    pairs        processed.jsonl    -> terms.csv, pairs.csv
    graph        pairs.csv          -> graph.json
    communities  graph.json         -> partition.csv
    report       all of the above   -> report.json, report.md, graph.gexf, graph.dot

``run_pipeline`` runs them in order inside a scratch directory and swaps it
into place, so a failed run never leaves a half-written output directory.
"""
from __future__ import annotations

import contextlib
import csv
import json
import os
import shutil
import tempfile
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import graphio, report as rpt
from .association import mine_pairs, read_pairs_csv, top_pairs, write_pairs_csv
from .community import Partition, louvain, modularity, summarize
from .corpus import Corpus, Document, load_corpus
from .frequency import read_terms_csv, select_dominant, term_stats, write_terms_csv
from .preprocess import DEFAULT_NEGATIONS, PreprocessConfig, ProcessedDocument, load_config_stopwords, preprocess
from .wordgraph import WordGraph, build_graph, density

STAGES = ("ingest", "preprocess", "pairs", "graph", "communities", "report")
SCHEMA_VERSION = 1

CORPUS_FILE = "corpus.jsonl"
PROCESSED_FILE = "processed.jsonl"
TERMS_FILE = "terms.csv"
PAIRS_FILE = "pairs.csv"
GRAPH_FILE = "graph.json"
PARTITION_FILE = "partition.csv"


class ConfigError(ValueError):
    pass


class SchemaVersionError(ValueError):
    pass


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass
class PipelineConfig:
    input: str | None = None
    format: str = "jsonl"
    stopwords: str | None = None
    relevance_keep: list[str] = field(default_factory=list)
    relevance_drop: list[str] = field(default_factory=list)
    negation_particles: list[str] = field(default_factory=lambda: list(DEFAULT_NEGATIONS))
    min_token_length: int = 2
    top_n: int = 200
    min_doc_freq: int = 3
    min_pair_weight: int = 2
    top_k: int = 10
    resolution: float = 1.0
    seed: int = 42
    out: str | None = None
    # directory that relative paths are resolved against; not part of the snapshot
    base_dir: str = field(default=".", repr=False)

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name != "base_dir"]

    def validate(self) -> "PipelineConfig":
        if self.format not in ("jsonl", "csv"):
            raise ConfigError(f"format must be jsonl or csv, got {self.format!r}")
        for name in ("min_token_length", "top_n", "min_doc_freq", "min_pair_weight", "top_k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {value!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        if not isinstance(self.resolution, (int, float)) or not self.resolution > 0:
            raise ConfigError(f"resolution must be > 0, got {self.resolution!r}")
        for name in ("relevance_keep", "relevance_drop", "negation_particles"):
            value = getattr(self, name)
            if not isinstance(value, (list, tuple)) or not all(isinstance(v, str) for v in value):
                raise ConfigError(f"{name} must be a list of strings")
        return self

    def resolve(self, path: str | None) -> Path | None:
        if path is None:
            return None
        p = Path(path)
        return p if p.is_absolute() else Path(self.base_dir) / p

    def snapshot(self) -> dict:
        """Everything needed to rerun the analysis; output location excluded."""
        snap = asdict(self)
        snap.pop("base_dir")
        snap.pop("out")
        snap["resolution"] = float(self.resolution)
        for key in ("relevance_keep", "relevance_drop", "negation_particles"):
            snap[key] = list(snap[key])
        return snap

    def preprocess_config(self) -> PreprocessConfig:
        return PreprocessConfig(
            stopwords=load_config_stopwords(self.resolve(self.stopwords)),
            relevance_keep=tuple(self.relevance_keep),
            relevance_drop=tuple(self.relevance_drop),
            negation_particles=tuple(self.negation_particles),
            min_token_length=self.min_token_length,
        )


def read_config_file(path) -> dict:
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".json":
        data = json.loads(raw.decode("utf-8"))
    else:
        try:
            import tomllib
        except ImportError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode("utf-8"))
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a single key/value table")
    return data


def make_config(file_values: dict | None = None, overrides: dict | None = None,
                base_dir: str | Path = ".") -> PipelineConfig:
    """Defaults, then config-file values, then explicit overrides (flags)."""
    allowed = set(PipelineConfig.keys())
    values: dict = {}
    for source in (file_values or {}, overrides or {}):
        unknown = sorted(set(source) - allowed)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        values.update({k: v for k, v in source.items() if v is not None})
    return PipelineConfig(**values, base_dir=str(base_dir)).validate()


# --- stage artifact helpers -------------------------------------------------

def _header(kind: str, **extra) -> str:
    return json.dumps({"schema": f"netext.{kind}", "version": SCHEMA_VERSION, **extra},
                      ensure_ascii=False) + "\n"


def _check_header(line: str, kind: str, path) -> dict:
    try:
        head = json.loads(line)
    except json.JSONDecodeError:
        head = None
    if not isinstance(head, dict) or head.get("schema") != f"netext.{kind}":
        raise SchemaVersionError(f"{path}: missing netext.{kind} schema header")
    if head.get("version") != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema version {head.get('version')} for netext.{kind}, expected {SCHEMA_VERSION}"
        )
    return head


def _csv_header(kind: str) -> str:
    return f"# netext.{kind} v{SCHEMA_VERSION}\n"


def _open_stage_csv(path, kind: str):
    fh = open(path, encoding="utf-8", newline="")
    first = fh.readline()
    expected = _csv_header(kind)
    if not first.startswith(f"# netext.{kind} "):
        fh.close()
        raise SchemaVersionError(f"{path}: missing '# netext.{kind}' schema line")
    if first != expected:
        fh.close()
        raise SchemaVersionError(f"{path}: {first.strip()!r}, expected {expected.strip()!r}")
    return fh


def _write(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def write_corpus_artifact(corpus: Corpus, path) -> None:
    lines = [_header("corpus", name=corpus.name, count=len(corpus))]
    lines += [json.dumps(d.to_record(), ensure_ascii=False) + "\n" for d in corpus.documents]
    _write(path, "".join(lines))


def read_corpus_artifact(path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        head = _check_header(fh.readline(), "corpus", path)
        docs = []
        for line in fh:
            rec = json.loads(line)
            docs.append(Document(rec["id"], rec["text"], rec.get("source", "generic"), rec.get("timestamp")))
    return Corpus(tuple(docs), head.get("name", ""))


def write_processed_artifact(docs, raw_count: int, name: str, path) -> None:
    lines = [_header("processed", name=name, raw_count=raw_count, processed_count=len(docs))]
    lines += [json.dumps({"id": d.id, "tokens": list(d.tokens)}, ensure_ascii=False) + "\n" for d in docs]
    _write(path, "".join(lines))


def read_processed_artifact(path) -> tuple[list[ProcessedDocument], dict]:
    with open(path, encoding="utf-8") as fh:
        head = _check_header(fh.readline(), "processed", path)
        docs = [ProcessedDocument(r["id"], tuple(r["tokens"])) for r in map(json.loads, fh)]
    return docs, head


def write_partition_csv(graph: WordGraph, partition: Partition | None, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["term", "community_id"])
    if partition is not None:
        for term, c in zip(graph.nodes, partition.assignment):
            writer.writerow([term, c])


def read_partition_csv(fh) -> dict[str, int]:
    reader = csv.reader(fh)
    header = next(reader, None)
    if header != ["term", "community_id"]:
        raise ValueError(f"unexpected partition CSV header {header!r}")
    return {row[0]: int(row[1]) for row in reader if row}


# --- stages -------------------------------------------------------------------

def stage_ingest(cfg: PipelineConfig, workdir: Path) -> Corpus:
    if cfg.input is None:
        raise ConfigError("no input file given")
    src = cfg.resolve(cfg.input)
    corpus = load_corpus(src, cfg.format)
    write_corpus_artifact(corpus, workdir / CORPUS_FILE)
    return corpus


def stage_preprocess(cfg: PipelineConfig, workdir: Path) -> list[ProcessedDocument]:
    corpus = read_corpus_artifact(workdir / CORPUS_FILE)
    docs = preprocess(corpus, cfg.preprocess_config())
    write_processed_artifact(docs, len(corpus), corpus.name, workdir / PROCESSED_FILE)
    return docs


def stage_pairs(cfg: PipelineConfig, workdir: Path):
    docs, _ = read_processed_artifact(workdir / PROCESSED_FILE)
    stats = term_stats(docs)
    dominant = select_dominant(stats, cfg.top_n, cfg.min_doc_freq)
    pairs = mine_pairs(docs, dominant, cfg.min_pair_weight)
    doc_freq = {s.term: s.doc_freq for s in stats}
    with open(workdir / TERMS_FILE, "w", encoding="utf-8", newline="") as fh:
        fh.write(_csv_header("terms"))
        write_terms_csv(stats, fh)
    with open(workdir / PAIRS_FILE, "w", encoding="utf-8", newline="") as fh:
        fh.write(_csv_header("pairs"))
        write_pairs_csv(pairs, doc_freq, fh)
    return stats, pairs


def _load_terms(workdir: Path):
    with _open_stage_csv(workdir / TERMS_FILE, "terms") as fh:
        return read_terms_csv(fh)


def stage_graph(cfg: PipelineConfig, workdir: Path) -> WordGraph:
    with _open_stage_csv(workdir / PAIRS_FILE, "pairs") as fh:
        pairs = read_pairs_csv(fh)
    doc_freq = {}
    if (workdir / TERMS_FILE).exists():
        doc_freq = {s.term: s.doc_freq for s in _load_terms(workdir)}
    graph = build_graph(pairs, prune_isolated=True, doc_freq=doc_freq)
    _write(workdir / GRAPH_FILE, graphio.to_json(graph))
    return graph


def _load_graph(workdir: Path) -> WordGraph:
    return graphio.from_json((workdir / GRAPH_FILE).read_text(encoding="utf-8"))


def stage_communities(cfg: PipelineConfig, workdir: Path) -> Partition | None:
    graph = _load_graph(workdir)
    partition = louvain(graph, cfg.resolution, cfg.seed) if graph.m > 0 else None
    with open(workdir / PARTITION_FILE, "w", encoding="utf-8", newline="") as fh:
        fh.write(_csv_header("partition"))
        write_partition_csv(graph, partition, fh)
    return partition


def stage_report(cfg: PipelineConfig, workdir: Path) -> rpt.AnalysisReport:
    _, head = read_processed_artifact(workdir / PROCESSED_FILE)
    stats = _load_terms(workdir)
    with _open_stage_csv(workdir / PAIRS_FILE, "pairs") as fh:
        pairs = read_pairs_csv(fh)
    graph = _load_graph(workdir)
    with _open_stage_csv(workdir / PARTITION_FILE, "partition") as fh:
        mapping = read_partition_csv(fh)
    partition = Partition.from_mapping(graph, mapping) if graph.n_nodes else None
    report = assemble_report(cfg, head["name"], head["raw_count"], head["processed_count"],
                             pairs, graph, partition)
    rpt.render_report(report, "json", workdir / "report.json")
    rpt.render_report(report, "markdown", workdir / "report.md")
    rpt.export_graph(graph, partition, "gexf", workdir / "graph.gexf")
    rpt.export_graph(graph, partition, "dot", workdir / "graph.dot")
    return report


def assemble_report(cfg: PipelineConfig, name: str, raw_count: int, processed_count: int,
                    pairs, graph: WordGraph, partition: Partition | None) -> rpt.AnalysisReport:
    has_edges = graph.m > 0
    return rpt.AnalysisReport(
        name=name,
        profile=rpt.DataProfile(raw_count, processed_count, graph.n_nodes, graph.n_edges),
        top_pairs=tuple(top_pairs(pairs, cfg.top_k)) if pairs else (),
        density=density(graph) if graph.n_nodes >= 2 else None,
        modularity=modularity(graph, partition) if has_edges and partition else None,
        communities=summarize(graph, partition) if has_edges and partition else None,
        nodes=rpt.node_rows(graph, partition),
        config=cfg.snapshot(),
    )


STAGE_FUNCS = {
    "ingest": stage_ingest,
    "preprocess": stage_preprocess,
    "pairs": stage_pairs,
    "graph": stage_graph,
    "communities": stage_communities,
    "report": stage_report,
}


@contextlib.contextmanager
def stage_errors(stage: str):
    """Re-raise anything a stage throws as a PipelineError naming the stage."""
    try:
        yield
    except PipelineError:
        raise
    except FileNotFoundError as exc:
        raise PipelineError(stage, f"file not found: {exc.filename}") from exc
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise PipelineError(stage, str(exc) or type(exc).__name__) from exc


def run_stage(stage: str, cfg: PipelineConfig, workdir) -> object:
    workdir = Path(workdir)
    with stage_errors(stage):
        workdir.mkdir(parents=True, exist_ok=True)
        return STAGE_FUNCS[stage](cfg, workdir)


def run_pipeline(cfg: PipelineConfig) -> rpt.AnalysisReport:
    """All stages into a scratch directory, then an atomic swap into ``cfg.out``."""
    if cfg.out is None:
        raise PipelineError("config", "no output directory given")
    out = cfg.resolve(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    scratch = Path(tempfile.mkdtemp(prefix=f".{out.name}.tmp-", dir=out.parent))
    try:
        result = None
        for stage in STAGES:
            result = run_stage(stage, cfg, scratch)
        os.chmod(scratch, 0o755)
        if out.exists():
            old = Path(tempfile.mkdtemp(prefix=f".{out.name}.old-", dir=out.parent))
            os.rmdir(old)
            out.rename(old)
            scratch.rename(out)
            shutil.rmtree(old)
        else:
            scratch.rename(out)
    except BaseException:
        shutil.rmtree(scratch, ignore_errors=True)
        raise
    return result
