"""End-to-end orchestration: single-document summarization, dataset
evaluation runs, and the similarity-threshold tuning sweep.

Ablation switches (independently togglable):
  NSE  drop the semantic edge channel
  NAS  force the uniform teleport distribution
  NSC  put every sentence in one cluster
  NSP  replace the softplus adjustment with a plain sum
"""

from __future__ import annotations

import csv
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from swr import rouge
from swr.corpus import (CorpusError, Document, FilterConfig, build_document,
                        default_stopwords, load_stopwords, load_tag_lexicon)
from swr.diversity import cluster_count, cluster_sentences
from swr.embeddings import EmbeddingTable, load_embeddings, stem_vectors
from swr.graph import build_word_graph
from swr.ranking import (PROFILE_INVERTED_PYRAMID, PROFILE_UNIFORM,
                         compute_bias, score_document)
from swr.selection import (SummaryBudget, SummaryResult, round_robin_select,
                           select_by_order, unit_scores)

log = logging.getLogger(__name__)

ABLATIONS = ("NSE", "NAS", "NSC", "NSP")

SYSTEMS = ("swr", "swr_nse", "swr_nas", "swr_nsc", "swr_nsp",
           "textrank_baseline", "random_baseline")

_SYSTEM_ABLATIONS = {
    "swr": frozenset(),
    "swr_nse": frozenset({"NSE"}),
    "swr_nas": frozenset({"NAS"}),
    "swr_nsc": frozenset({"NSC"}),
    "swr_nsp": frozenset({"NSP"}),
    "textrank_baseline": frozenset(ABLATIONS),
}

CSV_COLUMNS = ("doc_id", "system", "budget", "r1", "r2", "rsu4")


@dataclass
class PipelineConfig:
    window: int = 2
    delta: float = 0.8
    alpha: float = 0.85
    gamma: float = 1.0
    profile: str = PROFILE_INVERTED_PYRAMID
    budget: SummaryBudget = field(
        default_factory=lambda: SummaryBudget("words_abs", 100))
    ablations: frozenset[str] = frozenset()
    seed: int = 0
    tol: float = 1e-6
    max_iter: int = 100
    min_token_len: int = 2
    language: str = "en"
    embeddings_path: str | None = None
    stopwords_path: str | None = None
    tag_lexicon_path: str | None = None
    eval_stemming: bool = True
    aggregation: str = "average"
    workers: int = 1

    def __post_init__(self):
        bad = set(self.ablations) - set(ABLATIONS)
        if bad:
            raise ValueError(f"unknown ablations: {sorted(bad)}")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")


def make_filter_config(config: PipelineConfig) -> FilterConfig:
    stopwords = (load_stopwords(config.stopwords_path)
                 if config.stopwords_path else default_stopwords())
    lexicon = (load_tag_lexicon(config.tag_lexicon_path)
               if config.tag_lexicon_path else None)
    return FilterConfig(stopwords=stopwords,
                        min_token_len=config.min_token_len,
                        tag_lexicon=lexicon, language=config.language)


def kept_surfaces(doc: Document) -> set[str]:
    return {t.surface for s in doc.sentences for t in s.kept_tokens}


def summarize(config: PipelineConfig, text: str, source_id: str = "-",
              table: EmbeddingTable | None = None,
              filter_config: FilterConfig | None = None,
              return_trace: bool = False):
    """Run the full pipeline on one document.

    Returns (SummaryResult, diagnostics dict); with return_trace=True a
    third element exposes the intermediate stage outputs for ablation
    containment checks.
    """
    doc = build_document(text, source_id,
                         filter_config or make_filter_config(config))
    if table is None and config.embeddings_path:
        table = load_embeddings(config.embeddings_path,
                                vocab_filter=kept_surfaces(doc))
    result, diagnostics, trace = _summarize_document(config, doc, table)
    if return_trace:
        return result, diagnostics, trace
    return result, diagnostics


def _summarize_document(config: PipelineConfig, doc: Document,
                        table: EmbeddingTable | None):
    vector_index = stem_vectors(doc, table) if table is not None else {}
    use_semantic = "NSE" not in config.ablations
    graph = build_word_graph(doc, vector_index, window=config.window,
                             threshold=config.delta, semantic=use_semantic)
    profile = (PROFILE_UNIFORM if "NAS" in config.ablations
               else config.profile)
    bias = compute_bias(doc, graph, profile)
    scores = score_document(
        doc, graph, bias, alpha=config.alpha, tol=config.tol,
        max_iter=config.max_iter,
        use_softplus="NSP" not in config.ablations)
    clusters, degenerate = cluster_sentences(
        doc, vector_index, gamma=config.gamma, seed=config.seed,
        single_cluster="NSC" in config.ablations)
    unit = unit_scores(scores.sentence_salience, doc)
    result = round_robin_select(unit, clusters, config.budget, doc)

    oov_stems = len(graph.nodes) - len(vector_index)
    diagnostics: dict[str, Any] = {
        "source_id": doc.source_id,
        "n_sentences": len(doc.sentences),
        "n_nodes": len(graph.nodes),
        "n_cooc_edges": len(graph.cooc),
        "n_sem_edges": len(graph.sem),
        "oov_stems": oov_stems,
        "iterations_used": scores.iterations_used,
        "residual": scores.residual,
        "converged": scores.converged,
        "bias_fallback": bias.fell_back_uniform,
        "c_num": clusters.c_num,
        "cluster_sizes": clusters.sizes(),
        "degenerate_sentences": len(degenerate),
        "budget_unit": result.budget_unit,
        "budget_limit": result.budget_limit,
        "over_budget": result.over_budget,
    }
    trace = {
        "edges": dict(graph.combined),
        "bias": dict(bias.node_prior),
        "word_score": dict(scores.word_score),
        "salience": dict(scores.sentence_salience),
        "labels": dict(clusters.label),
        "selected": list(result.selected),
    }
    return result, diagnostics, trace


def has_warnings(diagnostics: dict[str, Any]) -> bool:
    return (not diagnostics["converged"] or diagnostics["bias_fallback"]
            or diagnostics["degenerate_sentences"] > 0
            or diagnostics["over_budget"])


def random_select(doc: Document, budget: SummaryBudget, seed: int,
                  doc_id: str) -> SummaryResult:
    """Seeded uniform sentence sampling under the budget."""
    rng = random.Random(f"{seed}:{doc_id}")
    order = [s.index for s in doc.sentences]
    rng.shuffle(order)
    return select_by_order(order, budget, doc)


def judge_combined_select(doc: Document, judge_scores: list[dict[int, float]],
                          budget: SummaryBudget) -> SummaryResult:
    """Sum per-sentence judge scores and take top sentences under the
    budget."""
    combined = {s.index: 0.0 for s in doc.sentences}
    for scores in judge_scores:
        for idx, value in scores.items():
            if idx in combined:
                combined[idx] += value
    order = sorted(combined, key=lambda i: (-combined[i], i))
    return select_by_order(order, budget, doc)


def load_judge_scores(path: Path) -> dict[int, float]:
    """Parse a judge TSV: `sentence_index<TAB>score` per line."""
    scores: dict[int, float] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        idx_str, value_str = line.split("\t")[:2]
        scores[int(idx_str)] = float(value_str)
    return scores


@dataclass
class DatasetEntry:
    doc_id: str
    text: str
    references: list[str]
    judge_files: list[Path]


def scan_dataset(dataset_dir: str | Path) -> list[DatasetEntry]:
    """Load the documented layout: one directory per document holding
    doc.txt, ref.*.txt references, and optional judge.*.scores files."""
    root = Path(dataset_dir)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset directory {root} does not exist")
    entries = []
    for doc_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        doc_file = doc_dir / "doc.txt"
        if not doc_file.is_file():
            continue
        refs = [p.read_text(encoding="utf-8")
                for p in sorted(doc_dir.glob("ref.*.txt"))]
        judges = sorted(doc_dir.glob("judge.*.scores"))
        entries.append(DatasetEntry(doc_id=doc_dir.name,
                                    text=doc_file.read_text(encoding="utf-8"),
                                    references=refs, judge_files=judges))
    if not entries:
        raise FileNotFoundError(f"no documents found under {root}")
    return entries


def _preload_table(config: PipelineConfig, entries: list[DatasetEntry],
                   filter_config: FilterConfig) -> EmbeddingTable | None:
    if not config.embeddings_path:
        return None
    vocab: set[str] = set()
    for entry in entries:
        try:
            vocab |= kept_surfaces(build_document(entry.text, entry.doc_id,
                                                  filter_config))
        except CorpusError:
            continue
    return load_embeddings(config.embeddings_path, vocab_filter=vocab)


def _summary_for_system(config: PipelineConfig, system: str, doc: Document,
                        entry: DatasetEntry, budget: SummaryBudget,
                        table: EmbeddingTable | None) -> SummaryResult:
    if system == "random_baseline":
        return random_select(doc, budget, config.seed, entry.doc_id)
    if system == "judge_combined":
        judge_scores = [load_judge_scores(p) for p in entry.judge_files]
        return judge_combined_select(doc, judge_scores, budget)
    ablations = _SYSTEM_ABLATIONS.get(system)
    if ablations is None:
        raise ValueError(f"unknown system {system!r}")
    system_config = replace(config, ablations=ablations, budget=budget)
    result, _, _ = _summarize_document(system_config, doc, table)
    return result


def run_dataset(config: PipelineConfig, dataset_dir: str | Path,
                systems: list[str] | None = None,
                budgets: list[SummaryBudget] | None = None,
                out_csv: str | Path | None = None) -> list[dict[str, str]]:
    """Evaluate systems over a dataset; returns (and optionally writes)
    CSV rows `doc_id,system,budget,r1,r2,rsu4`."""
    entries = scan_dataset(dataset_dir)
    budgets = budgets or [config.budget]
    filter_config = make_filter_config(config)
    table = _preload_table(config, entries, filter_config)

    def process(entry: DatasetEntry) -> list[dict[str, str]]:
        rows: list[dict[str, str]] = []
        if not entry.references:
            log.warning("document %s has no references; skipped",
                        entry.doc_id)
            rows.append({"doc_id": entry.doc_id, "system": "skipped",
                         "budget": "", "r1": "", "r2": "", "rsu4": ""})
            return rows
        doc = build_document(entry.text, entry.doc_id, filter_config)
        doc_systems = list(systems) if systems else list(SYSTEMS)
        if entry.judge_files and "judge_combined" not in doc_systems:
            doc_systems.append("judge_combined")
        for system in doc_systems:
            for budget in budgets:
                result = _summary_for_system(config, system, doc, entry,
                                             budget, table)
                report = rouge.evaluate(result.text(doc), entry.references,
                                        stemming=config.eval_stemming,
                                        aggregation=config.aggregation)
                rows.append({
                    "doc_id": entry.doc_id, "system": system,
                    "budget": budget.render(),
                    "r1": "%.6f" % report.r1,
                    "r2": "%.6f" % report.r2,
                    "rsu4": "%.6f" % report.rsu4,
                })
        return rows

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            per_doc = list(pool.map(process, entries))
    else:
        per_doc = [process(entry) for entry in entries]
    rows = [row for doc_rows in per_doc for row in doc_rows]
    if out_csv is not None:
        write_rows(rows, out_csv)
    return rows


def write_rows(rows: list[dict[str, str]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS,
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def tune_delta(config: PipelineConfig, dev_dataset_dir: str | Path,
               grid: list[float],
               out_csv: str | Path | None = None) -> tuple[float, list[dict]]:
    """Sweep the semantic-edge threshold over a dev set and return the
    value maximizing mean unigram recall (ties prefer the smaller
    threshold)."""
    if not grid:
        raise ValueError("threshold grid is empty")
    for value in grid:
        if not 0 < value < 1:
            raise ValueError(f"threshold {value} outside (0, 1)")
    entries = [e for e in scan_dataset(dev_dataset_dir) if e.references]
    if not entries:
        raise ValueError("dev set has no documents with references")
    filter_config = make_filter_config(config)
    table = _preload_table(config, entries, filter_config)
    docs = [build_document(e.text, e.doc_id, filter_config) for e in entries]

    rows = []
    best_delta, best_score = None, float("-inf")
    for delta in sorted(grid):
        delta_config = replace(config, delta=delta)
        total = 0.0
        for entry, doc in zip(entries, docs):
            result, _, _ = _summarize_document(delta_config, doc, table)
            cand = rouge.eval_tokenize(result.text(doc), config.eval_stemming)
            refs = [rouge.eval_tokenize(r, config.eval_stemming)
                    for r in entry.references]
            total += rouge.rouge_n(cand, refs, 1, config.aggregation)
        mean_r1 = total / len(entries)
        rows.append({"delta": "%g" % delta, "mean_r1": "%.6f" % mean_r1})
        if mean_r1 > best_score:
            best_delta, best_score = delta, mean_r1
    if out_csv is not None:
        with open(out_csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=("delta", "mean_r1"),
                                    lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    return best_delta, rows
