"""Extractive single-document summarization via semantic word graphs.

Pipeline: tokenize and stem the document, build a word graph whose
edges combine co-occurrence counts with embedding-cosine similarity,
rank words with a structure-biased damped power iteration, aggregate
softplus-adjusted word scores into sentence salience, group sentences
into subtopics by spectral clustering under a relaxed transport
distance, and greedily fill the length budget round-robin across
subtopics. A multi-reference ROUGE evaluator and dataset harness are
included.
"""

__version__ = "0.1.0"

from swr.corpus import (CorpusError, Document, FilterConfig, Sentence, Token,
                        build_document, segment_sentences, tokenize_filter)
from swr.diversity import (ClusterAssignment, SentenceBag, affinity,
                           cluster_count, relaxed_wmd, spectral_cluster)
from swr.embeddings import (EmbeddingLoadError, EmbeddingTable, cosine,
                            load_embeddings)
from swr.graph import (GraphConstructionError, WordGraph, build_cooccurrence,
                       build_semantic, normalize_and_combine)
from swr.pipeline import (PipelineConfig, run_dataset, summarize, tune_delta)
from swr.ranking import (SalienceScores, StructureBias, biased_pagerank,
                         compute_bias, softplus)
from swr.rouge import RougeReport, rouge_n, rouge_su4
from swr.selection import (SummaryBudget, SummaryResult, parse_budget,
                           round_robin_select, unit_scores)

__all__ = [
    "CorpusError", "Document", "FilterConfig", "Sentence", "Token",
    "build_document", "segment_sentences", "tokenize_filter",
    "ClusterAssignment", "SentenceBag", "affinity", "cluster_count",
    "relaxed_wmd", "spectral_cluster",
    "EmbeddingLoadError", "EmbeddingTable", "cosine", "load_embeddings",
    "GraphConstructionError", "WordGraph", "build_cooccurrence",
    "build_semantic", "normalize_and_combine",
    "PipelineConfig", "run_dataset", "summarize", "tune_delta",
    "SalienceScores", "StructureBias", "biased_pagerank", "compute_bias",
    "softplus",
    "RougeReport", "rouge_n", "rouge_su4",
    "SummaryBudget", "SummaryResult", "parse_budget", "round_robin_select",
    "unit_scores",
    "__version__",
]
