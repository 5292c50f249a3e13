"""Word scoring and sentence salience.

Word scores come from a damped power iteration over the combined word
graph whose teleport distribution encodes article structure: under the
inverted-pyramid profile a sentence's prior is the reciprocal of its
1-based index, a word's raw weight sums the priors of the distinct
sentences containing it, and the priors normalize to a probability
over nodes. Sentence salience then sums the softplus of each kept
token occurrence's word score (or the raw score when the softplus
adjustment is disabled).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from swr import _kernels
from swr.corpus import Document
from swr.graph import WordGraph

log = logging.getLogger(__name__)

PROFILE_INVERTED_PYRAMID = "inverted_pyramid"
PROFILE_UNIFORM = "uniform"


@dataclass
class StructureBias:
    profile: str
    sentence_prior: dict[int, float]
    node_prior: dict[str, float]
    fell_back_uniform: bool = False


@dataclass
class PageRankResult:
    scores: dict[str, float]
    iterations: int
    residual: float
    converged: bool


@dataclass
class SalienceScores:
    word_score: dict[str, float]
    sentence_salience: dict[int, float]
    iterations_used: int
    residual: float
    converged: bool


def compute_bias(doc: Document, graph: WordGraph,
                 profile: str = PROFILE_INVERTED_PYRAMID) -> StructureBias:
    """Teleport distribution over graph nodes for a structure profile.

    inverted_pyramid: sentence k gets prior 1/k; a node's raw weight
    sums the priors of the distinct sentences containing it, then the
    weights normalize to sum to 1. uniform: every node gets 1/|V|.
    Falls back to uniform (with a warning) if every raw weight is 0.
    """
    if not graph.nodes:
        raise ValueError("graph has no nodes")
    if profile == PROFILE_UNIFORM:
        p = 1.0 / len(graph.nodes)
        priors = {s.index: p for s in doc.sentences}
        return StructureBias(profile, priors, {n: p for n in graph.nodes})
    if profile != PROFILE_INVERTED_PYRAMID:
        raise ValueError(f"unknown structure profile {profile!r}")
    sentence_prior = {s.index: 1.0 / s.index for s in doc.sentences}
    raw = {
        node: sum(sentence_prior.get(k, 0.0)
                  for k in graph.node_sentences.get(node, ()))
        for node in graph.nodes
    }
    total = sum(raw.values())
    if total <= 0.0:
        log.warning("all structure weights are zero; using uniform bias")
        p = 1.0 / len(graph.nodes)
        return StructureBias(profile, sentence_prior,
                             {n: p for n in graph.nodes},
                             fell_back_uniform=True)
    node_prior = {n: raw[n] / total for n in graph.nodes}
    return StructureBias(profile, sentence_prior, node_prior)


def biased_pagerank(graph: WordGraph, bias: StructureBias,
                    alpha: float = 0.85, tol: float = 1e-6,
                    max_iter: int = 100) -> PageRankResult:
    """Iterate x <- alpha * M x + (1-alpha) * prior to a fixed point.

    M[i, j] = w_ij / deg(j) over combined weights (deg is the weighted
    degree); isolated nodes keep teleport-only mass. Starts from the
    uniform vector; stops when the L1 step change reaches tol, else
    returns the best iterate flagged non-converged.
    """
    nodes = graph.nodes
    n = len(nodes)
    if n == 0:
        raise ValueError("graph has no nodes")
    pos = {node: i for i, node in enumerate(nodes)}
    prior = np.array([bias.node_prior[node] for node in nodes])

    degree = np.zeros(n)
    rows: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (u, v), w in graph.combined.items():
        ui, vi = pos[u], pos[v]
        degree[ui] += w
        degree[vi] += w
        rows[ui].append((vi, w))
        rows[vi].append((ui, w))

    indptr = np.zeros(n + 1, dtype=np.int64)
    indices = np.zeros(sum(len(r) for r in rows), dtype=np.int64)
    weights = np.zeros(len(indices))
    k = 0
    for i, row in enumerate(rows):
        for j, w in sorted(row):
            indices[k] = j
            weights[k] = w / degree[j]
            k += 1
        indptr[i + 1] = k

    scores, iterations, residual = _kernels.pagerank(
        indptr, indices, weights, prior, alpha, tol, max_iter)
    converged = residual <= tol
    if not converged:
        log.warning("power iteration did not converge: residual=%.3g "
                    "after %d iterations", residual, iterations)
    return PageRankResult(
        scores={node: float(scores[pos[node]]) for node in nodes},
        iterations=iterations, residual=float(residual),
        converged=converged)


def unbiased_pagerank(graph: WordGraph, alpha: float = 0.85,
                      tol: float = 1e-6, max_iter: int = 100) -> PageRankResult:
    """Baseline ranking path: uniform teleport over all nodes."""
    p = 1.0 / len(graph.nodes)
    bias = StructureBias(PROFILE_UNIFORM, {}, {n: p for n in graph.nodes})
    return biased_pagerank(graph, bias, alpha, tol, max_iter)


def softplus(x: float) -> float:
    """ln(1 + e^x), computed without overflow."""
    return max(x, 0.0) + math.log1p(math.exp(-abs(x)))


def sentence_salience(doc: Document, word_score: dict[str, float],
                      use_softplus: bool = True) -> dict[int, float]:
    """Per-sentence salience: sum of (softplus-adjusted) word scores
    over kept token occurrences. Sentences with no kept tokens get 0."""
    transform = softplus if use_softplus else (lambda x: x)
    salience: dict[int, float] = {}
    for sent in doc.sentences:
        salience[sent.index] = sum(
            transform(word_score[t.stem]) for t in sent.kept_tokens)
    return salience


def score_document(doc: Document, graph: WordGraph, bias: StructureBias,
                   alpha: float = 0.85, tol: float = 1e-6,
                   max_iter: int = 100,
                   use_softplus: bool = True) -> SalienceScores:
    """Ranking stage: power iteration plus sentence aggregation."""
    result = biased_pagerank(graph, bias, alpha, tol, max_iter)
    return SalienceScores(
        word_score=result.scores,
        sentence_salience=sentence_salience(doc, result.scores, use_softplus),
        iterations_used=result.iterations,
        residual=result.residual,
        converged=result.converged)
