"""Word graph with co-occurrence and semantic-similarity edge channels.

Both channels are max-normalized to [0, 1] independently and then
summed into the combined edge weight. Co-occurrence windows never
cross sentence boundaries; semantic edges connect stem pairs whose
vectors' cosine similarity strictly exceeds the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from swr.corpus import Document

Edge = tuple[str, str]


class GraphConstructionError(ValueError):
    """Raised when a document yields no edges in either channel."""


@dataclass
class WordGraph:
    nodes: list[str]
    cooc: dict[Edge, float]
    sem: dict[Edge, float]
    combined: dict[Edge, float]
    node_sentences: dict[str, set[int]] = field(default_factory=dict)

    def neighbors(self) -> dict[str, list[tuple[str, float]]]:
        """Adjacency lists over combined weights."""
        adj: dict[str, list[tuple[str, float]]] = {n: [] for n in self.nodes}
        for (u, v), w in self.combined.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj


def _edge(u: str, v: str) -> Edge:
    return (u, v) if u < v else (v, u)


def build_cooccurrence(doc: Document, window: int = 2) -> dict[Edge, int]:
    """Count unordered kept-stem pairs within `window` successive kept
    tokens, one count per co-occurring pair instance. Windows stay
    inside sentences."""
    if window < 2:
        raise ValueError("co-occurrence window must be >= 2")
    counts: dict[Edge, int] = {}
    for sent in doc.sentences:
        stems = [t.stem for t in sent.kept_tokens]
        for i, u in enumerate(stems):
            for j in range(i + 1, min(i + window, len(stems))):
                v = stems[j]
                if u == v:
                    continue
                key = _edge(u, v)
                counts[key] = counts.get(key, 0) + 1
    return counts


def build_semantic(nodes: list[str], vector_index: dict[str, np.ndarray],
                   threshold: float) -> dict[Edge, float]:
    """Semantic edges: cosine similarity for node pairs whose cosine
    strictly exceeds the threshold. Nodes without vectors contribute
    nothing."""
    resolvable = [n for n in nodes if n in vector_index]
    if len(resolvable) < 2:
        return {}
    matrix = np.stack([vector_index[n] for n in resolvable])
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    unit = matrix / norms
    sims = unit @ unit.T
    weights: dict[Edge, float] = {}
    for i in range(len(resolvable)):
        row = sims[i]
        for j in range(i + 1, len(resolvable)):
            if row[j] > threshold:
                weights[_edge(resolvable[i], resolvable[j])] = float(row[j])
    return weights


def normalize_and_combine(cooc: dict[Edge, int | float],
                          sem: dict[Edge, float],
                          nodes: list[str],
                          node_sentences: dict[str, set[int]]) -> WordGraph:
    """Max-normalize each channel to [0, 1] and sum into the combined
    weights. Raises GraphConstructionError when both channels are
    empty."""
    if not cooc and not sem:
        raise GraphConstructionError("no edges in either channel")
    cooc_norm = _max_normalize(cooc)
    sem_norm = _max_normalize(sem)
    combined: dict[Edge, float] = {}
    for key, w in cooc_norm.items():
        combined[key] = combined.get(key, 0.0) + w
    for key, w in sem_norm.items():
        combined[key] = combined.get(key, 0.0) + w
    return WordGraph(nodes=list(nodes), cooc=cooc_norm, sem=sem_norm,
                     combined=combined, node_sentences=node_sentences)


def _max_normalize(weights: dict[Edge, int | float]) -> dict[Edge, float]:
    if not weights:
        return {}
    top = max(weights.values())
    return {k: float(v) / top for k, v in weights.items()}


def node_sentence_index(doc: Document) -> dict[str, set[int]]:
    """Stem -> set of 1-based sentence indices containing it."""
    index: dict[str, set[int]] = {}
    for sent in doc.sentences:
        for tok in sent.kept_tokens:
            index.setdefault(tok.stem, set()).add(sent.index)
    return index


def build_word_graph(doc: Document, vector_index: dict[str, np.ndarray],
                     window: int = 2, threshold: float = 0.8,
                     semantic: bool = True) -> WordGraph:
    """Full graph construction for a document; `semantic=False` drops
    the semantic channel (the combined graph then equals the
    normalized co-occurrence channel)."""
    nodes = doc.kept_stems()
    cooc = build_cooccurrence(doc, window)
    sem = build_semantic(nodes, vector_index, threshold) if semantic else {}
    return normalize_and_combine(cooc, sem, nodes, node_sentence_index(doc))


def dump_edges(graph: WordGraph, path: str | Path) -> None:
    """Write the edge list as `u<TAB>v<TAB>w_c<TAB>w_s<TAB>w`, sorted."""
    lines = []
    for u, v in sorted(set(graph.combined)):
        lines.append("%s\t%s\t%.10g\t%.10g\t%.10g" % (
            u, v,
            graph.cooc.get((u, v), 0.0),
            graph.sem.get((u, v), 0.0),
            graph.combined[(u, v)]))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""),
                          encoding="utf-8")
