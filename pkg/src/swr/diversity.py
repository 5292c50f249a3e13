"""Subtopic clustering of sentences.

Sentences become normalized bags of stem vectors; pairwise distances
use the relaxed transport lower bound (each unit of mass flows to its
nearest counterpart, reported as the max of the two one-sided costs),
an RBF kernel turns distances into affinities, and sentences are
grouped by normalized spectral clustering with seeded k-means.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sklearn.cluster import KMeans

from swr import _kernels
from swr.corpus import Document

log = logging.getLogger(__name__)


@dataclass
class SentenceBag:
    index: int  # 1-based sentence index
    stems: list[str]
    vectors: np.ndarray  # (k, dim)
    mass: np.ndarray  # (k,), sums to 1 when non-empty

    @property
    def empty(self) -> bool:
        return len(self.stems) == 0


@dataclass
class ClusterAssignment:
    c_num: int
    label: dict[int, int]  # 1-based sentence index -> cluster id
    degenerate: list[int] | None = None

    def sizes(self) -> list[int]:
        counts = Counter(self.label.values())
        return [counts.get(c, 0) for c in range(max(counts) + 1)] if counts else []


def sentence_bags(doc: Document,
                  vector_index: dict[str, np.ndarray]) -> list[SentenceBag]:
    """One bag per sentence: distinct resolvable stems with mass
    proportional to kept-token frequency. Unresolvable stems are
    dropped before normalization; a sentence may come out empty."""
    dim = len(next(iter(vector_index.values()))) if vector_index else 0
    bags = []
    for sent in doc.sentences:
        counts: Counter[str] = Counter(
            t.stem for t in sent.kept_tokens if t.stem in vector_index)
        stems = list(counts)
        if stems:
            vectors = np.stack([vector_index[s] for s in stems])
            mass = np.array([counts[s] for s in stems], dtype=np.float64)
            mass /= mass.sum()
        else:
            vectors = np.zeros((0, dim))
            mass = np.zeros(0)
        bags.append(SentenceBag(sent.index, stems, vectors, mass))
    return bags


def relaxed_wmd(a: SentenceBag, b: SentenceBag) -> float:
    """Relaxed transport distance between two non-empty bags: the max
    of the two one-sided nearest-neighbor flow costs. A lower bound on
    the exact transport cost."""
    if a.empty or b.empty:
        raise ValueError("relaxed_wmd requires non-empty bags")
    vectors = np.concatenate([a.vectors, b.vectors])
    offsets = np.array([0, len(a.stems), len(a.stems) + len(b.stems)],
                       dtype=np.int64)
    masses = np.concatenate([a.mass, b.mass])
    return float(_kernels.rwmd_pairwise(vectors, offsets, masses)[0, 1])


def rwmd_matrix(bags: list[SentenceBag]) -> tuple[np.ndarray, list[int]]:
    """Full pairwise distance matrix over sentence bags.

    Empty (all-OOV) bags are degenerate: every pair touching one gets
    the maximum observed distance plus one, a "far" sentinel keeping
    them from absorbing real sentences. The diagonal stays 0. Returns
    (matrix, degenerate 1-based sentence indices).
    """
    n = len(bags)
    live = [i for i, bag in enumerate(bags) if not bag.empty]
    degenerate = [bags[i].index for i in range(n) if bags[i].empty]
    dist = np.zeros((n, n))
    if len(live) >= 2:
        vectors = np.concatenate([bags[i].vectors for i in live])
        offsets = np.zeros(len(live) + 1, dtype=np.int64)
        for k, i in enumerate(live):
            offsets[k + 1] = offsets[k] + len(bags[i].stems)
        masses = np.concatenate([bags[i].mass for i in live])
        sub = _kernels.rwmd_pairwise(vectors, offsets, masses)
        for k, i in enumerate(live):
            for l, j in enumerate(live):
                dist[i, j] = sub[k, l]
    if degenerate:
        sentinel = float(dist.max()) + 1.0
        for i in range(n):
            if bags[i].empty:
                dist[i, :] = sentinel
                dist[:, i] = sentinel
                dist[i, i] = 0.0
        log.warning("%d sentence(s) have no resolvable stems; using "
                    "far-sentinel distances", len(degenerate))
    return dist, degenerate


def affinity(dist: float, gamma: float = 1.0) -> float:
    """RBF kernel exp(-gamma * dist^2)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return float(np.exp(-gamma * dist * dist))


def affinity_matrix(dist: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    return np.exp(-gamma * dist * dist)


def cluster_count(n: int) -> int:
    """Number of subtopic clusters: floor(0.3 n) capped at 8, floored
    at 1 for very short documents."""
    if n < 1:
        raise ValueError("sentence count must be >= 1")
    return max(1, min(int(0.3 * n), 8))


def spectral_cluster(affinities: np.ndarray, c_num: int,
                     seed: int = 0) -> ClusterAssignment:
    """Normalized spectral clustering of a symmetric affinity matrix.

    Pipeline: symmetric normalized Laplacian, eigenvectors of the
    c_num smallest eigenvalues, row-normalized spectral embedding,
    seeded k-means++ (one initialization, 300 iteration cap). Rows
    with zero off-diagonal affinity are split off into their own
    clusters; c_num >= n degenerates to singletons. Labels are keyed
    by 0-based row here; pipeline callers rekey to sentence indices.
    """
    n = affinities.shape[0]
    if affinities.shape != (n, n):
        raise ValueError("affinity matrix must be square")
    if n == 1:
        return ClusterAssignment(c_num=1, label={0: 0})
    if c_num >= n:
        return ClusterAssignment(c_num=c_num, label={i: i for i in range(n)})

    off_degree = affinities.sum(axis=1) - np.diag(affinities)
    isolated = np.flatnonzero(off_degree == 0.0)
    active = np.flatnonzero(off_degree > 0.0)
    labels: dict[int, int] = {}

    k_active = max(1, c_num - len(isolated))
    if len(active) == 0:
        k_active = 0
    elif len(active) <= k_active:
        for c, i in enumerate(active):
            labels[int(i)] = c
        k_active = len(active)
    else:
        sub = affinities[np.ix_(active, active)]
        degree = sub.sum(axis=1)
        inv_sqrt = 1.0 / np.sqrt(degree)
        laplacian = np.eye(len(active)) - inv_sqrt[:, None] * sub * inv_sqrt[None, :]
        _, eigvecs = np.linalg.eigh(laplacian)
        embedding = eigvecs[:, :k_active]
        norms = np.linalg.norm(embedding, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        embedding = embedding / norms
        km = KMeans(n_clusters=k_active, init="k-means++", n_init=1,
                    max_iter=300, random_state=seed)
        for i, lab in zip(active, km.fit_predict(embedding)):
            labels[int(i)] = int(lab)

    next_label = k_active
    for i in isolated:
        labels[int(i)] = min(next_label, c_num - 1)
        next_label += 1
    return ClusterAssignment(c_num=c_num, label=labels)


def cluster_sentences(doc: Document, vector_index: dict[str, np.ndarray],
                      gamma: float = 1.0, seed: int = 0,
                      c_num: int | None = None,
                      single_cluster: bool = False
                      ) -> tuple[ClusterAssignment, list[int]]:
    """Full diversity stage for a document. `single_cluster=True`
    bypasses clustering (every sentence in cluster 0). Returns the
    assignment keyed by 1-based sentence index plus the degenerate
    sentence list."""
    n = len(doc.sentences)
    if c_num is None:
        c_num = cluster_count(n)
    if single_cluster:
        return (ClusterAssignment(
            c_num=1, label={s.index: 0 for s in doc.sentences},
            degenerate=[]), [])
    bags = sentence_bags(doc, vector_index)
    dist, degenerate = rwmd_matrix(bags)
    assignment = spectral_cluster(affinity_matrix(dist, gamma), c_num, seed)
    rekeyed = {doc.sentences[i].index: lab
               for i, lab in assignment.label.items()}
    return (ClusterAssignment(c_num=assignment.c_num, label=rekeyed,
                              degenerate=degenerate), degenerate)
