"""Word-vector table: loading, cosine queries, out-of-vocabulary policy.

Vectors come from the plain text format (optional "count dim" header,
then one "token v1 ... vd" line each). Under the default "skip" OOV
policy an unresolvable token simply has no vector: it contributes no
semantic edges and is dropped from transport-distance bags.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from swr.corpus import Document

log = logging.getLogger(__name__)

OOV_SKIP = "skip"
OOV_ZERO = "zero"


class EmbeddingLoadError(ValueError):
    """Raised when the vector file cannot be parsed."""


@dataclass
class LoadReport:
    loaded: int = 0
    filtered: int = 0
    duplicates: int = 0
    zero_dropped: int = 0


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]
    oov_policy: str = OOV_SKIP
    report: LoadReport = field(default_factory=LoadReport)

    def lookup(self, token: str) -> np.ndarray | None:
        vec = self.vectors.get(token)
        if vec is None and self.oov_policy == OOV_ZERO:
            return np.zeros(self.dimension)
        return vec

    def __contains__(self, token: str) -> bool:
        return token in self.vectors


def load_embeddings(path: str | Path, vocab_filter: set[str] | None = None,
                    oov_policy: str = OOV_SKIP) -> EmbeddingTable:
    """Parse a text vector file into an EmbeddingTable.

    Only tokens in vocab_filter are retained when it is given. The
    dimension is inferred from the first data line; any later mismatch
    or unparsable float is a load error naming the offending line.
    Duplicate tokens keep the last occurrence; all-zero vectors are
    dropped so cosine queries never divide by zero.
    """
    path = Path(path)
    report = LoadReport()
    vectors: dict[str, np.ndarray] = {}
    dimension = 0
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and _all_ints(parts):
                continue  # header: count dim
            token, values = parts[0], parts[1:]
            if dimension == 0:
                dimension = len(values)
                if dimension == 0:
                    raise EmbeddingLoadError(
                        f"{path}:{lineno}: no vector components")
            elif len(values) != dimension:
                raise EmbeddingLoadError(
                    f"{path}:{lineno}: expected {dimension} components, "
                    f"got {len(values)}")
            if vocab_filter is not None and token not in vocab_filter:
                report.filtered += 1
                continue
            try:
                vec = np.array([float(v) for v in values])
            except ValueError as exc:
                raise EmbeddingLoadError(f"{path}:{lineno}: {exc}") from None
            if not vec.any():
                report.zero_dropped += 1
                continue
            if token in vectors:
                report.duplicates += 1
            vectors[token] = vec
    report.loaded = len(vectors)
    log.info(
        "embedding load %s: loaded=%d filtered=%d duplicates=%d "
        "zero_dropped=%d dim=%d",
        path.name, report.loaded, report.filtered, report.duplicates,
        report.zero_dropped, dimension)
    return EmbeddingTable(dimension=dimension, vectors=vectors,
                          oov_policy=oov_policy, report=report)


def _all_ints(parts: list[str]) -> bool:
    try:
        [int(p) for p in parts]
    except ValueError:
        return False
    return True


def cosine(a: str, b: str, table: EmbeddingTable) -> float | None:
    """Cosine similarity of two tokens, or None when either is
    unresolvable (including zero-norm vectors under the zero policy)."""
    va, vb = table.lookup(a), table.lookup(b)
    if va is None or vb is None:
        return None
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0.0 or nb == 0.0:
        return None
    return float(np.dot(va, vb) / (na * nb))


def stem_vectors(doc: Document, table: EmbeddingTable) -> dict[str, np.ndarray]:
    """Map each kept stem to the vector of its most frequent kept
    surface form in the document (ties: first occurrence wins). Stems
    whose chosen surface is out of vocabulary are absent."""
    counts: dict[str, Counter] = {}
    first_seen: dict[tuple[str, str], int] = {}
    order = 0
    for sent in doc.sentences:
        for tok in sent.kept_tokens:
            counts.setdefault(tok.stem, Counter())[tok.surface] += 1
            first_seen.setdefault((tok.stem, tok.surface), order)
            order += 1
    index: dict[str, np.ndarray] = {}
    for stem, surfaces in counts.items():
        best = min(surfaces, key=lambda s: (-surfaces[s], first_seen[(stem, s)]))
        vec = table.lookup(best)
        if vec is not None and vec.any():
            index[stem] = vec
    return index
