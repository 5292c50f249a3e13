"""Multi-reference recall for unigram, bigram, and skip-bigram units.

The evaluation tokenizer is deliberately simpler than the pipeline's:
split on non-alphanumerics, lowercase, optional stemming (on by
default). Per reference, recall is the clipped count of matching units
over the reference's unit count; multi-reference scores aggregate by
average (default) or max.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass

from swr import porter

log = logging.getLogger(__name__)

AGGREGATIONS = ("average", "max")
_TOKEN = re.compile(r"[a-z0-9]+")


@dataclass
class RougeReport:
    r1: float
    r2: float
    rsu4: float
    per_reference: list[tuple[float, float, float]]
    aggregation: str = "average"


def eval_tokenize(text: str, stemming: bool = True) -> list[str]:
    tokens = _TOKEN.findall(text.lower())
    if stemming:
        tokens = [porter.stem(t) for t in tokens]
    return tokens


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _su4_units(tokens: list[str]) -> Counter:
    """Unigrams plus ordered skip-bigrams with at most four intervening
    tokens (positions within distance 5)."""
    units: Counter = Counter()
    for tok in tokens:
        units[(tok,)] += 1
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + 6, len(tokens))):
            units[(tokens[i], tokens[j])] += 1
    return units


def _clipped_recall(candidate: Counter, reference: Counter) -> float:
    total = sum(reference.values())
    if total == 0:
        return 0.0
    matched = sum(min(count, candidate.get(unit, 0))
                  for unit, count in reference.items())
    return matched / total


def _aggregate(values: list[float], aggregation: str) -> float:
    if aggregation not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {aggregation!r}")
    if not values:
        return 0.0
    return max(values) if aggregation == "max" else sum(values) / len(values)


def rouge_n(candidate: list[str], references: list[list[str]], n: int,
            aggregation: str = "average") -> float:
    """n-gram recall of a candidate token list against references."""
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    cand = _ngrams(candidate, n)
    scores = []
    for ref in references:
        if len(ref) < n:
            log.warning("reference with %d tokens is shorter than n=%d; "
                        "recall 0", len(ref), n)
            scores.append(0.0)
        else:
            scores.append(_clipped_recall(cand, _ngrams(ref, n)))
    return _aggregate(scores, aggregation)


def rouge_su4(candidate: list[str], references: list[list[str]],
              aggregation: str = "average") -> float:
    """Skip-bigram (gap <= 4) plus unigram recall."""
    cand = _su4_units(candidate)
    scores = []
    for ref in references:
        if not ref:
            log.warning("empty reference; recall 0")
            scores.append(0.0)
        else:
            scores.append(_clipped_recall(cand, _su4_units(ref)))
    return _aggregate(scores, aggregation)


def evaluate(candidate_text: str, reference_texts: list[str],
             stemming: bool = True,
             aggregation: str = "average") -> RougeReport:
    """Tokenize and score a summary against reference summaries."""
    cand = eval_tokenize(candidate_text, stemming)
    refs = [eval_tokenize(r, stemming) for r in reference_texts]
    per_reference = [
        (rouge_n(cand, [ref], 1), rouge_n(cand, [ref], 2),
         rouge_su4(cand, [ref]))
        for ref in refs
    ]
    return RougeReport(
        r1=_aggregate([p[0] for p in per_reference], aggregation),
        r2=_aggregate([p[1] for p in per_reference], aggregation),
        rsu4=_aggregate([p[2] for p in per_reference], aggregation),
        per_reference=per_reference,
        aggregation=aggregation)
