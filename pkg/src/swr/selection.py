"""Greedy budgeted sentence selection over subtopic clusters.

Each cluster keeps its sentences sorted by salience per character;
sweeps visit clusters in order of their current best candidate, taking
the cluster's next unselected sentence when it fits the remaining
budget. Selection stops when a full sweep adds nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from swr.corpus import Document, Sentence
from swr.diversity import ClusterAssignment

BUDGET_KINDS = ("words_abs", "sentences_abs", "words_pct", "sentences_pct",
                "chars_abs")

_BUDGET_RE = re.compile(r"^(\d+(?:\.\d+)?)(%?)([wsc])$")


@dataclass(frozen=True)
class SummaryBudget:
    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in BUDGET_KINDS:
            raise ValueError(f"unknown budget kind {self.kind!r}")
        if self.kind.endswith("_pct"):
            if not 0 < self.value <= 100:
                raise ValueError("percentage budgets must be in (0, 100]")
        elif self.value < 1:
            raise ValueError("absolute budgets must be >= 1")

    def render(self) -> str:
        value = ("%g" % self.value)
        if self.kind == "words_abs":
            return f"{value}w"
        if self.kind == "sentences_abs":
            return f"{value}s"
        if self.kind == "words_pct":
            return f"{value}%w"
        if self.kind == "sentences_pct":
            return f"{value}%s"
        return f"{value}c"


def parse_budget(spec: str) -> SummaryBudget:
    """Parse budget flags: 100w, 5s, 800c, 30%w, 30%s."""
    match = _BUDGET_RE.match(spec.strip().lower())
    if not match:
        raise ValueError(
            f"bad budget {spec!r}; expected forms like 100w, 3s, 800c, "
            "30%w, 30%s")
    value, pct, unit = float(match.group(1)), match.group(2), match.group(3)
    if pct:
        if unit == "c":
            raise ValueError("percentage budgets support words/sentences only")
        kind = "words_pct" if unit == "w" else "sentences_pct"
    else:
        kind = {"w": "words_abs", "s": "sentences_abs", "c": "chars_abs"}[unit]
    return SummaryBudget(kind, value)


@dataclass
class SummaryResult:
    selected: list[int]  # 1-based sentence indices, ascending
    total_words: int
    total_sentences: int
    total_chars: int
    per_sentence_unit_score: dict[int, float]
    over_budget: bool = False
    budget_unit: str = "words"
    budget_limit: int = 0

    def text(self, doc: Document, separator: str = " ") -> str:
        picked = {s.index: s.raw_text for s in doc.sentences}
        return separator.join(picked[i] for i in self.selected)


def unit_scores(salience: dict[int, float], doc: Document) -> dict[int, float]:
    """Salience per character of raw sentence text."""
    return {s.index: salience[s.index] / s.char_length for s in doc.sentences}


def resolve_budget(budget: SummaryBudget, doc: Document) -> tuple[str, int]:
    """Reduce a budget to (unit, absolute limit) for a document.
    Percentages floor against the document total, minimum 1."""
    total_words = sum(s.word_count for s in doc.sentences)
    total_sentences = len(doc.sentences)
    if budget.kind == "words_abs":
        return "words", int(budget.value)
    if budget.kind == "sentences_abs":
        return "sentences", int(budget.value)
    if budget.kind == "chars_abs":
        return "chars", int(budget.value)
    if budget.kind == "words_pct":
        return "words", max(1, int(budget.value / 100.0 * total_words))
    return "sentences", max(1, int(budget.value / 100.0 * total_sentences))


def _size(sentence: Sentence, unit: str) -> int:
    if unit == "words":
        return sentence.word_count
    if unit == "sentences":
        return 1
    return sentence.char_length


def round_robin_select(unit: dict[int, float], clusters: ClusterAssignment,
                       budget: SummaryBudget, doc: Document) -> SummaryResult:
    """Budgeted round-robin selection.

    Within each cluster sentences rank by unit score (ties: earlier
    sentence first). Each sweep orders clusters by their best
    unselected candidate and takes that candidate when it fits the
    remaining budget; a sweep that adds nothing ends selection. When
    not even the single best sentence fits, that sentence alone is
    returned flagged over_budget.
    """
    if not doc.sentences:
        raise ValueError("cannot summarize an empty document")
    unit_measure, limit = resolve_budget(budget, doc)
    by_sentence = {s.index: s for s in doc.sentences}

    queues: dict[int, list[int]] = {}
    for idx in sorted(unit, key=lambda i: (-unit[i], i)):
        queues.setdefault(clusters.label[idx], []).append(idx)

    selected: set[int] = set()
    remaining = limit
    while True:
        order = sorted(
            (cid for cid, q in queues.items() if any(i not in selected for i in q)),
            key=lambda cid: _cluster_key(queues[cid], selected, unit))
        took_any = False
        for cid in order:
            candidate = next(i for i in queues[cid] if i not in selected)
            size = _size(by_sentence[candidate], unit_measure)
            if size <= remaining:
                selected.add(candidate)
                remaining -= size
                took_any = True
        if not took_any:
            break

    over_budget = False
    if not selected:
        best = min(unit, key=lambda i: (-unit[i], i))
        selected = {best}
        over_budget = True

    ordered = sorted(selected)
    return SummaryResult(
        selected=ordered,
        total_words=sum(by_sentence[i].word_count for i in ordered),
        total_sentences=len(ordered),
        total_chars=sum(by_sentence[i].char_length for i in ordered),
        per_sentence_unit_score=dict(unit),
        over_budget=over_budget,
        budget_unit=unit_measure,
        budget_limit=limit)


def _cluster_key(queue: list[int], selected: set[int],
                 unit: dict[int, float]) -> tuple[float, int]:
    head = next(i for i in queue if i not in selected)
    return (-unit[head], head)


def select_by_order(order: list[int], budget: SummaryBudget,
                    doc: Document) -> SummaryResult:
    """Greedy fill along a fixed priority order, skipping sentences
    that do not fit. Used by the baseline selectors."""
    if not order:
        raise ValueError("cannot select from an empty priority order")
    unit_measure, limit = resolve_budget(budget, doc)
    by_sentence = {s.index: s for s in doc.sentences}
    remaining = limit
    selected = []
    for idx in order:
        size = _size(by_sentence[idx], unit_measure)
        if size <= remaining:
            selected.append(idx)
            remaining -= size
    over_budget = False
    if not selected:
        selected = [order[0]]
        over_budget = True
    ordered = sorted(selected)
    return SummaryResult(
        selected=ordered,
        total_words=sum(by_sentence[i].word_count for i in ordered),
        total_sentences=len(ordered),
        total_chars=sum(by_sentence[i].char_length for i in ordered),
        per_sentence_unit_score={},
        over_budget=over_budget,
        budget_unit=unit_measure,
        budget_limit=limit)
