"""Document ingestion: sentence segmentation, token filtering, stemming.

Raw text becomes a Document of Sentences holding both the original
surface strings (for summary emission and length accounting) and the
filtered, stemmed tokens that feed the word graph. The splitter is
rule-based and deterministic; filtering is stop-word + alphabetic +
minimum length, with an optional tag-lexicon part-of-speech gate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from swr import porter


class CorpusError(ValueError):
    """Raised for documents the pipeline cannot accept."""


@dataclass
class Token:
    surface: str
    stem: str
    sentence_index: int
    position_in_doc: int
    kept: bool


@dataclass
class Sentence:
    index: int  # 1-based position in the document
    raw_text: str
    tokens: list[Token]
    char_length: int
    word_count: int

    @property
    def kept_tokens(self) -> list[Token]:
        return [t for t in self.tokens if t.kept]


@dataclass
class Document:
    sentences: list[Sentence]
    source_id: str = "-"
    language: str = "en"

    def kept_stems(self) -> list[str]:
        """Distinct kept stems in first-occurrence order."""
        seen: dict[str, None] = {}
        for sent in self.sentences:
            for tok in sent.kept_tokens:
                seen.setdefault(tok.stem, None)
        return list(seen)


@dataclass
class FilterConfig:
    stopwords: frozenset[str] = frozenset()
    min_token_len: int = 2
    tag_lexicon: dict[str, str] | None = None
    language: str = "en"


# Sentence terminators followed by optional closing quotes/brackets.
_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")
_WORD = re.compile(r"\w+")
_PREV_TOKEN = re.compile(r"([\w.]+)$")

# Common abbreviations that do not terminate a sentence. Single
# initials are intentionally absent: a lone capital plus period is
# treated as a boundary.
_ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof rev fr sr jr st mt no vs etc e.g i.e cf al
    gen rep sen gov lt col capt maj sgt cpl pvt adm cmdr hon
    inc ltd co corp dept univ assn bros approx est min max
    jan feb mar apr jun jul aug sep sept oct nov dec
    u.s u.k u.n a.m p.m b.c a.d ph.d m.d b.a m.a d.c
    """.split()
)


def segment_sentences(raw: str) -> list[str]:
    """Split raw text into sentences.

    Boundaries sit after terminal punctuation (with an abbreviation
    guard) and at blank-line paragraph breaks; a trailing fragment
    without terminal punctuation becomes a final sentence. Joining the
    result recovers the input up to whitespace normalization.
    """
    sentences: list[str] = []
    for block in re.split(r"\n\s*\n", raw):
        if not block.strip():
            continue
        start = 0
        for match in _BOUNDARY.finditer(block):
            end = match.end()
            if end < len(block) and not _starts_new_sentence(block, end):
                continue
            prev = _PREV_TOKEN.search(block, start, match.start())
            if prev and prev.group(1).rstrip(".").lower() in _ABBREVIATIONS:
                continue
            piece = block[start:end].strip()
            if piece:
                sentences.append(piece)
            start = end
        tail = block[start:].strip()
        if tail:
            sentences.append(tail)
    return sentences


def _starts_new_sentence(text: str, pos: int) -> bool:
    for ch in text[pos:]:
        if ch.isspace():
            continue
        return ch.isupper() or ch.isdigit() or ch in "\"'“‘(["
    return True


def tokenize_filter(sentence_text: str, config: FilterConfig) -> list[Token]:
    """Tokenize one sentence, marking which tokens pass the filters.

    A token is kept iff it is alphabetic, at least min_token_len long,
    not a stop word, and (when a tag lexicon is supplied) tagged as a
    noun or adjective. Kept tokens are stemmed; position_in_doc is
    assigned later by build_document.
    """
    tokens: list[Token] = []
    for match in _WORD.finditer(sentence_text):
        surface = match.group().lower()
        kept = (
            surface.isalpha()
            and len(surface) >= config.min_token_len
            and surface not in config.stopwords
            and _tag_allows(surface, config.tag_lexicon)
        )
        stem = _stem_for(surface, config.language) if kept else ""
        tokens.append(Token(surface=surface, stem=stem, sentence_index=0,
                            position_in_doc=-1, kept=kept))
    return tokens


def _tag_allows(surface: str, lexicon: dict[str, str] | None) -> bool:
    if lexicon is None:
        return True
    tag = lexicon.get(surface, "").upper()
    return tag.startswith(("N", "J", "ADJ"))


def _stem_for(surface: str, language: str) -> str:
    return porter.stem(surface) if language == "en" else surface


def build_document(raw: str, source_id: str = "-",
                   config: FilterConfig | None = None) -> Document:
    """Ingest raw text into a Document. Raises CorpusError when no
    sentence survives segmentation."""
    config = config or FilterConfig(stopwords=default_stopwords())
    pieces = segment_sentences(raw)
    if not pieces:
        raise CorpusError(f"document {source_id!r} contains no sentences")
    sentences: list[Sentence] = []
    position = 0
    for i, text in enumerate(pieces, start=1):
        tokens = tokenize_filter(text, config)
        for tok in tokens:
            tok.sentence_index = i - 1
            if tok.kept:
                tok.position_in_doc = position
                position += 1
        sentences.append(Sentence(
            index=i,
            raw_text=text,
            tokens=tokens,
            char_length=len(text),
            word_count=len(_WORD.findall(text)),
        ))
    return Document(sentences=sentences, source_id=source_id,
                    language=config.language)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stop-word file: one token per line, '#' starts a comment."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            words.add(entry)
    return frozenset(words)


def load_tag_lexicon(path: str | Path) -> dict[str, str]:
    """Read a word<TAB>tag lexicon; later entries win on duplicates."""
    lexicon: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) >= 2:
            lexicon[parts[0].strip().lower()] = parts[1].strip()
    return lexicon


def default_stopwords() -> frozenset[str]:
    """The bundled English stop-word list."""
    data = resources.files("swr").joinpath("data/stopwords_en.txt")
    words = set()
    for line in data.read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip().lower()
        if entry:
            words.add(entry)
    return frozenset(words)
