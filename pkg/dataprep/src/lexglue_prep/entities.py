"""Person-name span extraction for the sidecar ``entities`` key.

Spans are written as UTF-8 byte offsets into the document text, which is
what the downstream corpus schema expects.  The NER engine is a callable
``text -> [(start_char, end_char), ...]``; the default loads a spaCy
model lazily so the package works without it unless spans are requested.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from .errors import EntityModelUnavailableError

NerEngine = Callable[[str], Sequence[tuple[int, int]]]

_NLP = None


def _spacy_person_spans(text: str) -> list[tuple[int, int]]:
    global _NLP
    if _NLP is None:
        try:
            import spacy
        except ImportError as exc:
            raise EntityModelUnavailableError(
                "--with-entities needs spacy and its small English model "
                "(pip install spacy && python -m spacy download en_core_web_sm)"
            ) from exc
        try:
            _NLP = spacy.load("en_core_web_sm", disable=["parser", "lemmatizer"])
        except OSError as exc:
            raise EntityModelUnavailableError(
                "spaCy model en_core_web_sm is not installed "
                "(python -m spacy download en_core_web_sm)"
            ) from exc
    doc = _NLP(text)
    return [(ent.start_char, ent.end_char) for ent in doc.ents if ent.label_ == "PERSON"]


def char_to_byte_spans(text: str, spans: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Convert character spans to byte offsets into the UTF-8 encoding."""
    prefix = [0] * (len(text) + 1)
    pos = 0
    for i, ch in enumerate(text):
        prefix[i] = pos
        pos += len(ch.encode("utf-8"))
    prefix[len(text)] = pos
    return [[prefix[start], prefix[end]] for start, end in spans]


def person_spans_utf8(text: str, ner: Optional[NerEngine] = None) -> list[list[int]]:
    """Sorted, non-overlapping person-name spans as byte offsets."""
    engine = ner or _spacy_person_spans
    char_spans = sorted(engine(text))
    merged: list[tuple[int, int]] = []
    for start, end in char_spans:
        if merged and start < merged[-1][1]:
            merged[-1] = (merged[-1][0], max(end, merged[-1][1]))
        else:
            merged.append((start, end))
    return char_to_byte_spans(text, merged)
