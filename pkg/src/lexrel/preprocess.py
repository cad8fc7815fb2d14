"""Text filters applied before n-gram extraction.

Order of the full chain: person-name removal, citation/clause scrubbing
(leaving ``[CITE]`` placeholders), tokenization into placeholder-bounded
segments, and optional Porter stemming.  All operations are pure
functions on immutable inputs and safe to run per-document in parallel.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Optional, Sequence

from . import porter
from .corpus import Document
from .errors import OverlappingSpansError, SpanOutOfBoundsError

CITATION_PLACEHOLDER = "[CITE]"


class EntitySource(Enum):
    RULE_BASED = "rule_based"
    SIDECAR = "sidecar"
    OFF = "off"


@dataclass(frozen=True)
class PreprocessConfig:
    filter_person_names: bool = True
    filter_citations: bool = True
    stem_and_lemmatize: bool = False
    entity_source: EntitySource = EntitySource.RULE_BASED


@dataclass(frozen=True)
class TokenStream:
    """Filtered, lowercased tokens; a new segment starts after every removed citation."""

    segments: tuple[tuple[str, ...], ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return sum(len(seg) for seg in self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)


def preprocess_fingerprint(config: PreprocessConfig) -> str:
    """16-hex digest of the config; prefixes the keyword-list fingerprint."""
    payload = asdict(config)
    payload["entity_source"] = config.entity_source.value
    blob = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Person-name filtering
# ---------------------------------------------------------------------------

# Heuristic: a capitalized token run of length 1-3 immediately following a
# role cue, or flanking a case-style "v." separator, is a person name.
_ROLE_CUES = (
    "Plaintiff", "Defendant", "Petitioner", "Respondent",
    "Appellant", "Appellee", "Judge", "Justice",
    "Mr", "Ms", "Mrs", "Dr",
)
_CAP_TOKEN = r"[A-Z][\w'.\-]*"
_NAME_RUN = rf"{_CAP_TOKEN}(?:[ \t]+{_CAP_TOKEN}){{0,2}}"
_CUE_RE = re.compile(
    rf"\b(?P<cue>(?:{'|'.join(_ROLE_CUES)})s?\.?)[ \t]+(?P<name>{_NAME_RUN})"
)
_VERSUS_RE = re.compile(
    rf"(?P<left>{_NAME_RUN})[ \t]+(?P<v>vs?\.?)[ \t]+(?P<right>{_NAME_RUN})"
)


def _collapse_whitespace(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _delete_byte_spans(text: str, spans: Sequence[tuple[int, int]]) -> str:
    data = text.encode("utf-8")
    prev_end = 0
    kept = []
    for start, end in spans:
        if start < prev_end:
            raise OverlappingSpansError(f"span ({start}, {end}) overlaps or is unsorted")
        if start >= end or end > len(data):
            raise SpanOutOfBoundsError(f"span ({start}, {end}) out of bounds for {len(data)} bytes")
        kept.append(data[prev_end:start])
        prev_end = end
    kept.append(data[prev_end:])
    try:
        return b"".join(kept).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SpanOutOfBoundsError("span does not align to a character boundary") from exc


def filter_entities(
    text: str,
    sidecar_spans: Optional[Sequence[tuple[int, int]]] = None,
    config: PreprocessConfig = PreprocessConfig(),
) -> str:
    """Remove person names; locations and organizations are left verbatim."""
    if not config.filter_person_names or config.entity_source is EntitySource.OFF:
        return text
    if config.entity_source is EntitySource.SIDECAR:
        if not sidecar_spans:
            return text
        return _collapse_whitespace(_delete_byte_spans(text, sidecar_spans))
    filtered = _CUE_RE.sub(lambda m: m.group("cue"), text)
    filtered = _VERSUS_RE.sub(lambda m: m.group("v"), filtered)
    return _collapse_whitespace(filtered)


# ---------------------------------------------------------------------------
# Citation / clause filtering
# ---------------------------------------------------------------------------

# Fixed pattern set, case-sensitive on reporter abbreviations: the dominant
# US federal citation forms plus bare section clauses.  Misses are silent;
# downstream scoring is frequency-based and tolerates residue.
_REPORTERS = (
    "U.S.", "S. Ct.", "S.Ct.", "L. Ed. 2d", "L.Ed.2d", "L. Ed.", "L.Ed.",
    "F. Supp. 3d", "F. Supp. 2d", "F. Supp.", "F.Supp.3d", "F.Supp.2d", "F.Supp.",
    "F.4th", "F.3d", "F.2d", "F.",
    "N.E.3d", "N.E.2d", "N.W.2d", "S.E.2d", "S.W.3d", "S.W.2d",
    "A.3d", "A.2d", "P.3d", "P.2d", "So. 3d", "So. 2d", "So.3d", "So.2d",
    "Cal. Rptr. 3d", "Cal. Rptr. 2d", "Cal. Rptr.",
)
_REPORTER_ALT = "(?:" + "|".join(re.escape(r) for r in _REPORTERS) + ")"
_YEAR = r"(?:\s*\(\d{4}\))?"
_SECTION_TAIL = r"\d+[\w.()\-]*"

_CITATION_RE = re.compile(
    "|".join(
        (
            # statute refs: 42 U.S.C. § 1983(a), 29 C.F.R. § 1604.11
            rf"\b\d+\s+U\.\s?S\.\s?C\.(?:A\.)?\s*§+\s*{_SECTION_TAIL}{_YEAR}",
            rf"\b\d+\s+C\.\s?F\.\s?R\.\s*§+\s*{_SECTION_TAIL}{_YEAR}",
            # constitutional refs: U.S. Const. art. III, § 2; amend. XIV
            rf"U\.S\.\s+Const\.,?\s+(?:art|amend|pmbl)\.?\s*[IVXLCDM\d]+(?:,?\s*§+\s*{_SECTION_TAIL})?(?:,?\s*cl\.\s*\d+)?",
            # volume-reporter-page with optional trailing year: 410 U.S. 113 (1973)
            rf"\b\d{{1,4}}\s+{_REPORTER_ALT}\s+\d{{1,5}}{_YEAR}",
            # bare section clauses: § 1985, §§ 78j(b)
            rf"§+\s*{_SECTION_TAIL}",
        )
    )
)
_ADJACENT_PLACEHOLDERS_RE = re.compile(
    r"\[CITE\](?:[ \t,;]*\[CITE\])+"
)


def filter_citations(text: str) -> str:
    """Replace citation/clause patterns with ``[CITE]``, collapsing adjacent hits."""
    scrubbed = _CITATION_RE.sub(CITATION_PLACEHOLDER, text)
    return _ADJACENT_PLACEHOLDERS_RE.sub(CITATION_PLACEHOLDER, scrubbed)


# ---------------------------------------------------------------------------
# Tokenization and stemming
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> TokenStream:
    """Lowercase and split on non-alphanumeric runs; placeholders bound segments."""
    segments = []
    for chunk in text.split(CITATION_PLACEHOLDER):
        tokens = _TOKEN_RE.findall(chunk.lower())
        if tokens:
            segments.append(tuple(tokens))
    return TokenStream(segments=tuple(segments))


def stem_tokens(stream: TokenStream) -> TokenStream:
    """Porter-stem every token; segment structure is preserved."""
    return TokenStream(
        segments=tuple(tuple(porter.stem(tok) for tok in seg) for seg in stream.segments)
    )


def preprocess_document(doc: Document, config: PreprocessConfig = PreprocessConfig()) -> TokenStream:
    """Run the full filter chain on a document and return its token stream."""
    text = filter_entities(doc.text, doc.entities, config)
    if config.filter_citations:
        text = filter_citations(text)
    stream = tokenize(text)
    if config.stem_and_lemmatize:
        stream = stem_tokens(stream)
    return stream
