"""Document/corpus data model and JSONL ingestion.

The canonical corpus format is JSONL: one object per line with required
keys ``id`` and ``text``, an optional integer ``label`` (1 = relevant,
0 = irrelevant) and an optional ``entities`` list of ``[start, end]``
byte-offset pairs marking person-name spans in ``text``.

Loading is single-threaded and order-preserving; a loaded corpus is
immutable and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import (
    DuplicateIdError,
    EmptyCorpusError,
    MalformedLineError,
    MissingLabelError,
)


class Label(Enum):
    IRRELEVANT = 0
    RELEVANT = 1

    @classmethod
    def from_int(cls, value: int) -> "Label":
        return cls(int(value))


@dataclass(frozen=True)
class Document:
    """A single document: unique id, raw text, optional relevance label."""

    id: str
    text: str
    label: Optional[Label] = None
    entities: Optional[tuple[tuple[int, int], ...]] = None


@dataclass(frozen=True)
class LabeledCorpus:
    """An ordered, fully labeled document collection with class counts."""

    documents: tuple[Document, ...]
    n_positive: int = field(default=0)
    n_negative: int = field(default=0)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @classmethod
    def from_documents(cls, documents: Sequence[Document]) -> "LabeledCorpus":
        docs = tuple(documents)
        n_pos = sum(1 for d in docs if d.label is Label.RELEVANT)
        n_neg = sum(1 for d in docs if d.label is Label.IRRELEVANT)
        return cls(documents=docs, n_positive=n_pos, n_negative=n_neg)


@dataclass(frozen=True)
class CorpusSummary:
    n_documents: int
    n_relevant: int
    n_irrelevant: int
    relevant_ratio_percent: float  # rounded to one decimal
    token_estimate: int


def _parse_record(line_no: int, line: str) -> Document:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLineError(line_no, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(record, dict):
        raise MalformedLineError(line_no, "record is not a JSON object")

    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise MalformedLineError(line_no, "missing or empty 'id'")
    text = record.get("text")
    if not isinstance(text, str):
        raise MalformedLineError(line_no, "missing 'text'")

    label = None
    if record.get("label") is not None:
        raw = record["label"]
        if raw not in (0, 1) or isinstance(raw, bool):
            raise MalformedLineError(line_no, f"label must be 0 or 1, got {raw!r}")
        label = Label.from_int(raw)

    entities = None
    if record.get("entities") is not None:
        raw_spans = record["entities"]
        if not isinstance(raw_spans, list):
            raise MalformedLineError(line_no, "'entities' must be a list of [start, end] pairs")
        spans = []
        for span in raw_spans:
            if (
                not isinstance(span, (list, tuple))
                or len(span) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in span)
            ):
                raise MalformedLineError(line_no, f"bad entity span {span!r}")
            spans.append((span[0], span[1]))
        entities = tuple(spans)

    return Document(id=doc_id, text=text, label=label, entities=entities)


def load_corpus(
    path: Union[str, Path], require_labels: bool = True
) -> Union[LabeledCorpus, list[Document]]:
    """Load a JSONL corpus file.

    With ``require_labels`` set, every record must carry a label and a
    :class:`LabeledCorpus` is returned; otherwise a plain document list
    (labels optional) comes back.  Documents keep file order; duplicate
    ids are rejected.
    """
    path = Path(path)
    documents: list[Document] = []
    seen_ids: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if line.strip() == "":
                raise MalformedLineError(line_no, "blank line")
            doc = _parse_record(line_no, line)
            if doc.id in seen_ids:
                raise DuplicateIdError(doc.id)
            seen_ids.add(doc.id)
            if require_labels and doc.label is None:
                raise MissingLabelError(doc.id)
            documents.append(doc)
    if not documents:
        raise EmptyCorpusError(f"no documents in {path}")
    if require_labels:
        return LabeledCorpus.from_documents(documents)
    return documents


def write_corpus(
    documents: Union[LabeledCorpus, Sequence[Document]], path: Union[str, Path]
) -> None:
    """Write documents as JSONL with normalized field order (id, text, label, entities)."""
    docs = documents.documents if isinstance(documents, LabeledCorpus) else documents
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            record: dict = {"id": doc.id, "text": doc.text}
            if doc.label is not None:
                record["label"] = doc.label.value
            if doc.entities is not None:
                record["entities"] = [list(span) for span in doc.entities]
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def corpus_stats(corpus: LabeledCorpus) -> CorpusSummary:
    """Summarize class counts, class ratio (one-decimal percent) and corpus size."""
    total = len(corpus)
    ratio = 100.0 * corpus.n_positive / total if total else 0.0
    return CorpusSummary(
        n_documents=total,
        n_relevant=corpus.n_positive,
        n_irrelevant=corpus.n_negative,
        relevant_ratio_percent=round(ratio, 1),
        token_estimate=sum(len(d.text.split()) for d in corpus),
    )
