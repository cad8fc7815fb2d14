"""Sparse feature vectors: keyword occurrence counts per document.

A document maps to a vector of dimension K (the keyword-list length);
entry j is the occurrence count of keyword j, optionally weighted by the
keyword's combined score.  Counting makes a single pass over the
document's n-grams with a hash lookup, which is equivalent to scanning
per keyword (overlapping occurrences count).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Union

from .corpus import Document
from .errors import DimensionMismatchError
from .preprocess import (
    PreprocessConfig,
    TokenStream,
    preprocess_document,
    preprocess_fingerprint,
)
from .scoring import KeywordList


class VectorMode(Enum):
    SCORE_WEIGHTED = "score_weighted"  # count * combined score
    RAW_COUNT = "raw_count"


@dataclass(frozen=True)
class FeatureMode:
    mode: VectorMode = VectorMode.SCORE_WEIGHTED
    l2_normalize: bool = False


@dataclass(frozen=True)
class FeatureVector:
    """Sparse vector: sorted (index, value) pairs, zero entries omitted."""

    dim: int
    entries: tuple[tuple[int, float], ...]

    def norm(self) -> float:
        return math.sqrt(sum(v * v for _, v in self.entries))


def count_term(term: str, stream: TokenStream) -> int:
    """Occurrences (overlapping allowed) of the space-joined n-gram in the stream."""
    target = tuple(term.split(" "))
    n = len(target)
    count = 0
    for segment in stream.segments:
        for i in range(len(segment) - n + 1):
            if segment[i : i + n] == target:
                count += 1
    return count


def _count_keywords(stream: TokenStream, index: dict[str, int], lengths: list[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for segment in stream.segments:
        seg_len = len(segment)
        for n in lengths:
            if n > seg_len:
                continue
            for i in range(seg_len - n + 1):
                term = segment[i] if n == 1 else " ".join(segment[i : i + n])
                j = index.get(term)
                if j is not None:
                    counts[j] = counts.get(j, 0) + 1
    return counts


def vectorize(
    doc: Document,
    keywords: KeywordList,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
    mode: FeatureMode = FeatureMode(),
) -> FeatureVector:
    """Build the sparse feature vector of a document under a keyword list."""
    _check_fingerprint(keywords, preprocess_config)
    stream = preprocess_document(doc, preprocess_config)
    index = keywords.index_of()
    lengths = sorted({term.count(" ") + 1 for term in index})
    counts = _count_keywords(stream, index, lengths)

    if mode.mode is VectorMode.SCORE_WEIGHTED:
        scores = [kw.score for kw in keywords]
        entries = [(j, counts[j] * scores[j]) for j in sorted(counts)]
    else:
        entries = [(j, float(counts[j])) for j in sorted(counts)]
    entries = [(j, v) for j, v in entries if v != 0.0]

    if mode.l2_normalize and entries:
        norm = math.sqrt(sum(v * v for _, v in entries))
        entries = [(j, v / norm) for j, v in entries]

    return FeatureVector(dim=len(keywords), entries=tuple(entries))


def _check_fingerprint(keywords: KeywordList, preprocess_config: PreprocessConfig) -> None:
    # KE fingerprints are <preprocess16><extraction16><scoring16>; only the
    # preprocess section is checkable (and matters) at vectorization time.
    recorded = keywords.config_fingerprint
    if len(recorded) != 48:
        return
    current = preprocess_fingerprint(preprocess_config)
    if recorded[:16] != current:
        warnings.warn(
            "preprocess config does not match the one the keyword list was "
            f"built with (fingerprint {current} != {recorded[:16]}); "
            "vectors may be inconsistent",
            stacklevel=3,
        )


# ---------------------------------------------------------------------------
# Optional vector cache
# ---------------------------------------------------------------------------

def write_vectors(
    ids_and_vectors: Iterable[tuple[str, FeatureVector]], path: Union[str, Path]
) -> None:
    """Cache lines: ``id<TAB>dim<TAB>idx:val,...`` with values at 9 significant digits."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        for doc_id, vec in ids_and_vectors:
            body = ",".join(f"{j}:{v:.9g}" for j, v in vec.entries)
            fh.write(f"{doc_id}\t{vec.dim}\t{body}\n")


def read_vectors(
    path: Union[str, Path], expected_dim: int | None = None
) -> list[tuple[str, FeatureVector]]:
    out = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            doc_id, dim_s, body = line.split("\t")
            dim = int(dim_s)
            if expected_dim is not None and dim != expected_dim:
                raise DimensionMismatchError(
                    f"cached vector for {doc_id!r} has dim {dim}, expected {expected_dim}"
                )
            entries = []
            if body:
                for pair in body.split(","):
                    idx_s, val_s = pair.split(":")
                    entries.append((int(idx_s), float(val_s)))
            out.append((doc_id, FeatureVector(dim=dim, entries=tuple(entries))))
    return out
