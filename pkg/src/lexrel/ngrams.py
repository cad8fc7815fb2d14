"""Word-level n-gram construction and class-conditional frequency statistics.

Every contiguous n-gram of length 1..max_n inside each token segment is
counted (n-grams never cross segment boundaries).  Statistics are exact:
per-term occurrence totals and containing-document counts, split by class.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .corpus import Label, LabeledCorpus
from .errors import BothClassesRequiredError
from .preprocess import PreprocessConfig, TokenStream, preprocess_document


@dataclass
class TermStats:
    """Occurrence and document counts for one term, split by class."""

    term: str
    pos_freq: int = 0
    neg_freq: int = 0
    pos_docs: int = 0
    neg_docs: int = 0

    @property
    def total_freq(self) -> int:
        return self.pos_freq + self.neg_freq


@dataclass(frozen=True)
class ExtractionConfig:
    max_n: int = 4
    min_term_freq: int = 30

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.min_term_freq < 1:
            raise ValueError("min_term_freq must be >= 1")


def extraction_fingerprint(config: ExtractionConfig) -> str:
    blob = json.dumps({"max_n": config.max_n, "min_term_freq": config.min_term_freq})
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def extract_ngrams(stream: TokenStream, max_n: int) -> Counter:
    """Multiset of all n-grams of length 1..max_n within each segment."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    counts: Counter = Counter()
    for segment in stream.segments:
        length = len(segment)
        for n in range(1, max_n + 1):
            if n > length:
                break
            if n == 1:
                counts.update(segment)
            else:
                for i in range(length - n + 1):
                    counts[" ".join(segment[i : i + n])] += 1
    return counts


def accumulate_stats(
    corpus: LabeledCorpus,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
    extraction: ExtractionConfig = ExtractionConfig(),
) -> dict[str, TermStats]:
    """Aggregate per-term stats over a labeled corpus, then apply the MTF cutoff.

    The minimum-term-frequency threshold applies to the total corpus
    frequency (pos_freq + neg_freq).
    """
    if corpus.n_positive < 1 or corpus.n_negative < 1:
        raise BothClassesRequiredError(
            f"need at least one document of each class, got "
            f"{corpus.n_positive} relevant / {corpus.n_negative} irrelevant"
        )
    stats: dict[str, TermStats] = {}
    for doc in corpus:
        counts = extract_ngrams(preprocess_document(doc, preprocess_config), extraction.max_n)
        positive = doc.label is Label.RELEVANT
        for term, count in counts.items():
            entry = stats.get(term)
            if entry is None:
                entry = stats[term] = TermStats(term)
            if positive:
                entry.pos_freq += count
                entry.pos_docs += 1
            else:
                entry.neg_freq += count
                entry.neg_docs += 1
    if extraction.min_term_freq > 1:
        stats = {
            term: entry
            for term, entry in stats.items()
            if entry.total_freq >= extraction.min_term_freq
        }
    return stats


def write_stats_tsv(stats: dict[str, TermStats], path: Union[str, Path]) -> None:
    """Debug dump: term, positive/negative frequencies and document counts."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("term\tpos_freq\tneg_freq\tpos_docs\tneg_docs\n")
        for term in sorted(stats):
            s = stats[term]
            fh.write(f"{term}\t{s.pos_freq}\t{s.neg_freq}\t{s.pos_docs}\t{s.neg_docs}\n")
