"""End-to-end orchestration of the keyword-extraction and classification stages."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, Union

from .corpus import Document, LabeledCorpus
from .features import FeatureMode, FeatureVector, vectorize
from .ngrams import ExtractionConfig, accumulate_stats, extraction_fingerprint
from .preprocess import PreprocessConfig, preprocess_fingerprint
from .scoring import KeywordList, ScoringConfig, scoring_fingerprint, select_keywords


def ke_fingerprint(
    preprocess_config: PreprocessConfig,
    extraction: ExtractionConfig,
    scoring: ScoringConfig,
) -> str:
    """48-hex fingerprint: 16 hex chars per KE-stage config section."""
    return (
        preprocess_fingerprint(preprocess_config)
        + extraction_fingerprint(extraction)
        + scoring_fingerprint(scoring)
    )


def build_keywords(
    corpus: LabeledCorpus,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
    extraction: ExtractionConfig = ExtractionConfig(),
    scoring: ScoringConfig = ScoringConfig(),
) -> KeywordList:
    """Run the full KE stage on a labeled corpus (the one-time artifact)."""
    stats = accumulate_stats(corpus, preprocess_config, extraction)
    return select_keywords(
        stats,
        (corpus.n_positive, corpus.n_negative),
        scoring,
        config_fingerprint=ke_fingerprint(preprocess_config, extraction, scoring),
    )


def vectorize_corpus(
    documents: Union[LabeledCorpus, Sequence[Document]],
    keywords: KeywordList,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
    mode: FeatureMode = FeatureMode(),
    threads: int = 1,
) -> list[FeatureVector]:
    """Vectorize documents in order; per-document work is independent."""
    docs = documents.documents if isinstance(documents, LabeledCorpus) else list(documents)

    def work(doc: Document) -> FeatureVector:
        return vectorize(doc, keywords, preprocess_config, mode)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, docs))
    return [work(doc) for doc in docs]
