from lexrel.ngrams import ExtractionConfig
from lexrel.pipeline import build_keywords, ke_fingerprint, vectorize_corpus
from lexrel.preprocess import PreprocessConfig
from lexrel.scoring import ScoringConfig


def test_build_keywords_end_to_end(tiny_corpus):
    extraction = ExtractionConfig(max_n=2, min_term_freq=2)
    keywords = build_keywords(tiny_corpus, extraction=extraction)
    assert "motion to" in keywords.terms()
    assert len(keywords.config_fingerprint) == 48


def test_fingerprint_sections_change_independently():
    base = ke_fingerprint(PreprocessConfig(), ExtractionConfig(), ScoringConfig())
    pre_changed = ke_fingerprint(
        PreprocessConfig(stem_and_lemmatize=True), ExtractionConfig(), ScoringConfig()
    )
    scoring_changed = ke_fingerprint(
        PreprocessConfig(), ExtractionConfig(), ScoringConfig(df_weight=0.5)
    )
    assert base[:16] != pre_changed[:16]
    assert base[16:32] == pre_changed[16:32]
    assert base[:32] == scoring_changed[:32]
    assert base[32:] != scoring_changed[32:]


def test_vectorize_corpus_threaded_matches_serial(tiny_corpus):
    extraction = ExtractionConfig(max_n=2, min_term_freq=2)
    keywords = build_keywords(tiny_corpus, extraction=extraction)
    serial = vectorize_corpus(tiny_corpus, keywords, threads=1)
    threaded = vectorize_corpus(tiny_corpus, keywords, threads=4)
    assert serial == threaded
