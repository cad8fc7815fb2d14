"""Contrastive keyword extraction and shallow neural classification
for binary relevance filtering of legal document corpora."""

__version__ = "0.1.0"

from .classifier import (  # noqa: F401
    ARCHITECTURE_PRESETS,
    MlpArchitecture,
    MlpModel,
    TrainConfig,
    forward,
    load_model,
    predict,
    predict_batch,
    save_model,
    train,
)
from .config import PipelineConfig, load_config  # noqa: F401
from .corpus import (  # noqa: F401
    CorpusSummary,
    Document,
    Label,
    LabeledCorpus,
    corpus_stats,
    load_corpus,
    write_corpus,
)
from .estimators import (  # noqa: F401
    ContrastiveKeywordVectorizer,
    ShallowReluClassifier,
    make_relevance_pipeline,
)
from .evaluation import (  # noqa: F401
    AblationMode,
    Metrics,
    baseline_always_positive,
    baseline_majority,
    baseline_manual_keywords,
    compute_metrics,
    run_ablation,
)
from .features import FeatureMode, FeatureVector, VectorMode, count_term, vectorize  # noqa: F401
from .ngrams import ExtractionConfig, TermStats, accumulate_stats, extract_ngrams  # noqa: F401
from .pipeline import build_keywords, ke_fingerprint, vectorize_corpus  # noqa: F401
from .preprocess import (  # noqa: F401
    EntitySource,
    PreprocessConfig,
    TokenStream,
    filter_citations,
    filter_entities,
    preprocess_document,
    stem_tokens,
    tokenize,
)
from .scoring import (  # noqa: F401
    KeywordList,
    ScoredKeyword,
    ScoringConfig,
    combined_score,
    csm,
    df,
    load_keywords,
    save_keywords,
    select_keywords,
)
