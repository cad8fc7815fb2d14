"""Scikit-learn style estimators wrapping the pipeline.

``ContrastiveKeywordVectorizer`` is a supervised transformer (its fit
needs labels) and ``ShallowReluClassifier`` a binary classifier; both
follow the fit/transform/predict + ``get_params`` contract so they
compose with ``sklearn.pipeline.Pipeline``, grid search and friends.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from . import classifier as _clf
from .config import parse_architecture
from .corpus import Document, LabeledCorpus, Label
from .features import FeatureMode, VectorMode
from .ngrams import ExtractionConfig
from .pipeline import build_keywords, vectorize_corpus
from .preprocess import EntitySource, PreprocessConfig
from .scoring import ScoringConfig


def _as_documents(X, y=None) -> list[Document]:
    documents = []
    labels = None if y is None else list(y)
    if labels is not None and len(labels) != len(X):
        raise ValueError(f"X has {len(X)} rows but y has {len(labels)}")
    for i, item in enumerate(X):
        label = None
        if labels is not None:
            raw = labels[i]
            label = raw if isinstance(raw, Label) else Label(int(raw))
        if isinstance(item, Document):
            documents.append(
                Document(id=item.id, text=item.text, label=label or item.label,
                         entities=item.entities)
            )
        else:
            documents.append(Document(id=f"doc{i:06d}", text=str(item), label=label))
    return documents


class ContrastiveKeywordVectorizer(BaseEstimator, TransformerMixin):
    """Learn discriminative keyword features from labeled text.

    ``fit(X, y)`` runs the keyword-extraction stage on the training texts
    (X: iterable of str or Document, y: 0/1 labels); ``transform(X)``
    returns a sparse matrix of per-keyword occurrence counts, optionally
    weighted by each keyword's combined score.
    """

    def __init__(
        self,
        max_n=4,
        min_term_freq=30,
        epsilon=0.01,
        penalty_exponent=10.0,
        df_weight=0.75,
        hard_filter=False,
        score_min=0.5,
        mode="score_weighted",
        l2_normalize=False,
        filter_person_names=True,
        filter_citations=True,
        stem_and_lemmatize=False,
        entity_source="rule_based",
    ):
        self.max_n = max_n
        self.min_term_freq = min_term_freq
        self.epsilon = epsilon
        self.penalty_exponent = penalty_exponent
        self.df_weight = df_weight
        self.hard_filter = hard_filter
        self.score_min = score_min
        self.mode = mode
        self.l2_normalize = l2_normalize
        self.filter_person_names = filter_person_names
        self.filter_citations = filter_citations
        self.stem_and_lemmatize = stem_and_lemmatize
        self.entity_source = entity_source

    def _configs(self):
        preprocess = PreprocessConfig(
            filter_person_names=self.filter_person_names,
            filter_citations=self.filter_citations,
            stem_and_lemmatize=self.stem_and_lemmatize,
            entity_source=EntitySource(self.entity_source),
        )
        extraction = ExtractionConfig(max_n=self.max_n, min_term_freq=self.min_term_freq)
        scoring = ScoringConfig(
            epsilon=self.epsilon,
            penalty_exponent=self.penalty_exponent,
            df_weight=self.df_weight,
            hard_filter=self.hard_filter,
            score_min=self.score_min,
        )
        feature_mode = FeatureMode(mode=VectorMode(self.mode), l2_normalize=self.l2_normalize)
        return preprocess, extraction, scoring, feature_mode

    def fit(self, X, y):
        preprocess, extraction, scoring, _ = self._configs()
        corpus = LabeledCorpus.from_documents(_as_documents(X, y))
        self.keywords_ = build_keywords(corpus, preprocess, extraction, scoring)
        self.n_features_ = len(self.keywords_)
        return self

    def transform(self, X):
        if not hasattr(self, "keywords_"):
            raise NotFittedError("fit the vectorizer before calling transform")
        preprocess, _, _, feature_mode = self._configs()
        vectors = vectorize_corpus(_as_documents(X), self.keywords_, preprocess, feature_mode)
        return _clf.to_matrix(vectors, expected_dim=self.n_features_)

    def get_feature_names_out(self, input_features=None):
        if not hasattr(self, "keywords_"):
            raise NotFittedError("fit the vectorizer before asking for feature names")
        return np.asarray(self.keywords_.terms(), dtype=object)


class ShallowReluClassifier(BaseEstimator, ClassifierMixin):
    """Binary rectifier-network classifier with a fixed decision threshold.

    Accepts sparse or dense feature matrices.  ``predict`` applies the
    relevance threshold (default 0.4, inclusive) to the positive-class
    probability rather than the usual argmax.
    """

    def __init__(
        self,
        architecture="A1",
        threshold=0.4,
        max_iterations=500,
        initial_lr=1e-3,
        batch_size=200,
        val_fraction=0.1,
        early_stop_patience=10,
        lr_adapt_divisor=5.0,
        lr_adapt_patience=2,
        min_delta=1e-4,
        seed=42,
    ):
        self.architecture = architecture
        self.threshold = threshold
        self.max_iterations = max_iterations
        self.initial_lr = initial_lr
        self.batch_size = batch_size
        self.val_fraction = val_fraction
        self.early_stop_patience = early_stop_patience
        self.lr_adapt_divisor = lr_adapt_divisor
        self.lr_adapt_patience = lr_adapt_patience
        self.min_delta = min_delta
        self.seed = seed

    def _architecture(self) -> _clf.MlpArchitecture:
        if isinstance(self.architecture, _clf.MlpArchitecture):
            return self.architecture
        if isinstance(self.architecture, (tuple, list)):
            return _clf.MlpArchitecture(hidden_sizes=tuple(self.architecture))
        return parse_architecture(str(self.architecture))

    def fit(self, X, y):
        config = _clf.TrainConfig(
            max_iterations=self.max_iterations,
            initial_lr=self.initial_lr,
            batch_size=self.batch_size,
            val_fraction=self.val_fraction,
            early_stop_patience=self.early_stop_patience,
            lr_adapt_divisor=self.lr_adapt_divisor,
            lr_adapt_patience=self.lr_adapt_patience,
            min_delta=self.min_delta,
            seed=self.seed,
        )
        self.model_ = _clf.train(
            X, y, self._architecture(), config, threshold=self.threshold
        )
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = self.model_.input_dim
        return self

    def _check_fitted(self):
        if not hasattr(self, "model_"):
            raise NotFittedError("fit the classifier before predicting")

    def predict_proba(self, X):
        self._check_fitted()
        _, probs = _clf.predict_batch(self.model_, X)
        return np.column_stack([1.0 - probs, probs])

    def predict(self, X):
        self._check_fitted()
        labels, _ = _clf.predict_batch(self.model_, X)
        return np.array([lbl.value for lbl in labels])


def make_relevance_pipeline(**params) -> Pipeline:
    """Vectorizer + classifier as a single sklearn pipeline.

    Keyword arguments prefixed ``keywords__`` or ``classifier__`` are
    forwarded to the respective step.
    """
    pipeline = Pipeline(
        [
            ("keywords", ContrastiveKeywordVectorizer()),
            ("classifier", ShallowReluClassifier()),
        ]
    )
    if params:
        pipeline.set_params(**params)
    return pipeline
