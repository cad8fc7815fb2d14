"""Metrics, reference baselines and keyword-ablation experiment runs.

F1 is the binary positive-class score (Relevant being positive), so a
predictor that never emits Relevant scores 0.  All percentages are
rounded half-up to one decimal for table output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .classifier import MlpArchitecture, TrainConfig, predict_batch, train
from .corpus import Label, LabeledCorpus
from .errors import (
    EmptyKeywordFileError,
    InsufficientKeywordsError,
    LengthMismatchError,
)
from .features import FeatureMode, FeatureVector
from .pipeline import vectorize_corpus
from .preprocess import PreprocessConfig, preprocess_document
from .scoring import KeywordList


def round_half_up(value: float, digits: int = 1) -> float:
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class Metrics:
    accuracy: float  # percent
    f1: float
    precision: float
    recall: float
    confusion: tuple[int, int, int, int]  # (tp, fp, fn, tn)

    def rounded(self) -> "Metrics":
        return Metrics(
            accuracy=round_half_up(self.accuracy),
            f1=round_half_up(self.f1),
            precision=round_half_up(self.precision),
            recall=round_half_up(self.recall),
            confusion=self.confusion,
        )


def _as01(labels) -> list[int]:
    return [lbl.value if isinstance(lbl, Label) else int(lbl) for lbl in labels]


def compute_metrics(predictions, truths) -> Metrics:
    preds = _as01(predictions)
    trues = _as01(truths)
    if len(preds) != len(trues):
        raise LengthMismatchError(f"{len(preds)} predictions vs {len(trues)} truths")
    if not preds:
        raise LengthMismatchError("empty prediction list")
    tp = sum(1 for p, t in zip(preds, trues) if p == 1 and t == 1)
    fp = sum(1 for p, t in zip(preds, trues) if p == 1 and t == 0)
    fn = sum(1 for p, t in zip(preds, trues) if p == 0 and t == 1)
    tn = sum(1 for p, t in zip(preds, trues) if p == 0 and t == 0)
    accuracy = 100.0 * (tp + tn) / len(preds)
    precision = 100.0 * tp / (tp + fp) if tp + fp else 0.0
    recall = 100.0 * tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(accuracy, f1, precision, recall, (tp, fp, fn, tn))


# ---------------------------------------------------------------------------
# Baselines
# ---------------------------------------------------------------------------

def baseline_majority(train_labels, test_truths) -> Metrics:
    """Predict the training-majority class everywhere; ties predict Irrelevant."""
    trains = _as01(train_labels)
    truths = _as01(test_truths)
    majority = 1 if sum(trains) * 2 > len(trains) else 0
    return compute_metrics([majority] * len(truths), truths)


def baseline_always_positive(test_truths) -> Metrics:
    """Predict Relevant everywhere; F1 is analytically 2*pi/(pi+1) for positive rate pi."""
    truths = _as01(test_truths)
    return compute_metrics([1] * len(truths), truths)


def load_manual_keywords(path: Union[str, Path]) -> list[str]:
    """Manual keyword file: one (possibly multi-word) term per line, # comments."""
    terms = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                terms.append(line.lower())
    if not terms:
        raise EmptyKeywordFileError(f"no keywords in {path}")
    return terms


def baseline_manual_keywords(
    keyword_file: Union[str, Path],
    corpus: LabeledCorpus,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
) -> Metrics:
    """Predict Relevant iff the preprocessed document contains any listed keyword."""
    terms = [tuple(t.split()) for t in load_manual_keywords(keyword_file)]
    predictions = []
    for doc in corpus:
        stream = preprocess_document(doc, preprocess_config)
        hit = False
        for target in terms:
            n = len(target)
            for segment in stream.segments:
                if any(segment[i : i + n] == target for i in range(len(segment) - n + 1)):
                    hit = True
                    break
            if hit:
                break
        predictions.append(1 if hit else 0)
    return compute_metrics(predictions, [d.label for d in corpus])


# ---------------------------------------------------------------------------
# Keyword-subset ablations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AblationMode:
    kind: str  # "full" | "top_k" | "exclude_top_k" | "random_vectors"
    k: int = 0

    @classmethod
    def full(cls):
        return cls("full")

    @classmethod
    def top_k(cls, k: int):
        return cls("top_k", k)

    @classmethod
    def exclude_top_k(cls, k: int):
        return cls("exclude_top_k", k)

    @classmethod
    def random_vectors(cls):
        return cls("random_vectors")


def top_terms_by_frequency(
    keywords: KeywordList, k: int, by_positive_freq: bool = False
) -> list[str]:
    """The k keywords with highest total (or positive-only) corpus frequency."""
    ranked = sorted(
        keywords,
        key=lambda kw: (
            -(kw.stats.pos_freq if by_positive_freq else kw.stats.total_freq),
            kw.term,
        ),
    )
    return [kw.term for kw in ranked[:k]]


def restrict_keywords(keywords: KeywordList, mode: AblationMode, by_positive_freq=False) -> KeywordList:
    if mode.kind == "full" or mode.kind == "random_vectors":
        return keywords
    if not 0 <= mode.k < len(keywords):
        raise InsufficientKeywordsError(
            f"k={mode.k} out of range for {len(keywords)} keywords"
        )
    top = set(top_terms_by_frequency(keywords, mode.k, by_positive_freq))
    if mode.kind == "top_k":
        if mode.k < 1:
            raise InsufficientKeywordsError("top_k needs k >= 1")
        kept = [kw for kw in keywords if kw.term in top]
    elif mode.kind == "exclude_top_k":
        kept = [kw for kw in keywords if kw.term not in top]
    else:
        raise ValueError(f"unknown ablation kind {mode.kind!r}")
    return KeywordList(keywords=kept, config_fingerprint=keywords.config_fingerprint)


def _random_vectors(n: int, dim: int, seed: int) -> list[FeatureVector]:
    rng = np.random.default_rng(seed)
    values = rng.random((n, dim))
    return [
        FeatureVector(dim=dim, entries=tuple(enumerate(row.tolist())))
        for row in values
    ]


@dataclass(frozen=True)
class AblationResult:
    name: str
    metrics: Metrics
    n_keywords: int
    wall_seconds: float


def run_ablation(
    mode: AblationMode,
    keywords: KeywordList,
    train_corpus: LabeledCorpus,
    test_corpus: LabeledCorpus,
    preprocess_config: PreprocessConfig = PreprocessConfig(),
    feature_mode: FeatureMode = FeatureMode(),
    arch: MlpArchitecture = MlpArchitecture(),
    train_config: TrainConfig = TrainConfig(),
    threshold: float = 0.4,
    by_positive_freq: bool = False,
) -> AblationResult:
    """Rebuild vectors under the restricted keyword set, retrain, evaluate."""
    started = time.perf_counter()
    restricted = restrict_keywords(keywords, mode, by_positive_freq)
    if mode.kind == "random_vectors":
        train_vecs = _random_vectors(len(train_corpus), len(keywords), train_config.seed)
        test_vecs = _random_vectors(len(test_corpus), len(keywords), train_config.seed + 1)
    else:
        train_vecs = vectorize_corpus(train_corpus, restricted, preprocess_config, feature_mode)
        test_vecs = vectorize_corpus(test_corpus, restricted, preprocess_config, feature_mode)
    model = train(
        train_vecs,
        [d.label for d in train_corpus],
        arch,
        train_config,
        threshold=threshold,
    )
    predictions, _ = predict_batch(model, test_vecs)
    metrics = compute_metrics(predictions, [d.label for d in test_corpus])
    name = {
        "full": "full",
        "top_k": f"top_{mode.k}",
        "exclude_top_k": f"exclude_top_{mode.k}",
        "random_vectors": "random_vectors",
    }[mode.kind]
    return AblationResult(
        name=name,
        metrics=metrics,
        n_keywords=len(restricted),
        wall_seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Result tables
# ---------------------------------------------------------------------------

RESULT_COLUMNS = (
    "run_name", "accuracy", "f1", "precision", "recall",
    "tp", "fp", "fn", "tn", "n_keywords", "wall_seconds",
)


@dataclass(frozen=True)
class ResultRow:
    run_name: str
    metrics: Metrics
    n_keywords: int
    wall_seconds: float

    def as_tsv(self) -> str:
        m = self.metrics.rounded()
        tp, fp, fn, tn = self.metrics.confusion
        return "\t".join(
            str(v)
            for v in (
                self.run_name, m.accuracy, m.f1, m.precision, m.recall,
                tp, fp, fn, tn, self.n_keywords, f"{self.wall_seconds:.2f}",
            )
        )


def format_results(rows: Iterable[ResultRow]) -> str:
    lines = ["\t".join(RESULT_COLUMNS)]
    lines.extend(row.as_tsv() for row in rows)
    return "\n".join(lines) + "\n"


def summarize(row: ResultRow) -> str:
    m = row.metrics.rounded()
    tp, fp, fn, tn = row.metrics.confusion
    return (
        f"{row.run_name}: accuracy {m.accuracy}% | F1 {m.f1}% | "
        f"precision {m.precision}% | recall {m.recall}% | "
        f"tp={tp} fp={fp} fn={fn} tn={tn} | keywords={row.n_keywords}"
    )
