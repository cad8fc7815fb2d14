"""Contrastive term scoring and keyword selection.

Each surviving term gets three scores in [0, 1):

* a contrastive score ``f+ / (f+ + (f-)^p + eps)`` that rewards terms
  frequent in relevant documents and punishes cross-class terms via the
  penalty exponent ``p``;
* a document-spread score ``r+ / (r+ + r- + eps)`` over the fractions of
  relevant/irrelevant documents containing the term;
* their weighted combination ``(1 - df_weight) * csm + df_weight * df``.

Terms at or above ``score_min`` (optionally hard-filtered to those never
seen in an irrelevant document) become the keyword list; the position of
each keyword is the feature index used by the vectorizer downstream.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .errors import InputError, NoKeywordsSelectedError
from .ngrams import TermStats

INFINITE = math.inf


@dataclass(frozen=True)
class ScoringConfig:
    epsilon: float = 0.01
    penalty_exponent: float = 10.0  # math.inf selects the hard-limit behavior
    df_weight: float = 0.75
    hard_filter: bool = False
    score_min: float = 0.5

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.penalty_exponent < 1:
            raise ValueError("penalty_exponent must be >= 1 (or infinite)")
        if not 0 <= self.df_weight <= 1:
            raise ValueError("df_weight must be in [0, 1]")


@dataclass(frozen=True)
class ScoredKeyword:
    term: str
    csm: float
    df: float
    score: float
    stats: TermStats


@dataclass
class KeywordList:
    """Scored keywords in descending score order; index == feature index."""

    keywords: list[ScoredKeyword]
    config_fingerprint: str = ""

    def __len__(self) -> int:
        return len(self.keywords)

    def __iter__(self):
        return iter(self.keywords)

    def terms(self) -> list[str]:
        return [kw.term for kw in self.keywords]

    def index_of(self) -> dict[str, int]:
        return {kw.term: i for i, kw in enumerate(self.keywords)}


def scoring_fingerprint(config: ScoringConfig) -> str:
    blob = json.dumps(
        {
            "epsilon": config.epsilon,
            "penalty_exponent": repr(config.penalty_exponent),
            "df_weight": config.df_weight,
            "hard_filter": config.hard_filter,
            "score_min": config.score_min,
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def _negative_penalty(neg_freq: int, exponent: float) -> float:
    """(f-)^p in double precision; overflow saturates to +inf (score -> 0)."""
    if neg_freq == 0:
        return 0.0
    if float(exponent).is_integer():
        penalty = neg_freq ** int(exponent)  # exact big-int power
        try:
            return float(penalty)
        except OverflowError:
            return math.inf
    try:
        return math.exp(exponent * math.log(neg_freq))
    except OverflowError:
        return math.inf


def csm(stats: TermStats, epsilon: float, penalty_exponent: float) -> float:
    """Contrastive score in [0, 1); exactly 0 iff pos_freq is 0."""
    if stats.pos_freq == 0:
        return 0.0
    if math.isinf(penalty_exponent):
        if stats.neg_freq == 0:
            return stats.pos_freq / (stats.pos_freq + epsilon)
        return 0.0
    penalty = _negative_penalty(stats.neg_freq, penalty_exponent)
    if math.isinf(penalty):
        return 0.0
    return stats.pos_freq / (stats.pos_freq + penalty + epsilon)


def df(stats: TermStats, n_pos: int, n_neg: int, epsilon: float) -> float:
    """Document-spread score in [0, 1); exactly 0 iff pos_docs is 0."""
    if stats.pos_docs == 0:
        return 0.0
    r_pos = stats.pos_docs / n_pos
    r_neg = stats.neg_docs / n_neg
    return r_pos / (r_pos + r_neg + epsilon)


def combined_score(csm_val: float, df_val: float, df_weight: float) -> float:
    return (1.0 - df_weight) * csm_val + df_weight * df_val


def score_term(stats: TermStats, n_pos: int, n_neg: int, config: ScoringConfig) -> ScoredKeyword:
    csm_val = csm(stats, config.epsilon, config.penalty_exponent)
    df_val = df(stats, n_pos, n_neg, config.epsilon)
    return ScoredKeyword(
        term=stats.term,
        csm=csm_val,
        df=df_val,
        score=combined_score(csm_val, df_val, config.df_weight),
        stats=stats,
    )


def select_keywords(
    stats: dict[str, TermStats],
    corpus_counts: tuple[int, int],
    config: ScoringConfig = ScoringConfig(),
    config_fingerprint: str = "",
) -> KeywordList:
    """Score every term, apply filters and build the stable-ordered keyword list.

    Ordering is descending score with lexicographic tie-break on the term,
    so feature indices are reproducible across runs and platforms.
    """
    n_pos, n_neg = corpus_counts
    selected = []
    for term in stats:
        entry = stats[term]
        if config.hard_filter and entry.neg_docs > 0:
            continue
        scored = score_term(entry, n_pos, n_neg, config)
        if scored.score >= config.score_min:
            selected.append(scored)
    if not selected:
        raise NoKeywordsSelectedError(
            "no terms survived selection; lower score_min or min_term_freq"
        )
    selected.sort(key=lambda kw: (-kw.score, kw.term))
    return KeywordList(keywords=selected, config_fingerprint=config_fingerprint)


# ---------------------------------------------------------------------------
# Serialization: the one-time-per-corpus KE artifact
# ---------------------------------------------------------------------------

def _sig12(value: float) -> float:
    return float(f"{value:.12g}")


def save_keywords(keywords: KeywordList, path: Union[str, Path]) -> None:
    """Write the keyword list as JSON with reals at 12 significant digits."""
    payload = {
        "config_fingerprint": keywords.config_fingerprint,
        "keywords": [
            {
                "term": kw.term,
                "csm": _sig12(kw.csm),
                "df": _sig12(kw.df),
                "score": _sig12(kw.score),
                "pos_freq": kw.stats.pos_freq,
                "neg_freq": kw.stats.neg_freq,
                "pos_docs": kw.stats.pos_docs,
                "neg_docs": kw.stats.neg_docs,
            }
            for kw in keywords
        ],
    }
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def load_keywords(path: Union[str, Path]) -> KeywordList:
    try:
        with Path(path).open("r", encoding="utf-8") as fh:
            payload = json.load(fh)
        keywords = [
            ScoredKeyword(
                term=item["term"],
                csm=float(item["csm"]),
                df=float(item["df"]),
                score=float(item["score"]),
                stats=TermStats(
                    term=item["term"],
                    pos_freq=int(item["pos_freq"]),
                    neg_freq=int(item["neg_freq"]),
                    pos_docs=int(item["pos_docs"]),
                    neg_docs=int(item["neg_docs"]),
                ),
            )
            for item in payload["keywords"]
        ]
        fingerprint = payload["config_fingerprint"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"unreadable keyword file {path}: {exc}") from exc
    return KeywordList(keywords=keywords, config_fingerprint=fingerprint)
