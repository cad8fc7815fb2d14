"""Synthetic corpus generator for pipeline tests.

Plants 20 discriminative phrases (three high-frequency unigrams plus 17
multi-word phrases of lengths 2-4) into the positive class over a shared
filler vocabulary, with citation/person-name decorations applied to both
classes so the preprocessing filters see realistic noise.  Every positive
document receives exactly two tail phrases (planted twice each) and, with
probability 0.8, one of the three top unigrams round-robin; negatives are
filler only.  Deterministic given the seed.
"""

from __future__ import annotations

import random

from lexrel.corpus import Document, LabeledCorpus, Label

TOP_PHRASES = [["alphasig"], ["betasig"], ["gammasig"]]
TAIL_PHRASES = [
    [f"sig{i}{suffix}" for suffix in "abcd"[: 2 + i % 3]] for i in range(17)
]
PLANTED_PHRASES = TOP_PHRASES + TAIL_PHRASES  # 20 total, lengths 1-4

_DECORATIONS = [
    "see 410 U.S. 113 (1973)",
    "under 42 U.S.C. § 1983",
    "Plaintiff John Smith",
    "Defendant Jane Doe",
    "in 347 U.S. 483 (1954)",
]


def _plant(tokens: list[str], phrase: list[str], rng: random.Random) -> None:
    pos = rng.randrange(len(tokens) + 1)
    tokens[pos:pos] = phrase


def make_corpus(
    n_docs: int,
    positive_fraction: float = 0.5,
    seed: int = 0,
    id_prefix: str = "d",
) -> LabeledCorpus:
    rng = random.Random(seed)
    n_pos = round(n_docs * positive_fraction)
    labels = [1] * n_pos + [0] * (n_docs - n_pos)
    rng.shuffle(labels)

    documents = []
    top_rr = 0
    tail_rr = 0
    for i, label in enumerate(labels):
        tokens = [f"filler{rng.randrange(200)}" for _ in range(rng.randrange(80, 120))]
        if rng.random() < 0.4:
            _plant(tokens, [rng.choice(_DECORATIONS)], rng)
        if label == 1:
            first = tail_rr % len(TAIL_PHRASES)
            second = (tail_rr + 7) % len(TAIL_PHRASES)
            tail_rr += 1
            for phrase_idx in (first, second):
                _plant(tokens, TAIL_PHRASES[phrase_idx], rng)
                _plant(tokens, TAIL_PHRASES[phrase_idx], rng)
            if rng.random() < 0.8:
                _plant(tokens, TOP_PHRASES[top_rr % len(TOP_PHRASES)], rng)
                top_rr += 1
        documents.append(
            Document(
                id=f"{id_prefix}{i:05d}",
                text=" ".join(tokens),
                label=Label(label),
            )
        )
    return LabeledCorpus.from_documents(documents)


def shuffle_labels(corpus: LabeledCorpus, seed: int = 0) -> LabeledCorpus:
    """Destroy the feature-label association while keeping the label counts."""
    rng = random.Random(seed)
    labels = [d.label for d in corpus]
    rng.shuffle(labels)
    return LabeledCorpus.from_documents(
        [
            Document(id=d.id, text=d.text, label=lbl, entities=d.entities)
            for d, lbl in zip(corpus, labels)
        ]
    )
