"""Labeling, ratio resampling and corpus emission.

Realistic mode subsamples the majority side of each split (seeded,
uniform, without replacement) to hit the target relevant-irrelevant
ratios; original mode keeps every document.  Output is one JSONL corpus
per split plus a manifest recording counts, ratios, seed and source
metadata — no timestamps, so equal seeds give byte-equal manifests.
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Callable, Optional

from .entities import person_spans_utf8
from .subsets import SPLITS, SUBSET_LABELING, join_text

# per-split target fraction of relevant documents in realistic mode
REALISTIC_RATIOS = {"train": 0.47, "val": 0.25, "test": 0.27}


def resample_to_ratio(positives: list, negatives: list, target: float, rng: random.Random):
    """Subsample one side so the positive fraction hits ``target``, keeping
    as many documents as possible."""
    n_pos, n_neg = len(positives), len(negatives)
    if n_pos == 0 or n_neg == 0:
        return positives, negatives
    current = n_pos / (n_pos + n_neg)
    if current > target:
        keep = min(n_pos, round(target / (1.0 - target) * n_neg))
        positives = rng.sample(positives, keep)
    elif current < target:
        keep = min(n_neg, round((1.0 - target) / target * n_pos))
        negatives = rng.sample(negatives, keep)
    return positives, negatives


def _ratio_percent(n_pos: int, total: int) -> float:
    return round(100.0 * n_pos / total, 1) if total else 0.0


def prepare(
    output_dir,
    loader: Callable[[str, str], list],
    mode: str = "realistic",
    seed: int = 0,
    with_entities: bool = False,
    limit: Optional[int] = None,
    ner=None,
    describe: Optional[Callable[[], dict]] = None,
) -> dict:
    """Build train/val/test JSONL corpora and a manifest; returns the manifest."""
    if mode not in ("realistic", "original"):
        raise ValueError(f"mode must be 'realistic' or 'original', got {mode!r}")
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    manifest = {
        "mode": mode,
        "seed": seed,
        "limit": limit,
        "with_entities": with_entities,
        "labeling": dict(SUBSET_LABELING),
        "source": describe() if describe else {},
        "splits": {},
    }

    for source_split, out_split in SPLITS.items():
        positives, negatives = [], []
        per_subset = {}
        for subset, label in SUBSET_LABELING.items():
            raw_texts = loader(subset, source_split)
            per_subset[subset] = len(raw_texts)
            bucket = positives if label == 1 else negatives
            for i, raw in enumerate(raw_texts):
                record = {
                    "id": f"{subset}-{source_split}-{i}",
                    "text": join_text(raw),
                    "label": label,
                }
                bucket.append(record)

        if mode == "realistic":
            positives, negatives = resample_to_ratio(
                positives, negatives, REALISTIC_RATIOS[out_split], rng
            )
        records = positives + negatives
        rng.shuffle(records)
        if limit is not None:
            records = records[:limit]

        if with_entities:
            for record in records:
                record["entities"] = person_spans_utf8(record["text"], ner=ner)

        path = output_dir / f"{out_split}.jsonl"
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for record in records:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")

        n_pos = sum(1 for r in records if r["label"] == 1)
        manifest["splits"][out_split] = {
            "file": path.name,
            "n_documents": len(records),
            "n_relevant": n_pos,
            "n_irrelevant": len(records) - n_pos,
            "relevant_ratio_percent": _ratio_percent(n_pos, len(records)),
            "per_subset_source_counts": per_subset,
        }

    manifest_path = output_dir / "manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    return manifest
