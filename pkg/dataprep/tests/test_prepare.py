import json
import random
import warnings

import pytest

from lexglue_prep.errors import UnknownSubsetError
from lexglue_prep.prepare import REALISTIC_RATIOS, prepare, resample_to_ratio
from lexglue_prep.subsets import (
    EXCLUDED_SUBSETS,
    SUBSET_LABELING,
    join_text,
    label_for,
)


def fake_loader(subset, split):
    """Deterministic offline stand-in for the rows API."""
    sizes = {"train": 40, "validation": 20, "test": 20}
    n = sizes[split]
    if subset == "ecthr_a":
        return [[f"{subset} {split} doc {i} first part", "second part"] for i in range(n)]
    return [f"{subset} {split} document {i} body text" for i in range(n)]


class TestSubsets:
    def test_labeling(self):
        assert SUBSET_LABELING == {"ecthr_a": 1, "scotus": 1, "eurlex": 0, "unfair_tos": 0}

    @pytest.mark.parametrize("subset", EXCLUDED_SUBSETS + ("made_up",))
    def test_excluded_subsets_rejected(self, subset):
        with pytest.raises(UnknownSubsetError):
            label_for(subset)

    def test_multi_segment_join(self):
        assert join_text(["para one", "para two"]) == "para one\n\npara two"
        assert join_text("plain") == "plain"


class TestResample:
    def test_hits_target_from_above(self):
        rng = random.Random(0)
        pos, neg = resample_to_ratio(list(range(500)), list(range(100)), 0.47, rng)
        assert len(neg) == 100  # minority side untouched
        ratio = len(pos) / (len(pos) + len(neg))
        assert abs(ratio - 0.47) < 0.01

    def test_hits_target_from_below(self):
        rng = random.Random(0)
        pos, neg = resample_to_ratio(list(range(100)), list(range(900)), 0.25, rng)
        assert len(pos) == 100
        ratio = len(pos) / (len(pos) + len(neg))
        assert abs(ratio - 0.25) < 0.01

    def test_already_on_target_keeps_everything(self):
        rng = random.Random(0)
        pos, neg = resample_to_ratio(list(range(47)), list(range(53)), 0.47, rng)
        assert (len(pos), len(neg)) == (47, 53)


class TestPrepare:
    def test_emits_three_corpora_and_manifest(self, tmp_path):
        manifest = prepare(tmp_path, loader=fake_loader, seed=3)
        for split in ("train", "val", "test"):
            assert (tmp_path / f"{split}.jsonl").exists()
            info = manifest["splits"][split]
            target = 100 * REALISTIC_RATIOS[split]
            assert abs(info["relevant_ratio_percent"] - target) <= 2.0
        assert (tmp_path / "manifest.json").exists()
        assert manifest["labeling"]["scotus"] == 1
        assert manifest["labeling"]["eurlex"] == 0

    def test_records_match_schema(self, tmp_path):
        prepare(tmp_path, loader=fake_loader, seed=3)
        lines = (tmp_path / "train.jsonl").read_text().splitlines()
        seen = set()
        for line in lines:
            record = json.loads(line)
            assert set(record) == {"id", "text", "label"}
            assert record["label"] in (0, 1)
            assert record["id"] not in seen
            seen.add(record["id"])

    def test_multi_segment_documents_joined(self, tmp_path):
        prepare(tmp_path, loader=fake_loader, seed=3, mode="original")
        records = [json.loads(l) for l in (tmp_path / "train.jsonl").read_text().splitlines()]
        ecthr = [r for r in records if r["id"].startswith("ecthr_a-")]
        assert ecthr and all("\n\n" in r["text"] for r in ecthr)

    def test_original_mode_keeps_every_document(self, tmp_path):
        manifest = prepare(tmp_path, loader=fake_loader, seed=3, mode="original")
        info = manifest["splits"]["train"]
        assert info["n_documents"] == 4 * 40
        assert info["n_relevant"] == 2 * 40

    def test_limit_caps_each_split(self, tmp_path):
        manifest = prepare(tmp_path, loader=fake_loader, seed=3, limit=10)
        assert all(info["n_documents"] == 10 for info in manifest["splits"].values())

    def test_seeded_runs_are_reproducible(self, tmp_path):
        first_dir, second_dir = tmp_path / "a", tmp_path / "b"
        prepare(first_dir, loader=fake_loader, seed=7)
        prepare(second_dir, loader=fake_loader, seed=7)
        for name in ("train.jsonl", "val.jsonl", "test.jsonl", "manifest.json"):
            assert (first_dir / name).read_bytes() == (second_dir / name).read_bytes()
        third_dir = tmp_path / "c"
        prepare(third_dir, loader=fake_loader, seed=8)
        assert (third_dir / "train.jsonl").read_bytes() != (first_dir / "train.jsonl").read_bytes()

    def test_bad_mode_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            prepare(tmp_path, loader=fake_loader, mode="weird")

    def test_with_entities_writes_byte_spans(self, tmp_path):
        def stub_ner(text):
            # tag the literal word "document" wherever it appears
            spans = []
            start = 0
            while (at := text.find("document", start)) != -1:
                spans.append((at, at + len("document")))
                start = at + 1
            return spans

        prepare(tmp_path, loader=fake_loader, seed=3, with_entities=True, ner=stub_ner, limit=5)
        records = [json.loads(l) for l in (tmp_path / "train.jsonl").read_text().splitlines()]
        assert all("entities" in r for r in records)
        tagged = [r for r in records if r["entities"]]
        assert tagged
        for record in tagged:
            for start, end in record["entities"]:
                assert record["text"].encode("utf-8")[start:end] == b"document"


class TestPrimaryCompatibility:
    """Emitted corpora are consumed through the primary package's JSONL interface."""

    def test_corpora_pass_core_loader_without_warnings(self, tmp_path):
        lexrel = pytest.importorskip("lexrel")
        prepare(tmp_path, loader=fake_loader, seed=3)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            for split in ("train", "val", "test"):
                corpus = lexrel.load_corpus(tmp_path / f"{split}.jsonl")
                assert corpus.n_positive >= 1 and corpus.n_negative >= 1

    def test_entity_spans_feed_sidecar_preprocessing(self, tmp_path):
        lexrel = pytest.importorskip("lexrel")

        def stub_ner(text):
            at = text.find("doc")
            return [(at, at + 3)] if at != -1 else []

        prepare(tmp_path, loader=fake_loader, seed=3, with_entities=True, ner=stub_ner, limit=5)
        corpus = lexrel.load_corpus(tmp_path / "train.jsonl")
        config = lexrel.PreprocessConfig(entity_source=lexrel.EntitySource.SIDECAR)
        for doc in corpus:
            stream = lexrel.preprocess_document(doc, config)
            assert all("doc" not in token for seg in stream.segments for token in seg)
