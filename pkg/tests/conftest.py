import json

import pytest

from lexrel.corpus import load_corpus


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")


@pytest.fixture
def tiny_corpus_path(tmp_path):
    """Four labeled documents with an obvious positive-only phrase."""
    path = tmp_path / "tiny.jsonl"
    write_jsonl(
        path,
        [
            {"id": "a", "text": "motion to dismiss was granted by the court", "label": 1},
            {"id": "b", "text": "motion to dismiss denied on appeal", "label": 1},
            {"id": "c", "text": "the quarterly report shows revenue growth", "label": 0},
            {"id": "d", "text": "company newsletter about revenue and growth", "label": 0},
        ],
    )
    return path


@pytest.fixture
def tiny_corpus(tiny_corpus_path):
    return load_corpus(tiny_corpus_path)
