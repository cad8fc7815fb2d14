"""Row fetching from the public dataset host's rows API.

The loader protocol is a callable ``loader(subset, split) -> list`` of
raw ``text`` values (strings, or paragraph lists for multi-segment
documents); anything satisfying it can replace the HTTP loader, which is
how tests run offline.
"""

from __future__ import annotations

from typing import Optional

import requests

from .errors import DownloadFailureError
from .subsets import label_for

DATASET_ID = "coastalcph/lex_glue"
ROWS_ENDPOINT = "https://datasets-server.huggingface.co/rows"
INFO_ENDPOINT = "https://huggingface.co/api/datasets/" + DATASET_ID
PAGE_SIZE = 100


class HttpRowsLoader:
    """Page through the rows API for one subset/split at a time."""

    def __init__(self, session: Optional[requests.Session] = None, page_size: int = PAGE_SIZE):
        self.session = session or requests.Session()
        self.page_size = page_size

    def __call__(self, subset: str, split: str) -> list:
        label_for(subset)  # reject unknown/excluded subsets before any traffic
        texts = []
        offset = 0
        total = None
        while total is None or offset < total:
            payload = self._get_page(subset, split, offset)
            total = payload.get("num_rows_total", 0)
            rows = payload.get("rows", [])
            if not rows:
                break
            for row in rows:
                texts.append(row["row"]["text"])
            offset += len(rows)
        return texts

    def _get_page(self, subset: str, split: str, offset: int) -> dict:
        params = {
            "dataset": DATASET_ID,
            "config": subset,
            "split": split,
            "offset": offset,
            "length": self.page_size,
        }
        try:
            response = self.session.get(ROWS_ENDPOINT, params=params, timeout=120)
            response.raise_for_status()
            return response.json()
        except (requests.RequestException, ValueError) as exc:
            raise DownloadFailureError(
                f"fetching {subset}/{split} at offset {offset} failed: {exc}"
            ) from exc

    def describe(self) -> dict:
        """Source metadata for the manifest; the revision is best-effort."""
        revision = None
        try:
            response = self.session.get(INFO_ENDPOINT, timeout=30)
            if response.ok:
                revision = response.json().get("sha")
        except requests.RequestException:
            pass
        return {"dataset": DATASET_ID, "endpoint": ROWS_ENDPOINT, "revision": revision}
