"""The four ingested subsets and their binary relevance labels.

Court-proceeding subsets (European court cases, US Supreme Court
opinions) are relevant; legislation and terms-of-service subsets are
irrelevant.  The QA-centric and contract-provision subsets are never
ingested.
"""

from .errors import UnknownSubsetError

# subset name (dataset config name) -> label, 1 = relevant
SUBSET_LABELING = {
    "ecthr_a": 1,
    "scotus": 1,
    "eurlex": 0,
    "unfair_tos": 0,
}

EXCLUDED_SUBSETS = ("case_hold", "ledgar")

# dataset split name -> output corpus name
SPLITS = {"train": "train", "validation": "val", "test": "test"}


def label_for(subset: str) -> int:
    try:
        return SUBSET_LABELING[subset]
    except KeyError:
        raise UnknownSubsetError(
            f"subset {subset!r} is not ingested (known: {sorted(SUBSET_LABELING)}; "
            f"excluded by design: {EXCLUDED_SUBSETS})"
        ) from None


def join_text(raw) -> str:
    """Multi-segment documents (paragraph lists) join with blank lines."""
    if isinstance(raw, (list, tuple)):
        return "\n\n".join(str(part) for part in raw)
    return str(raw)
