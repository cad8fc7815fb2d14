"""One-shot preparation of LexGLUE subsets into binary-relevance JSONL corpora."""

__version__ = "0.1.0"

from .errors import DownloadFailureError, EntityModelUnavailableError, UnknownSubsetError  # noqa: F401
from .prepare import REALISTIC_RATIOS, prepare  # noqa: F401
from .subsets import EXCLUDED_SUBSETS, SUBSET_LABELING  # noqa: F401
