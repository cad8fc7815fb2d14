"""Exception types raised across the pipeline.

Errors caused by bad user input (malformed corpora, mismatched artifacts,
misconfiguration) derive from :class:`InputError`; the CLI maps those to
exit code 2 and everything else to exit code 1.
"""


class LexrelError(Exception):
    """Base class for all package errors."""


class InputError(LexrelError):
    """Bad user-supplied input or configuration (CLI exit code 2)."""


# corpus ---------------------------------------------------------------

class MalformedLineError(InputError):
    def __init__(self, line_no, reason=""):
        self.line_no = line_no
        msg = f"malformed record at line {line_no}"
        super().__init__(f"{msg}: {reason}" if reason else msg)


class DuplicateIdError(InputError):
    def __init__(self, doc_id):
        self.doc_id = doc_id
        super().__init__(f"duplicate document id {doc_id!r}")


class MissingLabelError(InputError):
    def __init__(self, doc_id):
        self.doc_id = doc_id
        super().__init__(f"document {doc_id!r} has no label but labels are required")


class EmptyCorpusError(InputError):
    pass


# preprocess -----------------------------------------------------------

class SpanOutOfBoundsError(InputError):
    pass


class OverlappingSpansError(InputError):
    pass


# keyword extraction / scoring -----------------------------------------

class BothClassesRequiredError(InputError):
    """Keyword extraction is contrastive; it needs both classes present."""


class NoKeywordsSelectedError(InputError):
    """Selection produced an empty keyword list (score_min too high?)."""


# features / classifier --------------------------------------------------

class DimensionMismatchError(InputError):
    pass


class SingleClassTrainingSetError(InputError):
    pass


class NonFiniteLossError(LexrelError):
    """Training diverged; the caller should reduce the learning rate."""


class CorruptModelFileError(InputError):
    pass


class VersionMismatchError(InputError):
    pass


# evaluation -----------------------------------------------------------

class LengthMismatchError(InputError):
    pass


class EmptyKeywordFileError(InputError):
    pass


class InsufficientKeywordsError(InputError):
    pass


# cli ------------------------------------------------------------------

class ConfigError(InputError):
    pass
