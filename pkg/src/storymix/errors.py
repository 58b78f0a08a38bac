"""Exception taxonomy shared across modules.

Every error carries a stable ``code`` so the CLI and HTTP layer can emit
machine-readable error JSON without string-matching messages.
"""

from __future__ import annotations


class StorymixError(Exception):
    code = "error"

    def payload(self) -> dict:
        return {"error": self.code, "detail": str(self)}


class EmptyBody(StorymixError):
    code = "EmptyBody"


class NotVerbatim(StorymixError):
    code = "NotVerbatim"

    def __init__(self, block_index: int, message: str = ""):
        super().__init__(message or f"candidate block {block_index} not found in story body")
        self.block_index = block_index

    def payload(self) -> dict:
        return {"error": self.code, "detail": str(self), "block_index": self.block_index}


class OutOfOrder(StorymixError):
    code = "OutOfOrder"


class UnboundPlaceholder(StorymixError):
    code = "UnboundPlaceholder"


class NoProvider(StorymixError):
    code = "NoProvider"


class FixtureMiss(StorymixError):
    code = "FixtureMiss"


class SchemaInvalidAfterRetry(StorymixError):
    code = "SchemaInvalidAfterRetry"

    def __init__(self, message: str, raw_outputs: list[str]):
        super().__init__(message)
        self.raw_outputs = raw_outputs


class UnknownCategory(StorymixError):
    code = "UnknownCategory"


class UnparseableList(StorymixError):
    code = "UnparseableList"


class EmptySequence(StorymixError):
    code = "EmptySequence"


class EmptyCorpus(StorymixError):
    code = "EmptyCorpus"


class UnknownDimension(StorymixError):
    code = "UnknownDimension"


class DimensionMismatch(StorymixError):
    code = "DimensionMismatch"


class SpanOutOfRange(StorymixError):
    code = "SpanOutOfRange"


class NoStrategies(StorymixError):
    code = "NoStrategies"


class UnknownRevision(StorymixError):
    code = "UnknownRevision"


class Busy(StorymixError):
    code = "Busy"


class UnknownId(StorymixError):
    code = "UnknownId"
