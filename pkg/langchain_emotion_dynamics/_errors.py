"""Exceptions raised by the emotion dynamics pipeline."""

from __future__ import annotations

from typing import Optional


class EmotionDynamicsError(ValueError):
    """Base class for data errors raised by this package."""


class ConfigError(EmotionDynamicsError):
    """A run configuration violates its constraints."""


class MalformedLineError(EmotionDynamicsError):
    def __init__(self, line_number: int, detail: str, path: Optional[str] = None):
        self.line_number = line_number
        where = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"Malformed line at {where}: {detail}")


class ScoreOutOfRangeError(EmotionDynamicsError):
    def __init__(
        self,
        term: str,
        score: float,
        low: float,
        high: float,
        line_number: Optional[int] = None,
    ):
        self.term = term
        self.score = score
        self.line_number = line_number
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(
            f"Score {score!r} for {term!r} is outside the range [{low}, {high}]{where}"
        )


class DuplicateEntryError(EmotionDynamicsError):
    def __init__(self, term: str, dimension: str):
        self.term = term
        self.dimension = dimension
        super().__init__(f"Duplicate entry for term {term!r}, dimension {dimension!r}")


class UnknownDimensionError(EmotionDynamicsError):
    def __init__(self, dimension: str, known: list[str]):
        self.dimension = dimension
        super().__init__(
            f"Unknown dimension {dimension!r}; lexicon declares {', '.join(known)}"
        )


class InsufficientEmotionWordsError(EmotionDynamicsError):
    def __init__(self, doc_id: str, found: int, required: int):
        self.doc_id = doc_id
        self.found = found
        self.required = required
        super().__init__(
            f"Document {doc_id!r} has {found} emotion words; at least "
            f"{required} are required"
        )


class NonContiguousIndicesError(EmotionDynamicsError):
    def __init__(self, doc_id: str, index: int):
        self.doc_id = doc_id
        self.index = index
        super().__init__(
            f"Window indices for document {doc_id!r} are not contiguous: "
            f"missing index {index}"
        )


class DuplicateIndexError(EmotionDynamicsError):
    def __init__(self, doc_id: str, index: int):
        self.doc_id = doc_id
        self.index = index
        super().__init__(f"Duplicate window index {index} for document {doc_id!r}")


class EmptyArcError(EmotionDynamicsError):
    """An operation needs at least one arc point."""


class TruncatedDisplacementError(EmotionDynamicsError):
    """A rate was requested that a boundary-truncated displacement cannot define."""


class MissingColumnError(EmotionDynamicsError):
    def __init__(self, column: str, available: list[str]):
        self.column = column
        super().__init__(
            f"Column {column!r} not found; available columns: {', '.join(available)}"
        )


class DuplicateDocIdError(EmotionDynamicsError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"Duplicate document id {doc_id!r}")


class MalformedCsvError(EmotionDynamicsError):
    """A CSV input could not be parsed."""


class MissingSpeakerError(EmotionDynamicsError):
    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(
            f"Document {doc_id!r} has no speaker; speaker mode needs one on every "
            "document"
        )


class DimensionMismatchError(EmotionDynamicsError):
    """Summaries and a reference overlay do not cover the same dimensions."""


class SchemaMismatchError(EmotionDynamicsError):
    """A results file does not have the expected columns."""


class ReservedGroupError(EmotionDynamicsError):
    def __init__(self, group: str):
        self.group = group
        super().__init__(
            f"Group label {group!r} is reserved for the all-documents row of the "
            "corpus statistics"
        )
