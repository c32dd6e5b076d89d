"""Exception types shared across the catalog, engine, CLI, and service layers.

Every failure surfaces as a :class:`TrainCarbonError` subclass so front ends
can map error classes to exit codes / HTTP statuses without string matching.
"""

from __future__ import annotations


class TrainCarbonError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(TrainCarbonError):
    """A dataset file could not be parsed.

    Carries the 1-based physical line number of the offending row and,
    where it can be pinned down, the column name.
    """

    def __init__(self, message: str, *, row: int | None = None, column: str | None = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DuplicateKeyError(IngestError):
    """Two entries share a key that must be unique within a catalog."""


class EmptyCatalogError(TrainCarbonError):
    """A catalog was built from an empty region or hardware collection."""


class RangeError(TrainCarbonError):
    """A numeric value violates its documented bounds.

    ``field`` names the offending attribute so ingestion can report the
    CSV column.
    """

    def __init__(self, message: str, *, field: str | None = None):
        self.field = field
        super().__init__(message)


class NotFoundError(TrainCarbonError):
    """A region or hardware lookup missed; carries nearby keys as suggestions."""

    def __init__(self, message: str, *, suggestions: tuple[str, ...] = ()):
        self.suggestions = suggestions
        if suggestions:
            message = f"{message} (closest matches: {', '.join(suggestions)})"
        super().__init__(message)


class EmptyComparisonError(TrainCarbonError):
    """A region comparison was requested over an empty region set."""


class ConfigurationError(TrainCarbonError):
    """Supporting configuration (geo map, equivalence factors) is unusable."""
