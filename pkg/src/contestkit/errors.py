"""Shared exception types.

Every error that user input can trigger maps onto one of these classes so
the CLI and the HTTP service can translate them uniformly (CLI exit code 1 /
HTTP 400 for bad input, HTTP 404 for unknown ids, HTTP 409 for schema
version mismatches).
"""

from __future__ import annotations


class ContestkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(ContestkitError):
    """Invalid user-supplied data (bad file, bad field, bad argument).

    ``field`` optionally names the offending field using dotted-path
    notation, e.g. ``answers.traceability.levels[3]``.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.message = message
        self.field = field


class UnknownIdError(ContestkitError):
    """A document id that does not exist in the workspace."""

    def __init__(self, kind: str, document_id: str):
        super().__init__(f"no {kind} with id {document_id!r}")
        self.kind = kind
        self.document_id = document_id


class SchemaVersionError(ContestkitError):
    """A document whose schema_version this build does not understand."""

    def __init__(self, found: object, expected: str):
        super().__init__(
            f"unsupported schema_version {found!r}; this build reads version "
            f"{expected!r} (migrate the document or upgrade the toolkit)"
        )
        self.found = found
        self.expected = expected


class UndefinedValueError(ContestkitError):
    """An aggregate that is mathematically undefined for the given data."""

    def __init__(self, message: str, subjects: tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.subjects = subjects
