"""Error vocabulary shared by the engine, the CLI, and the HTTP service.

Every failure surfaced to a caller carries a stable ``code`` string so that
JSON error bodies, CLI output, and exception handling all speak the same
language.
"""

from __future__ import annotations


class IqroError(Exception):
    """Base class for all engine errors; ``code`` is the stable identifier."""

    code = "E_INTERNAL"

    def __init__(self, message: str, *, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path


class UnknownItemError(IqroError):
    code = "E_UNKNOWN_ITEM"


class UnknownLessonError(IqroError):
    code = "E_UNKNOWN_LESSON"


class ManifestSyntaxError(IqroError):
    code = "E_SYNTAX"


class SchemaError(IqroError):
    code = "E_SCHEMA"


class DuplicateIdError(IqroError):
    code = "E_DUPLICATE_ID"


class DanglingRefError(IqroError):
    code = "E_DANGLING_REF"


class BadVersionError(IqroError):
    code = "E_BAD_VERSION"


class BadTransitionError(IqroError):
    code = "E_BAD_TRANSITION"


class GridIndexError(IqroError):
    code = "E_INDEX"


class PoolTooSmallError(IqroError):
    code = "E_POOL_TOO_SMALL"


class SessionFinishedError(IqroError):
    code = "E_SESSION_FINISHED"


class SessionInProgressError(IqroError):
    code = "E_SESSION_IN_PROGRESS"


class BadOptionError(IqroError):
    code = "E_BAD_OPTION"


class CorruptProgressError(IqroError):
    code = "E_CORRUPT"


class LockedLessonError(IqroError):
    code = "E_LOCKED"


# Service-level failures (no engine operation maps to these, but HTTP needs them).


class UnknownSessionError(IqroError):
    code = "E_UNKNOWN_SESSION"


class UnknownAssetError(IqroError):
    code = "E_UNKNOWN_ASSET"


class BadPathError(IqroError):
    code = "E_BAD_PATH"
