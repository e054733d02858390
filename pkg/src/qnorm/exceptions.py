"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class QNormError(Exception):
    """Base class for every error raised by qnorm."""


class RangeError(QNormError, IndexError):
    """A position or factor lies outside the word."""


class ConfigurationError(QNormError, ValueError):
    """An operation needs data the system does not provide (e.g. a neutral letter)."""


class ParseError(QNormError, ValueError):
    """Malformed input file; `location` points at the offending item."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        text = f"{location}: {message}" if location else message
        super().__init__(text)


class PreconditionError(QNormError):
    """The input does not satisfy what the requested operation relies on."""


class NormalisationError(QNormError):
    """Base for failures while computing a normal form."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NonNormalisingError(NormalisationError):
    """No invariant word is reachable; `witness` is a closed rewriting walk."""


class NonConfluentError(NormalisationError):
    """Two distinct invariant words are reachable; `witness` holds both."""


class StrategyCycleError(NormalisationError):
    """A deterministic strategy revisited a word."""


class BudgetExceededError(NormalisationError):
    """A step or exploration budget ran out before a verdict."""


class FragmentIntegrityError(QNormError):
    """A Garside fragment table is inconsistent."""
