"""Exception types shared across the package."""

from __future__ import annotations


class NcdLabError(Exception):
    """Base class for all errors raised by this package."""


class EncodingError(NcdLabError, ValueError):
    """Input text contains a byte outside the supported single-byte range."""

    def __init__(self, offset: int, byte: int):
        self.offset = offset
        self.byte = byte
        super().__init__(
            f"non-ASCII byte 0x{byte:02x} at offset {offset}; "
            "documents must be single-byte ASCII text"
        )


class FrequencyTableError(NcdLabError, ValueError):
    """A word-frequency file could not be parsed or validated."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ManifestError(NcdLabError, ValueError):
    """A corpus manifest is malformed or references bad files."""


class CompressionError(NcdLabError, RuntimeError):
    """A compressor failed; the message names the offending input."""
