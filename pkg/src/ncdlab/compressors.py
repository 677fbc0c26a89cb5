"""Compressor abstraction: anything with a name and a compressed_size().

The default is LZMA with a 64 MiB dictionary, which keeps the whole
concatenated pair inside the compressor's window for book-sized inputs.
bz2 (900 KiB blocks) and gzip/zlib (32 KiB window) are provided as
alternates, but note that a small window degrades NCD badly on inputs
larger than the window: the compressor stops "seeing" the first document
while coding the second.
"""

from __future__ import annotations

import bz2
import gzip
import lzma
import zlib
from typing import Protocol

from .errors import CompressionError

__all__ = [
    "Compressor",
    "LzmaCompressor",
    "Bz2Compressor",
    "GzipCompressor",
    "ZlibCompressor",
    "get_compressor",
]

# Floor on the LZMA dictionary so NCD pairs fit the window at any preset.
_LZMA_DICT_SIZE = 1 << 26


class Compressor(Protocol):
    """Deterministic lossless compressor measured by output byte count."""

    name: str

    def compressed_size(self, data: bytes) -> int: ...


class LzmaCompressor:
    """LZMA (legacy .lzma container) with a fixed 64 MiB dictionary.

    ``preset`` trades speed for ratio (1 = fast scan, 9 = maximum effort);
    the dictionary size is pinned independently of the preset so the NCD
    window always covers a concatenated pair.
    """

    def __init__(self, preset: int = 9, extreme: bool = False):
        if not 0 <= preset <= 9:
            raise ValueError(f"preset must be 0-9, got {preset}")
        self.preset = preset
        self.extreme = extreme
        flags = preset | (lzma.PRESET_EXTREME if extreme else 0)
        self._filters = [
            {"id": lzma.FILTER_LZMA1, "preset": flags, "dict_size": _LZMA_DICT_SIZE}
        ]
        self.name = f"lzma{preset}{'e' if extreme else ''}"

    def compressed_size(self, data: bytes) -> int:
        return len(
            lzma.compress(data, format=lzma.FORMAT_ALONE, filters=self._filters)
        )


class Bz2Compressor:
    """bzip2; block-sorting with at most 900 KiB blocks."""

    def __init__(self, level: int = 9):
        if not 1 <= level <= 9:
            raise ValueError(f"level must be 1-9, got {level}")
        self.level = level
        self.name = f"bz2-{level}"

    def compressed_size(self, data: bytes) -> int:
        return len(bz2.compress(data, self.level))


class GzipCompressor:
    """gzip container over deflate; 32 KiB window (poor NCD beyond that)."""

    def __init__(self, level: int = 9):
        if not 1 <= level <= 9:
            raise ValueError(f"level must be 1-9, got {level}")
        self.level = level
        self.name = f"gzip-{level}"

    def compressed_size(self, data: bytes) -> int:
        # mtime pinned so output is deterministic.
        return len(gzip.compress(data, compresslevel=self.level, mtime=0))


class ZlibCompressor:
    """Raw zlib stream; 32 KiB window (poor NCD beyond that)."""

    def __init__(self, level: int = 9):
        if not 1 <= level <= 9:
            raise ValueError(f"level must be 1-9, got {level}")
        self.level = level
        self.name = f"zlib-{level}"

    def compressed_size(self, data: bytes) -> int:
        return len(zlib.compress(data, self.level))


def get_compressor(spec: str = "lzma") -> Compressor:
    """Build a compressor from a spec string.

    Formats: ``lzma`` (preset 9), ``lzma:<preset>[e]`` (e = extreme),
    ``bz2[:level]``, ``gzip[:level]``, ``zlib[:level]``.
    """
    name, _, arg = spec.partition(":")
    try:
        if name == "lzma":
            if not arg:
                return LzmaCompressor()
            extreme = arg.endswith("e")
            return LzmaCompressor(int(arg.rstrip("e")), extreme=extreme)
        if name == "bz2":
            return Bz2Compressor(int(arg) if arg else 9)
        if name == "gzip":
            return GzipCompressor(int(arg) if arg else 9)
        if name == "zlib":
            return ZlibCompressor(int(arg) if arg else 9)
    except ValueError as exc:
        raise ValueError(f"bad compressor spec {spec!r}: {exc}") from None
    raise ValueError(
        f"unknown compressor {name!r}; expected lzma, bz2, gzip, or zlib"
    )
