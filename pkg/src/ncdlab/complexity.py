"""NCD computation, NCD matrices, size caching, and complexity estimates.

NCD(x, y) = max{C(xy) - C(x), C(yx) - C(y)} / max{C(x), C(y)}, where C is
a compressor's output size in bytes and xy is byte concatenation. Values
near 0 mean similar, near 1 dissimilar; real compressors may slightly
exceed 1, so bound checks allow a configurable slack epsilon.
"""

from __future__ import annotations

import dataclasses
import hashlib
import logging
import statistics
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np

from .compressors import Compressor
from .corpus import Document
from .errors import CompressionError

__all__ = ["SizeCache", "NcdMatrix", "ncd", "ncd_matrix", "ComplexityStats", "complexity_stats"]

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.1


class SizeCache:
    """Memoizes compressed sizes, keyed by (compressor name, content digest).

    With a ``path`` the cache persists as an append-only text file of
    ``name<TAB>sha256<TAB>size`` lines; it is safe to delete at any time.
    Thread-safe; a hit returns exactly what a fresh compression would.
    """

    def __init__(self, path: str | Path | None = None):
        self._entries: dict[tuple[str, str], int] = {}
        self._lock = threading.Lock()
        self._path = Path(path) if path is not None else None
        if self._path is not None and self._path.exists():
            self._load()

    def _load(self) -> None:
        for line in self._path.read_text(encoding="ascii", errors="replace").splitlines():
            parts = line.split("\t")
            if len(parts) != 3:
                continue  # tolerate a truncated final line
            try:
                self._entries[(parts[0], parts[1])] = int(parts[2])
            except ValueError:
                continue

    def __len__(self) -> int:
        return len(self._entries)

    def compressed_size(self, compressor: Compressor, data: bytes) -> int:
        key = (compressor.name, hashlib.sha256(data).hexdigest())
        with self._lock:
            hit = self._entries.get(key)
        if hit is not None:
            return hit
        size = compressor.compressed_size(data)
        with self._lock:
            self._entries[key] = size
            if self._path is not None:
                with self._path.open("a", encoding="ascii") as fh:
                    fh.write(f"{key[0]}\t{key[1]}\t{size}\n")
        return size


@dataclasses.dataclass(frozen=True)
class NcdMatrix:
    """Symmetric pairwise NCD values over an ordered set of document ids.

    The diagonal holds NCD(x, x) for reference but is excluded from
    clustering input. Entries outside [0, 1 + epsilon] are reported by
    :meth:`out_of_bounds` and logged when the matrix is built.
    """

    labels: tuple[str, ...]
    values: np.ndarray
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        n = len(self.labels)
        if self.values.shape != (n, n):
            raise ValueError(f"matrix shape {self.values.shape} != ({n}, {n})")
        if len(set(self.labels)) != n:
            raise ValueError("matrix labels must be unique")
        self.values.setflags(write=False)

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def out_of_bounds(self) -> list[tuple[str, str, float]]:
        """Off-diagonal entries outside [0, 1 + epsilon], with their pair."""
        bad = []
        n = len(self.labels)
        for i in range(n):
            for j in range(i + 1, n):
                v = float(self.values[i, j])
                if not 0.0 <= v <= 1.0 + self.epsilon:
                    bad.append((self.labels[i], self.labels[j], v))
        return bad

    def clustering_values(self) -> np.ndarray:
        """A writable copy with the diagonal zeroed, for tree builders."""
        out = self.values.copy()
        np.fill_diagonal(out, 0.0)
        return out

    def to_tsv(self) -> str:
        lines = ["\t".join(("id",) + self.labels)]
        for i, label in enumerate(self.labels):
            row = "\t".join(repr(float(v)) for v in self.values[i])
            lines.append(f"{label}\t{row}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str, epsilon: float = DEFAULT_EPSILON) -> "NcdMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = lines[0].split("\t")
        if header[0] != "id":
            raise ValueError("matrix TSV must start with an 'id' header column")
        labels = tuple(header[1:])
        values = np.zeros((len(labels), len(labels)))
        for i, line in enumerate(lines[1:]):
            parts = line.split("\t")
            if parts[0] != labels[i] or len(parts) != len(labels) + 1:
                raise ValueError(f"malformed matrix row {i}: {line!r}")
            values[i] = [float(p) for p in parts[1:]]
        return cls(labels, values, epsilon)


def _size_or_raise(
    cache: SizeCache, compressor: Compressor, data: bytes, what: str
) -> int:
    try:
        return cache.compressed_size(compressor, data)
    except Exception as exc:
        raise CompressionError(f"{compressor.name} failed on {what}: {exc}") from exc


def ncd(
    compressor: Compressor,
    x: bytes,
    y: bytes,
    cache: SizeCache | None = None,
) -> float:
    """Normalized compression distance between two byte sequences."""
    if not x or not y:
        raise ValueError("ncd requires non-empty inputs")
    cache = cache if cache is not None else SizeCache()
    cx = _size_or_raise(cache, compressor, x, "first input")
    cy = _size_or_raise(cache, compressor, y, "second input")
    cxy = _size_or_raise(cache, compressor, x + y, "concatenation xy")
    cyx = _size_or_raise(cache, compressor, y + x, "concatenation yx")
    return max(cxy - cx, cyx - cy) / max(cx, cy)


def ncd_matrix(
    compressor: Compressor,
    docs: Sequence[Document],
    cache: SizeCache | None = None,
    *,
    jobs: int = 1,
    epsilon: float = DEFAULT_EPSILON,
) -> NcdMatrix:
    """Pairwise NCD matrix over ``docs``.

    Each single-document size is compressed once (cache-backed) and both
    concatenation orders are measured per unordered pair. The result is
    exactly symmetric because each pair is computed once and mirrored.
    """
    if len(docs) < 2:
        raise ValueError("ncd_matrix requires at least 2 documents")
    labels = tuple(d.id for d in docs)
    if len(set(labels)) != len(labels):
        raise ValueError("document ids must be unique")
    for d in docs:
        if not d.text:
            raise ValueError(f"document {d.id!r} is empty")
    cache = cache if cache is not None else SizeCache()
    n = len(docs)
    texts = [d.text for d in docs]

    def single(i: int) -> int:
        return _size_or_raise(cache, compressor, texts[i], f"document {labels[i]!r}")

    def pair(i: int, j: int) -> float:
        what = f"pair ({labels[i]!r}, {labels[j]!r})"
        cxy = _size_or_raise(cache, compressor, texts[i] + texts[j], what)
        cyx = _size_or_raise(cache, compressor, texts[j] + texts[i], what)
        return max(cxy - sizes[i], cyx - sizes[j]) / max(sizes[i], sizes[j])

    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            sizes = list(pool.map(single, range(n)))
            entries = list(pool.map(lambda ij: pair(*ij), pairs))
    else:
        sizes = [single(i) for i in range(n)]
        entries = [pair(i, j) for i, j in pairs]

    values = np.zeros((n, n))
    for (i, j), v in zip(pairs, entries):
        values[i, j] = v
        values[j, i] = v
    matrix = NcdMatrix(labels, values, epsilon)
    for a, b, v in matrix.out_of_bounds():
        logger.warning("NCD(%s, %s) = %.4f outside [0, %.2f]", a, b, v, 1 + epsilon)
    return matrix


@dataclasses.dataclass(frozen=True)
class ComplexityStats:
    """Per-document compressed sizes (bytes) and their mean."""

    per_doc: tuple[tuple[str, int], ...]
    mean: float


def complexity_stats(
    compressor: Compressor,
    docs: Sequence[Document],
    cache: SizeCache | None = None,
) -> ComplexityStats:
    """Compressed size of each document: the Kolmogorov-complexity estimate."""
    if not docs:
        raise ValueError("complexity_stats requires a non-empty corpus")
    cache = cache if cache is not None else SizeCache()
    per_doc = tuple(
        (d.id, _size_or_raise(cache, compressor, d.text, f"document {d.id!r}"))
        for d in docs
    )
    return ComplexityStats(per_doc, statistics.fmean(size for _, size in per_doc))
