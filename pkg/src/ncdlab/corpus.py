"""Documents, word-frequency tables, and span-exact tokenization.

A corpus is a list of :class:`Document` objects, each carrying raw bytes plus
a group tag (author acronym) and title tag. Document ids follow the
``<group>.<title>`` convention used for dendrogram leaf labels.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Iterable

from .errors import EncodingError, FrequencyTableError, ManifestError

__all__ = [
    "Document",
    "WordOccurrence",
    "FrequencyTable",
    "tokenize",
    "load_frequency_table",
    "load_corpus",
]


@dataclasses.dataclass(frozen=True)
class Document:
    """An identified text; the unit of clustering."""

    id: str
    group_tag: str
    title_tag: str
    text: bytes

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not self.group_tag:
            raise ValueError(f"document {self.id!r} has an empty group tag")


@dataclasses.dataclass(frozen=True)
class WordOccurrence:
    """One tokenizer hit: the byte span [start, end) and its lowercased form."""

    start: int
    end: int
    normalized: str


_LETTERS = frozenset(b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_APOSTROPHE = 0x27


def tokenize(text: bytes) -> list[WordOccurrence]:
    """Split ``text`` into word occurrences with exact byte spans.

    A word is a maximal run of ASCII letters, where an apostrophe is kept
    only when flanked by letters on both sides ("quixote's" is one word,
    "'tis" tokenizes as "tis"). Everything else is a gap. Input must be
    ASCII; the first offending byte raises :class:`EncodingError`.
    """
    for off, b in enumerate(text):
        if b >= 0x80:
            raise EncodingError(off, b)
    occurrences: list[WordOccurrence] = []
    i, n = 0, len(text)
    while i < n:
        if text[i] not in _LETTERS:
            i += 1
            continue
        j = i + 1
        while j < n:
            if text[j] in _LETTERS:
                j += 1
            elif text[j] == _APOSTROPHE and j + 1 < n and text[j + 1] in _LETTERS:
                j += 2
            else:
                break
        occurrences.append(WordOccurrence(i, j, text[i:j].lower().decode("ascii")))
        i = j
    return occurrences


@dataclasses.dataclass(frozen=True)
class FrequencyTable:
    """Word -> corpus frequency mass; drives distortion word selection."""

    entries: dict[str, float]
    total_mass: float = dataclasses.field(init=False)

    def __post_init__(self):
        if not self.entries:
            raise FrequencyTableError("frequency table is empty")
        for word, mass in self.entries.items():
            if mass <= 0:
                raise FrequencyTableError(f"word {word!r} has non-positive mass {mass}")
        object.__setattr__(self, "total_mass", sum(self.entries.values()))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def _parse_mass(token: str) -> float:
    try:
        return int(token)
    except ValueError:
        return float(token)


def load_frequency_table(source: str | Path | Iterable[str]) -> FrequencyTable:
    """Load a ``word<whitespace>mass`` frequency list.

    ``#`` lines are comments and blank lines are skipped. Words are
    lowercased on ingest and duplicate masses are summed; zero-mass lines
    are dropped. Malformed lines raise :class:`FrequencyTableError` with
    the line number.
    """
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    else:
        lines = list(source)
    entries: dict[str, float] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FrequencyTableError(
                f"expected 'word<whitespace>mass', got {raw!r}", line=lineno
            )
        word = parts[0].lower()
        try:
            mass = _parse_mass(parts[1])
        except ValueError:
            raise FrequencyTableError(
                f"mass {parts[1]!r} is not a number", line=lineno
            ) from None
        if mass < 0:
            raise FrequencyTableError(f"negative mass {mass}", line=lineno)
        if mass == 0:
            continue
        entries[word] = entries.get(word, 0) + mass
    if not entries:
        raise FrequencyTableError("frequency table is empty")
    return FrequencyTable(entries)


def _manifest_records(manifest: Path) -> list[tuple[Path, str, str]]:
    records = []
    for lineno, raw in enumerate(
        manifest.read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ManifestError(
                f"{manifest}:{lineno}: expected 'path<TAB>group<TAB>title', got {raw!r}"
            )
        path, group, title = (p.strip() for p in parts)
        if not group or not title:
            raise ManifestError(f"{manifest}:{lineno}: empty group or title tag")
        records.append((manifest.parent / path, group, title))
    return records


def _directory_records(directory: Path) -> list[tuple[Path, str, str]]:
    records = []
    for path in sorted(directory.glob("*.txt")):
        stem = path.stem
        group, dot, title = stem.partition(".")
        if not dot or not group or not title:
            raise ManifestError(
                f"{path}: file name must look like '<group>.<title>.txt'"
            )
        records.append((path, group, title))
    return records


def load_corpus(source: str | Path) -> list[Document]:
    """Load documents from a manifest file or a directory.

    A manifest is tab-separated text with one ``path<TAB>group<TAB>title``
    record per document (paths relative to the manifest). A directory is
    scanned for ``<group>.<title>.txt`` files. Ids are ``<group>.<title>``
    and must be unique.
    """
    path = Path(source)
    if path.is_dir():
        records = _directory_records(path)
    elif path.is_file():
        records = _manifest_records(path)
    else:
        raise ManifestError(f"corpus source {path} does not exist")
    if not records:
        raise ManifestError(f"no documents found in {path}")
    documents: list[Document] = []
    seen: set[str] = set()
    for file_path, group, title in records:
        doc_id = f"{group}.{title}"
        if doc_id in seen:
            raise ManifestError(f"duplicate document id {doc_id!r}")
        seen.add(doc_id)
        try:
            text = file_path.read_bytes()
        except OSError as exc:
            raise ManifestError(f"cannot read {file_path}: {exc}") from exc
        documents.append(Document(doc_id, group, title, text))
    return documents
