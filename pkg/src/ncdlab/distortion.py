"""Frequency-driven word replacement.

Six methods = three selection orders (most frequent first, least frequent
first, seeded random permutation) x two substitution modes (asterisks,
seeded random lowercase letters). All of them preserve document length
byte-for-byte.
"""

from __future__ import annotations

import dataclasses
import random

from .corpus import Document, FrequencyTable, tokenize
from .util import derive_seed

__all__ = [
    "MostFrequentFirst",
    "LeastFrequentFirst",
    "RandomPermutation",
    "SelectionOrder",
    "Asterisk",
    "RandomChars",
    "SubstitutionMode",
    "DistortionSpec",
    "select_words",
    "distort",
    "apply_spec",
    "make_order",
    "make_mode",
    "order_name",
    "mode_name",
]


@dataclasses.dataclass(frozen=True)
class MostFrequentFirst:
    """Arrange words by descending mass (ties broken lexicographically)."""


@dataclasses.dataclass(frozen=True)
class LeastFrequentFirst:
    """Arrange words by ascending mass (ties broken lexicographically)."""


@dataclasses.dataclass(frozen=True)
class RandomPermutation:
    """Arrange words in a seeded uniform random order."""

    seed: int = 0


SelectionOrder = MostFrequentFirst | LeastFrequentFirst | RandomPermutation


@dataclasses.dataclass(frozen=True)
class Asterisk:
    """Replace every character of a selected word with ``*``."""


@dataclasses.dataclass(frozen=True)
class RandomChars:
    """Replace every character with an independent uniform letter a-z.

    The per-document stream is seeded from ``(seed, document id)``, so
    results do not depend on the order documents are processed in.
    """

    seed: int = 0


SubstitutionMode = Asterisk | RandomChars


@dataclasses.dataclass(frozen=True)
class DistortionSpec:
    """One point in the experiment grid: order, mode, and mass fraction p."""

    order: SelectionOrder
    mode: SubstitutionMode
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")


def _arrangement(
    table: FrequencyTable, order: SelectionOrder
) -> list[tuple[str, float]]:
    items = table.entries.items()
    if isinstance(order, MostFrequentFirst):
        return sorted(items, key=lambda kv: (-kv[1], kv[0]))
    if isinstance(order, LeastFrequentFirst):
        return sorted(items, key=lambda kv: (kv[1], kv[0]))
    if isinstance(order, RandomPermutation):
        words = sorted(table.entries)
        random.Random(order.seed).shuffle(words)
        return [(w, table.entries[w]) for w in words]
    raise TypeError(f"unknown selection order {order!r}")


def select_words(
    table: FrequencyTable, order: SelectionOrder, p: float
) -> frozenset[str]:
    """Shortest prefix of the arranged word list with cumulative mass >= p*total.

    ``p=0`` selects nothing; ``p=1`` selects the whole table.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    target = p * table.total_mass
    selected: set[str] = set()
    cumulative = 0.0
    for word, mass in _arrangement(table, order):
        if cumulative >= target:
            break
        selected.add(word)
        cumulative += mass
    return frozenset(selected)


def distort(doc: Document, words: frozenset[str] | set[str], mode: SubstitutionMode) -> Document:
    """Replace every character of each occurrence of ``words`` in ``doc``.

    Matching is case-insensitive against the occurrence's normalized form;
    the replacement overwrites the original-cased span. Output length
    equals input length exactly; tags are preserved.
    """
    spans = [occ for occ in tokenize(doc.text) if occ.normalized in words]
    if not spans:
        return doc
    buf = bytearray(doc.text)
    if isinstance(mode, Asterisk):
        for occ in spans:
            buf[occ.start : occ.end] = b"*" * (occ.end - occ.start)
    elif isinstance(mode, RandomChars):
        rng = random.Random(derive_seed(mode.seed, doc.id))
        for occ in spans:
            for k in range(occ.start, occ.end):
                buf[k] = 0x61 + rng.randrange(26)
    else:
        raise TypeError(f"unknown substitution mode {mode!r}")
    return Document(doc.id, doc.group_tag, doc.title_tag, bytes(buf))


def apply_spec(
    corpus: list[Document], table: FrequencyTable, spec: DistortionSpec
) -> list[Document]:
    """Select words once, then distort every document with the same set."""
    words = select_words(table, spec.order, spec.p)
    return [distort(doc, words, spec.mode) for doc in corpus]


_ORDER_NAMES = {"most": MostFrequentFirst, "least": LeastFrequentFirst}
_MODE_NAMES = {"asterisk": Asterisk}


def make_order(name: str, seed: int = 0) -> SelectionOrder:
    """Build a selection order from its CLI name: most, least, or random."""
    if name == "random":
        return RandomPermutation(seed)
    try:
        return _ORDER_NAMES[name]()
    except KeyError:
        raise ValueError(f"unknown order {name!r}; expected most, least, random") from None


def make_mode(name: str, seed: int = 0) -> SubstitutionMode:
    """Build a substitution mode from its CLI name: asterisk or random_chars."""
    if name == "random_chars":
        return RandomChars(seed)
    try:
        return _MODE_NAMES[name]()
    except KeyError:
        raise ValueError(
            f"unknown mode {name!r}; expected asterisk, random_chars"
        ) from None


def order_name(order: SelectionOrder) -> str:
    if isinstance(order, MostFrequentFirst):
        return "most"
    if isinstance(order, LeastFrequentFirst):
        return "least"
    return "random"


def mode_name(mode: SubstitutionMode) -> str:
    return "asterisk" if isinstance(mode, Asterisk) else "random_chars"
