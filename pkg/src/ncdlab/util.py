"""Small shared helpers."""

from __future__ import annotations

import hashlib


def derive_seed(*parts: object) -> int:
    """Stable 63-bit seed derived from arbitrary key parts.

    Uses a keyed digest of the stringified parts, so the result is
    reproducible across runs and platforms (unlike ``hash()``).
    """
    key = "\x1f".join(str(p) for p in parts).encode("utf-8", "surrogateescape")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1
