"""Small shared helpers."""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, *labels: object) -> int:
    """A 64-bit seed derived deterministically from a base seed and labels."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(seed)).encode())
    for lab in labels:
        h.update(b"\x00")
        h.update(repr(lab).encode())
    return int.from_bytes(h.digest(), "big")
