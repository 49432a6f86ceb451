"""Deterministic seed derivation shared by every randomized stage.

All randomness in the package flows from a single 64-bit seed. Sub-streams are
derived by hashing the seed together with a context label (stage name, sentence
id, slot index, ...), so independent work items can run in any order and still
reproduce bit-identically.
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

_U64 = 2**64


def check_seed(seed: int) -> int:
    if not isinstance(seed, int) or not 0 <= seed < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


def _digest(seed: int, parts: tuple) -> bytes:
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", seed))
    for part in parts:
        if isinstance(part, int):
            h.update(b"i" + struct.pack("<q", part))
        else:
            raw = str(part).encode("utf-8")
            h.update(b"s" + struct.pack("<I", len(raw)) + raw)
    return h.digest()


def derive_seed(seed: int, *parts) -> int:
    """Derive a sub-seed from `seed` and any mix of str/int context parts."""
    check_seed(seed)
    return struct.unpack("<Q", _digest(seed, parts))[0]


def unit_uniform(seed: int, *parts) -> float:
    """Deterministic uniform draw in [0, 1) keyed by (seed, *parts)."""
    return derive_seed(seed, *parts) / _U64


def make_rng(seed: int, *parts) -> np.random.Generator:
    """Generator seeded from a derived sub-seed; stable across platforms."""
    return np.random.default_rng(derive_seed(seed, *parts))
