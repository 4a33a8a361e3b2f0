"""Seed derivation: every random stream is a pure function of (seed, labels)."""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, *labels) -> int:
    h = hashlib.sha256(repr((int(seed),) + tuple(str(x) for x in labels)).encode())
    return int.from_bytes(h.digest()[:8], "big")


def derive_rng(seed: int, *labels) -> random.Random:
    return random.Random(derive_seed(seed, *labels))
