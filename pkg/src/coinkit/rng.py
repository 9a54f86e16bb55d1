"""Deterministic random-bit streams.

All randomness in the package flows through :class:`BitStream`. A stream is
pinned down by a byte seed plus a derivation label: the pair is hashed with
SHA-256 and the digest seeds the underlying generators. ``child(label)``
derives an independent stream from the same master seed, so one CLI-level seed
fans out into per-component streams reproducibly.

Two engines sit behind one stream, both keyed by the same digest: a Mersenne
Twister for scalar bit draws and a PCG64 generator for vectorized draws. Equal
(seed, label) pairs give byte-identical output on both.
"""

from __future__ import annotations

import hashlib
import os
import random

import numpy as np

from .bits import BitString


def _seed_bytes(seed) -> bytes:
    if seed is None:
        return os.urandom(16)
    if isinstance(seed, (bytes, bytearray)):
        return bytes(seed)
    if isinstance(seed, int):
        if seed < 0:
            raise ValueError("integer seed must be nonnegative")
        return seed.to_bytes(max(1, (seed.bit_length() + 7) // 8), "big")
    if isinstance(seed, str):
        try:
            return bytes.fromhex(seed)
        except ValueError as exc:
            raise ValueError(f"string seed must be hex: {seed!r}") from exc
    raise TypeError(f"unsupported seed type {type(seed).__name__}")


class BitStream:
    """Stream of random bits derived from (seed, label) by hashing."""

    def __init__(self, seed=None, label: str = ""):
        self._seed = _seed_bytes(seed)
        self._label = label
        digest = hashlib.sha256(
            b"coinkit|" + self._seed + b"|" + label.encode()
        ).digest()
        self._rand = random.Random(int.from_bytes(digest, "big"))
        self._np_key = int.from_bytes(
            hashlib.sha256(digest + b"|vector").digest(), "big"
        )
        self._np_rng: np.random.Generator | None = None

    @property
    def seed_hex(self) -> str:
        return self._seed.hex()

    @property
    def label(self) -> str:
        return self._label

    def child(self, label: str) -> "BitStream":
        """Independent stream derived from the same master seed."""
        path = f"{self._label}/{label}" if self._label else label
        return BitStream(self._seed, label=path)

    def bit(self) -> int:
        return self._rand.getrandbits(1)

    def getrandbits(self, k: int) -> int:
        return self._rand.getrandbits(k)

    def bitstring(self, k: int) -> BitString:
        """Next ``k`` bits as a BitString; position ``i`` is the ``i``-th bit drawn."""
        if k == 0:
            return BitString.zeros(0)
        return BitString.from_int(self._rand.getrandbits(k), k)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        return self._rand.randint(lo, hi)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return self._rand.random()

    def sample_positions(self, n: int, k: int) -> list[int]:
        """k distinct positions from range(n), sorted."""
        return sorted(self._rand.sample(range(n), k))

    def _numpy(self) -> np.random.Generator:
        if self._np_rng is None:
            self._np_rng = np.random.default_rng(self._np_key)
        return self._np_rng

    def uniforms(self, shape) -> np.ndarray:
        """Array of uniform floats in [0, 1) (vectorized engine)."""
        return self._numpy().random(shape)

    def integers(self, low: int, high: int, size: int) -> np.ndarray:
        """Array of uniform integers in [low, high) (vectorized engine)."""
        return self._numpy().integers(low, high, size=size)
