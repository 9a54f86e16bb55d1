"""Pairwise-independent bits from a short seed, with exhaustive verifiers.

A k-bit seed expands to 2**k - 1 output bits: the bit at 1-based index ``i``
is the XOR of the seed bits selected by the binary representation of ``i``
(index 0 would be the empty subset, constantly 0, so indexing starts at 1).
Every pair of distinct indices selects two distinct nonzero masks, so over a
uniform seed any two output bits are jointly uniform on {0,1}^2. Triples are
not: indices i, j, i^j always XOR to zero, which the triple verifier exhibits.

The verifiers do not trust that argument: they count, exhaustively over all
2**k seeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .bits import BitString

VERIFY_MAX_K = 12

# parity of a 16-bit value, for vectorized popcount folding
_v = np.arange(1 << 16, dtype=np.uint16)
for _shift in (8, 4, 2, 1):
    _v ^= _v >> np.uint16(_shift)
_PAR16 = (_v & 1).astype(np.uint8)
del _v


@dataclass(frozen=True)
class PairwiseStream:
    """Position-addressable pairwise-independent stream over a k-bit seed."""

    seed: BitString

    def __post_init__(self):
        if len(self.seed) < 1:
            raise ValueError("seed must have at least one bit")

    @property
    def k(self) -> int:
        return len(self.seed)

    def __len__(self) -> int:
        return output_length(self.k)

    def bit(self, index: int) -> int:
        """Output bit at 1-based ``index``: XOR of the seed bits its binary form selects."""
        if not 1 <= index <= len(self):
            raise IndexError(f"index {index} out of range [1, {len(self)}]")
        return (self.seed.as_int() & index).bit_count() & 1

    def iter_bits(self) -> Iterator[int]:
        s = self.seed.as_int()
        for index in range(1, len(self) + 1):
            yield (s & index).bit_count() & 1

    def emit(self, count: Optional[int] = None, start: int = 1) -> np.ndarray:
        """Bits at indices start..start+count-1 as a uint8 array (vectorized)."""
        total = len(self)
        if count is None:
            count = total - start + 1
        if count < 0 or start < 1 or start + count - 1 > total:
            raise IndexError("emission window out of range")
        if self.k > 64:
            return np.fromiter(
                ((self.seed.as_int() & i).bit_count() & 1
                 for i in range(start, start + count)),
                dtype=np.uint8,
                count=count,
            )
        idx = np.arange(start, start + count, dtype=np.uint64)
        masked = np.bitwise_and(idx, np.uint64(self.seed.as_int()))
        for shift in (32, 16):
            masked = masked ^ (masked >> np.uint64(shift))
        return _PAR16[masked & np.uint64(0xFFFF)]


def output_length(k: int) -> int:
    """Stream length for a k-bit seed: 2**k - 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1 << k) - 1


def pack_bits(bits: Sequence[int] | np.ndarray) -> bytes:
    """Pack bits 8 per byte, first bit in the most significant position."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


@dataclass(frozen=True)
class PairwiseReport:
    k: int
    passed: bool
    pairs_checked: int
    expected_count: int
    violations: tuple[tuple[int, int, int, int, int], ...]  # (i, j, a, b, count)


@dataclass(frozen=True)
class ThreewiseReport:
    k: int
    passed: bool
    triple: Optional[tuple[int, int, int]]
    counts: dict[str, int]


BitFunction = Callable[[BitString, int], int]


def _bit_matrix(k: int, bit_fn: Optional[BitFunction]) -> np.ndarray:
    """Rows: all 2**k seeds; columns: indices 1..2**k-1; entries: output bits."""
    n_seeds = 1 << k
    if bit_fn is None:
        seeds = np.arange(n_seeds, dtype=np.uint32)
        idx = np.arange(1, n_seeds, dtype=np.uint32)
        masked = np.bitwise_and(seeds[:, None], idx[None, :])
        folded = (masked ^ (masked >> np.uint32(16))) & np.uint32(0xFFFF)
        return _PAR16[folded]
    rows = []
    for s in range(n_seeds):
        seed = BitString.from_int(s, k)
        rows.append([bit_fn(seed, i) for i in range(1, n_seeds)])
    return np.asarray(rows, dtype=np.uint8)


def verify_pairwise(k: int, bit_fn: Optional[BitFunction] = None) -> PairwiseReport:
    """Count, over all 2**k seeds, every (bit_i, bit_j) value pair.

    Passes iff each of the four value pairs appears for exactly 2**k / 4 seeds
    at every pair of distinct indices. ``bit_fn`` substitutes a different
    generator (seed, 1-based index) -> bit; default is the subset-XOR stream.
    """
    if not 1 <= k <= VERIFY_MAX_K:
        raise ValueError(f"k must be in [1, {VERIFY_MAX_K}]")
    n_seeds = 1 << k
    n_idx = n_seeds - 1
    if n_idx < 2:
        return PairwiseReport(k, True, 0, 0, ())
    B = _bit_matrix(k, bit_fn).astype(np.float32)
    ones = B.sum(axis=0)
    both = B.T @ B  # both[i, j] = seeds with bit_i = bit_j = 1
    expected = n_seeds // 4
    c11 = both
    c10 = ones[:, None] - both
    c01 = ones[None, :] - both
    c00 = n_seeds - c11 - c10 - c01
    violations = []
    iu = np.triu_indices(n_idx, k=1)
    for (a, b), counts in (((0, 0), c00), ((0, 1), c01), ((1, 0), c10), ((1, 1), c11)):
        bad = np.nonzero(counts[iu] != expected)[0]
        for flat in bad[:16]:
            i, j = int(iu[0][flat]) + 1, int(iu[1][flat]) + 1
            violations.append((i, j, a, b, int(counts[i - 1, j - 1])))
    pairs = n_idx * (n_idx - 1) // 2
    return PairwiseReport(
        k=k,
        passed=not violations,
        pairs_checked=pairs,
        expected_count=expected,
        violations=tuple(sorted(violations)[:16]),
    )


def _triple_counts(k: int, triple: tuple[int, int, int]) -> dict[str, int]:
    i, j, l = triple
    counts: dict[str, int] = {}
    for s in range(1 << k):
        key = "".join(
            str((s & idx).bit_count() & 1) for idx in (i, j, l)
        )
        counts[key] = counts.get(key, 0) + 1
    return counts


def verify_not_threewise(
    k: int, triple: Optional[tuple[int, int, int]] = None
) -> ThreewiseReport:
    """Exhibit a triple of indices whose joint distribution is not uniform.

    With ``triple`` given, checks exactly that triple; it must be three
    distinct in-range indices. Otherwise searches in lexicographic order and
    reports the first non-uniform triple found.
    """
    if not 2 <= k <= VERIFY_MAX_K:
        raise ValueError(f"k must be in [2, {VERIFY_MAX_K}]")
    n_idx = (1 << k) - 1

    def nonuniform(counts: dict[str, int]) -> bool:
        values = [counts.get(format(v, "03b"), 0) for v in range(8)]
        return len(set(values)) > 1

    if triple is not None:
        if len(set(triple)) != 3:
            raise ValueError("need three distinct indices, not a pair")
        for idx in triple:
            if not 1 <= idx <= n_idx:
                raise ValueError(f"index {idx} out of range [1, {n_idx}]")
        t = (triple[0], triple[1], triple[2])
        counts = _triple_counts(k, t)
        return ThreewiseReport(k, nonuniform(counts), t, counts)
    for i in range(1, n_idx + 1):
        for j in range(i + 1, n_idx + 1):
            for l in range(j + 1, n_idx + 1):
                counts = _triple_counts(k, (i, j, l))
                if nonuniform(counts):
                    return ThreewiseReport(k, True, (i, j, l), counts)
    return ThreewiseReport(k, False, None, {})
