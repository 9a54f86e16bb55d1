"""Randomness extraction by Toeplitz hashing over GF(2), with exact oracles.

An extractor here is an m x n Toeplitz matrix specified by n + m - 1 seed
bits: entry (i, j) is seed bit i - j + n - 1, so the matrix is constant along
diagonals. Extraction multiplies the matrix into the source string over GF(2).
The family is XOR-universal, which buys the leftover-hash guarantee: hashing a
source with u bits of min-entropy down to m bits leaves a seed-averaged
statistical distance from uniform of at most 0.5 * 2**((m - u) / 2).

That guarantee is never taken on faith: ``exact_output_distribution``
enumerates every source value and returns exact rational probabilities, and
``statistical_distance`` compares distributions in exact arithmetic.

Note the seed is longer than the source (n + m - 1 bits). Constructions whose
seeds are much shorter than their output exist but are out of scope; what is
reproduced here at bit scale is the structure: one weak sample plus a full
cycle over seeds yields many almost-uniform strings (``enumerate_prg``), and
two holders of a partially leaked key can distill bits the eavesdropper knows
almost nothing about (``key_recover``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .bits import BitString
from .errors import EnumerationBudgetError, KeyLeakageError
from .rng import BitStream

ENUMERATION_CAP_BITS = 24
PUSH_FORWARD_CAP_BITS = 20
KEY_SLACK_BITS = 4


@dataclass(frozen=True)
class ToeplitzExtractor:
    """m x n Toeplitz matrix over GF(2), defined by ``diag`` of length n + m - 1."""

    n: int
    m: int
    diag: BitString

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("source length n must be >= 1")
        if not 1 <= self.m <= self.n:
            raise ValueError("output length m must satisfy 1 <= m <= n")
        if len(self.diag) != self.n + self.m - 1:
            raise ValueError(
                f"diag must have {self.n + self.m - 1} bits, got {len(self.diag)}"
            )
        # row i as an LSB-first mask over source positions: bit j = diag[i + n - 1 - j]
        d = self.diag
        rows = []
        for i in range(self.m):
            mask = 0
            for j in range(self.n):
                mask |= d[i + self.n - 1 - j] << j
            rows.append(mask)
        object.__setattr__(self, "_rows", tuple(rows))

    def row_mask(self, i: int) -> int:
        return self._rows[i]

    def extract_int(self, x_int: int) -> int:
        out = 0
        for i, row in enumerate(self._rows):
            out |= ((row & x_int).bit_count() & 1) << i
        return out

    def extract(self, x: BitString) -> BitString:
        """Matrix-vector product over GF(2); output bit i = <row i, x>."""
        if len(x) != self.n:
            raise ValueError(f"input must have {self.n} bits, got {len(x)}")
        return BitString.from_int(self.extract_int(x.as_int()), self.m)

    def column_effect(self, j: int) -> int:
        """Output delta (as an m-bit int) caused by flipping input bit j."""
        if not 0 <= j < self.n:
            raise IndexError(f"column {j} out of range [0, {self.n})")
        out = 0
        for i in range(self.m):
            out |= self.diag[i + self.n - 1 - j] << i
        return out


def extract(ext: ToeplitzExtractor, x: BitString) -> BitString:
    return ext.extract(x)


@dataclass(frozen=True)
class BitFixingSource:
    """n-bit source: positions in ``free`` are uniform, the rest are fixed.

    ``fixed`` is a full-length BitString; its bits at free positions must be
    zero. Min-entropy equals the number of free positions.
    """

    n: int
    free: frozenset[int]
    fixed: BitString

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("source length must be >= 1")
        free = frozenset(self.free)
        object.__setattr__(self, "free", free)
        for p in free:
            if not 0 <= p < self.n:
                raise ValueError(f"free position {p} out of range [0, {self.n})")
        if len(self.fixed) != self.n:
            raise ValueError(f"fixed values must have {self.n} bits")
        for p in free:
            if self.fixed[p]:
                raise ValueError(f"fixed value set at free position {p}")

    @property
    def min_entropy(self) -> int:
        return len(self.free)

    def sample(self, rng: BitStream) -> BitString:
        """Free positions drawn uniformly (in increasing position order)."""
        value = self.fixed.as_int()
        for p in sorted(self.free):
            value |= rng.bit() << p
        return BitString.from_int(value, self.n)

    def values(self) -> Iterable[int]:
        """All 2**|free| source values as LSB-first ints, Gray-code ordered."""
        positions = sorted(self.free)
        x = self.fixed.as_int()
        yield x
        gray = 0
        for t in range(1, 1 << len(positions)):
            new_gray = t ^ (t >> 1)
            flip = positions[(gray ^ new_gray).bit_length() - 1]
            x ^= 1 << flip
            gray = new_gray
            yield x


def sample_source(src: BitFixingSource, rng: BitStream) -> BitString:
    return src.sample(rng)


@dataclass(frozen=True)
class ExactDistribution:
    """Exact distribution over m-bit strings, indexed by LSB-first value."""

    num_bits: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.probs) != 1 << self.num_bits:
            raise ValueError("need one probability per outcome")
        if any(p < 0 for p in self.probs):
            raise ValueError("probabilities must be nonnegative")
        if sum(self.probs) != 1:
            raise ValueError("probabilities must sum to exactly 1")

    @classmethod
    def uniform(cls, num_bits: int) -> "ExactDistribution":
        p = Fraction(1, 1 << num_bits)
        return cls(num_bits, (p,) * (1 << num_bits))

    @classmethod
    def point_mass(cls, num_bits: int, outcome: int) -> "ExactDistribution":
        probs = [Fraction(0)] * (1 << num_bits)
        probs[outcome] = Fraction(1)
        return cls(num_bits, tuple(probs))

    @classmethod
    def from_counts(cls, num_bits: int, counts) -> "ExactDistribution":
        total = sum(counts)
        return cls(num_bits, tuple(Fraction(c, total) for c in counts))

    def prob(self, outcome: BitString | int) -> Fraction:
        if isinstance(outcome, BitString):
            outcome = outcome.as_int()
        return self.probs[outcome]


def statistical_distance(a: ExactDistribution, b: ExactDistribution) -> Fraction:
    """Half the L1 distance, in exact rational arithmetic."""
    if a.num_bits != b.num_bits:
        raise ValueError(
            f"outcome spaces differ: {a.num_bits} vs {b.num_bits} bits"
        )
    return sum((abs(pa - pb) for pa, pb in zip(a.probs, b.probs)), Fraction(0)) / 2


def exact_output_distribution(
    ext: ToeplitzExtractor, src: BitFixingSource
) -> ExactDistribution:
    """Exact law of extract(X) for X from the source, by full enumeration.

    Walks the 2**|free| source values in Gray-code order so each step updates
    the output with a single XOR of a precomputed column effect.
    """
    if src.n != ext.n:
        raise ValueError(f"source length {src.n} != extractor input length {ext.n}")
    u = src.min_entropy
    if u > ENUMERATION_CAP_BITS:
        raise EnumerationBudgetError("source enumeration", u, ENUMERATION_CAP_BITS)
    positions = sorted(src.free)
    cols = [ext.column_effect(p) for p in positions]
    counts = [0] * (1 << ext.m)
    out = ext.extract_int(src.fixed.as_int())
    counts[out] += 1
    gray = 0
    for t in range(1, 1 << u):
        new_gray = t ^ (t >> 1)
        flip = (gray ^ new_gray).bit_length() - 1
        out ^= cols[flip]
        counts[out] += 1
        gray = new_gray
    return ExactDistribution.from_counts(ext.m, counts)


def push_forward(
    ext: ToeplitzExtractor, input_dist: ExactDistribution
) -> ExactDistribution:
    """Exact output law for an arbitrary input distribution (n <= 20)."""
    if input_dist.num_bits != ext.n:
        raise ValueError("input distribution is over the wrong space")
    if ext.n > PUSH_FORWARD_CAP_BITS:
        raise EnumerationBudgetError(
            "input-space enumeration", ext.n, PUSH_FORWARD_CAP_BITS
        )
    probs = [Fraction(0)] * (1 << ext.m)
    for x_int, p in enumerate(input_dist.probs):
        if p:
            probs[ext.extract_int(x_int)] += p
    return ExactDistribution(ext.m, tuple(probs))


def enumerate_prg(n: int, m: int, x: BitString) -> list[BitString]:
    """All extractor outputs on one sample ``x``, cycling over every seed.

    Output t is the extraction with diag = the (n + m - 1)-bit binary encoding
    of t (LSB first), for t = 0, 1, ..., in seed order. Cost grows as
    2**(n + m - 1); capped at 24 seed bits.
    """
    seed_bits = n + m - 1
    if seed_bits > ENUMERATION_CAP_BITS:
        raise EnumerationBudgetError("seed enumeration", seed_bits, ENUMERATION_CAP_BITS)
    if len(x) != n:
        raise ValueError(f"input must have {n} bits, got {len(x)}")
    outputs = []
    for t in range(1 << seed_bits):
        ext = ToeplitzExtractor(n, m, BitString.from_int(t, seed_bits))
        outputs.append(ext.extract(x))
    return outputs


def achievable_output_bits(
    key_bits: int, leaked_count: int, slack: int = KEY_SLACK_BITS
) -> int:
    """Longest safe output for a key with the given leakage (may be <= 0)."""
    return key_bits - leaked_count - slack


def key_recover(
    shared_key: BitString,
    leaked_positions: Iterable[int],
    m: int,
    seed: BitString,
    slack: int = KEY_SLACK_BITS,
) -> BitString:
    """Distill ``m`` bits both parties can compute but an eavesdropper cannot.

    The eavesdropper knows the key bits at ``leaked_positions``; the remaining
    positions look uniform from their point of view. Extraction with a shared
    seed yields ``m`` bits whose adversary-view distance from uniform is at
    most 0.5 * 2**(-slack/2) on seed average (slack = unknown bits - m).
    Requests beyond the achievable length are refused, citing the achievable
    value. Deterministic: both sides compute the same output from the same
    key and seed.
    """
    leaked = frozenset(leaked_positions)
    key_bits = len(shared_key)
    for p in leaked:
        if not 0 <= p < key_bits:
            raise ValueError(f"leaked position {p} out of range [0, {key_bits})")
    if m < 1:
        raise ValueError("m must be >= 1")
    achievable = achievable_output_bits(key_bits, len(leaked), slack)
    if m > achievable:
        raise KeyLeakageError(m, achievable)
    if len(seed) != key_bits + m - 1:
        raise ValueError(
            f"seed must have {key_bits + m - 1} bits, got {len(seed)}"
        )
    return ToeplitzExtractor(key_bits, m, seed).extract(shared_key)


def adversary_view(
    shared_key: BitString,
    leaked_positions: Iterable[int],
    m: int,
    seed: BitString,
) -> ExactDistribution:
    """Exact output law as seen by someone knowing only the leaked positions."""
    leaked = frozenset(leaked_positions)
    key_bits = len(shared_key)
    free = frozenset(range(key_bits)) - leaked
    fixed_int = 0
    for p in sorted(leaked):
        fixed_int |= shared_key[p] << p
    src = BitFixingSource(key_bits, free, BitString.from_int(fixed_int, key_bits))
    ext = ToeplitzExtractor(key_bits, m, seed)
    return exact_output_distribution(ext, src)
