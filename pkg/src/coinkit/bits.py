"""Fixed-length bit strings.

A :class:`BitString` is an immutable ordered sequence of bits with an explicit
length, indexed from 0. Position ``i`` of the sequence is stored at bit ``i``
of an internal integer, so subset-XOR and inner-product style operations reduce
to machine ``&`` / popcount on Python ints.

Wire format: hex is big-endian with an explicit bit length, i.e. the first bit
of the sequence is the most significant bit of the hex value. ``"110"`` is hex
``"6"`` at length 3.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class BitString:
    __slots__ = ("_len", "_val")

    def __init__(self, bits: Iterable[int] | str = ()):
        """Build from an iterable of 0/1 ints or a string of '0'/'1' characters."""
        val = 0
        n = 0
        for b in bits:
            if isinstance(b, str):
                if b not in "01":
                    raise ValueError(f"invalid bit character {b!r}")
                b = int(b)
            elif b not in (0, 1):
                raise ValueError(f"invalid bit value {b!r}")
            val |= b << n
            n += 1
        self._val = val
        self._len = n

    @classmethod
    def _raw(cls, length: int, value: int) -> "BitString":
        obj = cls.__new__(cls)
        obj._len = length
        obj._val = value
        return obj

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        """Sequence position ``i`` is bit ``i`` of ``value`` (LSB first)."""
        if length < 0:
            raise ValueError("length must be nonnegative")
        if not 0 <= value < (1 << length):
            raise ValueError(f"value {value} does not fit in {length} bits")
        return cls._raw(length, value)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitString":
        """Parse big-endian hex: the first bit of the sequence is the MSB."""
        value = int(text, 16) if text else 0
        if not 0 <= value < (1 << length):
            raise ValueError(f"hex {text!r} does not fit in {length} bits")
        return cls._raw(length, _reverse_bits(value, length))

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls._raw(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitString":
        return cls._raw(length, (1 << length) - 1)

    def as_int(self) -> int:
        """The LSB-first packed value: bit ``i`` is sequence position ``i``."""
        return self._val

    def to_hex(self) -> str:
        """Big-endian hex, zero-padded to ceil(length/4) digits."""
        digits = max(1, (self._len + 3) // 4)
        return format(_reverse_bits(self._val, self._len), f"0{digits}x")

    def weight(self) -> int:
        """Number of ones."""
        return self._val.bit_count()

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._len:
            raise IndexError(f"bit index {i} out of range [0, {self._len})")
        return (self._val >> i) & 1

    def __iter__(self) -> Iterator[int]:
        v = self._val
        for _ in range(self._len):
            yield v & 1
            v >>= 1

    def __xor__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        if self._len != other._len:
            raise ValueError(f"length mismatch: {self._len} vs {other._len}")
        return BitString._raw(self._len, self._val ^ other._val)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._len == other._len and self._val == other._val

    def __hash__(self) -> int:
        return hash((self._len, self._val))

    def __str__(self) -> str:
        return "".join(str(b) for b in self)

    def __repr__(self) -> str:
        return f"BitString({str(self)!r})"


def _reverse_bits(value: int, length: int) -> int:
    out = 0
    for _ in range(length):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out
