"""Randomized primality, random prime generation, and trial-division factoring.

The primality test is Miller-Rabin with random bases: a composite survives one
round with probability at most 1/4, so ``rounds`` rounds give a worst-case
error bound of 4**-rounds. Verdicts are certificates: a ``Composite`` carries
a witness that can be re-checked, a ``ProbablyPrime`` carries the error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import NoPrimeInRange
from .rng import BitStream

SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)

DEFAULT_ROUNDS = 40


@dataclass(frozen=True)
class Composite:
    """The number is composite; ``witness`` is re-checkable evidence.

    The witness is either a nontrivial divisor or a base on which the strong
    probable-prime test fails. ``is_composite_witness`` re-checks either kind.
    """

    witness: int


@dataclass(frozen=True)
class ProbablyPrime:
    """No witness found; wrong with probability at most ``error_bound``."""

    error_bound: Fraction


PrimalityVerdict = Union[Composite, ProbablyPrime]


def _decompose(n: int) -> tuple[int, int]:
    # n - 1 = 2**s * d with d odd
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return s, d


def strong_probable_prime(n: int, base: int) -> bool:
    """One strong-test round of odd ``n`` >= 3 on a fixed base."""
    if n < 3 or n % 2 == 0:
        raise ValueError("strong test requires odd n >= 3")
    s, d = _decompose(n)
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_composite_witness(n: int, witness: int) -> bool:
    """Re-check a Composite certificate."""
    if 1 < witness < n and n % witness == 0:
        return True
    if n >= 3 and n % 2 == 1 and 2 <= witness <= n - 2:
        return not strong_probable_prime(n, witness)
    return False


def miller_rabin(
    n: int,
    rounds: int = DEFAULT_ROUNDS,
    rng: BitStream | None = None,
    presieve: bool = True,
) -> PrimalityVerdict:
    """Test ``n`` for primality with ``rounds`` random-base strong-test rounds.

    Primes are never declared Composite. A composite is declared ProbablyPrime
    with probability at most 4**-rounds. With ``presieve`` (default) numbers
    with a prime factor below 100 are settled deterministically first; this
    only short-circuits, it never changes a verdict's correctness.
    """
    if n < 2:
        raise ValueError(f"primality is defined for n >= 2, got {n}")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    bound = Fraction(1, 4**rounds)
    if presieve:
        for p in SMALL_PRIMES:
            if n == p:
                return ProbablyPrime(bound)
            if n % p == 0:
                return Composite(witness=p)
    else:
        if n in (2, 3):
            return ProbablyPrime(bound)
        if n % 2 == 0:
            return Composite(witness=2)
    if rng is None:
        rng = BitStream()
    for _ in range(rounds):
        base = rng.randint(2, n - 2)
        if not strong_probable_prime(n, base):
            return Composite(witness=base)
    return ProbablyPrime(bound)


def is_probable_prime(
    n: int, rounds: int = DEFAULT_ROUNDS, rng: BitStream | None = None
) -> bool:
    return isinstance(miller_rabin(n, rounds, rng), ProbablyPrime)


def random_prime(lo: int, hi: int, rng: BitStream | None = None) -> int:
    """Uniform prime from [lo, hi], up to Miller-Rabin error.

    Rejection sampling: draw uniformly, keep the first draw that passes a
    40-round test. Acceptance is a fixed event per value, so accepted values
    are uniform over the primes in range. If the retry budget runs out, a
    deterministic scan decides whether the range holds any prime at all;
    ``NoPrimeInRange`` is raised only when the scan finds none.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if rng is None:
        rng = BitStream()
    orig_lo = lo
    lo = max(lo, 2)
    if lo > hi:
        raise NoPrimeInRange(orig_lo, hi)
    budget = 128 + 64 * hi.bit_length()
    for _ in range(budget):
        candidate = rng.randint(lo, hi)
        if is_probable_prime(candidate, DEFAULT_ROUNDS, rng):
            return candidate
    for candidate in range(lo, hi + 1):
        if is_probable_prime(candidate, 64, rng):
            return candidate
    raise NoPrimeInRange(orig_lo, hi)


@dataclass(frozen=True)
class Factorization:
    """Outcome of trial division: complete iff ``cofactor`` is 1."""

    factors: tuple[int, ...]
    cofactor: int
    candidates_tried: int

    @property
    def complete(self) -> bool:
        return self.cofactor == 1


def primes() -> Iterator[int]:
    """Unbounded incremental prime generator (dict sieve)."""
    yield 2
    sieve: dict[int, int] = {}
    n = 3
    while True:
        step = sieve.pop(n, 0)
        if step:
            nxt = n + step
            while nxt in sieve:
                nxt += step
            sieve[nxt] = step
        else:
            yield n
            sieve[n * n] = 2 * n
        n += 2


def trial_division_factor(n: int, budget: int = 10**6) -> Factorization:
    """Factor ``n`` by dividing successive primes 2, 3, 5, 7, ...

    ``budget`` caps how many candidate primes are tried. On a complete run the
    factors multiply back to ``n`` (ascending, with multiplicity); otherwise
    the partial factors and the unfactored cofactor are returned. Slow for
    numbers whose smallest factor is large; that slowness is the point of
    keeping this around as a baseline.
    """
    if n < 2:
        raise ValueError(f"factoring is defined for n >= 2, got {n}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    factors: list[int] = []
    remaining = n
    tried = 0
    for p in primes():
        if remaining == 1 or tried >= budget:
            break
        tried += 1
        if p * p > remaining:
            factors.append(remaining)
            remaining = 1
            break
        while remaining % p == 0:
            factors.append(p)
            remaining //= p
    return Factorization(tuple(factors), remaining, tried)


def prime_count_lower_bound(limit: int) -> int:
    """Certified lower bound on the number of primes <= limit (limit >= 17).

    Uses floor(limit / ln limit), valid for limit >= 17; validated against an
    exact sieve at desk scale in the test suite.
    """
    if limit < 17:
        raise ValueError(f"bound requires limit >= 17, got {limit}")
    return math.floor(limit / math.log(limit))
