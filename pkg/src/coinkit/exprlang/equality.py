"""Equality testing of huge expressions via random prime fingerprints.

Two equal expressions agree modulo everything. If they differ, the difference
D is a nonzero integer whose number of distinct prime divisors is at most its
bit length B (a product of k distinct primes is at least 2**k). Drawing a
uniformly random prime p <= R with at least 10*B primes below R therefore
collides on at most a tenth of the draws, so each trial that agrees is wrong
with probability at most 1/10, and disagreeing residues certify inequality
outright. Trials are independent: k agreeing trials leave error (1/10)**k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..errors import TrialBudgetError
from ..numtheory import prime_count_lower_bound, random_prime
from ..rng import BitStream
from .evaluate import eval_mod
from .nodes import Expr, difference_bound

PER_TRIAL_ERROR = Fraction(1, 10)


@dataclass(frozen=True)
class Unequal:
    """Certified inequality: residues differ at ``witness_modulus``."""

    witness_modulus: int
    lhs_residue: int
    rhs_residue: int
    trials: int = 0  # random trials consumed; 0 when the parity pre-check decided

    def __post_init__(self):
        if self.witness_modulus < 2:
            raise ValueError("witness modulus must be >= 2")
        for r in (self.lhs_residue, self.rhs_residue):
            if not 0 <= r < self.witness_modulus:
                raise ValueError("residue out of range for the witness modulus")
        if self.lhs_residue == self.rhs_residue:
            raise ValueError("witness residues must differ")


@dataclass(frozen=True)
class ProbablyEqual:
    """All trials agreed; wrong with probability at most ``error_bound``."""

    error_bound: Fraction
    trials: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 < self.error_bound <= 1:
            raise ValueError("error bound must be in (0, 1]")


EqVerdict = Union[Unequal, ProbablyEqual]


def amplified_error(p, k: int) -> Fraction:
    """Exact p**k for a per-trial error p in (0, 1).

    Floats are read as their shortest decimal form, so 0.1 means exactly
    1/10 and amplified_error(0.1, 10) is exactly 10**-10.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    p = _as_fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must be in (0, 1)")
    return p**k


def _as_fraction(p) -> Fraction:
    if isinstance(p, float):
        return Fraction(repr(p))
    return Fraction(p)


def parity_precheck(lhs: Expr, rhs: Expr) -> Optional[Unequal]:
    """Certified verdict from parity alone, or None when parities agree."""
    a = eval_mod(lhs, 2)
    b = eval_mod(rhs, 2)
    if a != b:
        return Unequal(witness_modulus=2, lhs_residue=a, rhs_residue=b)
    return None


def choose_modulus_range(lhs: Expr, rhs: Expr) -> int:
    """Smallest R >= 17 whose certified prime count covers 10x the size bound."""
    need = 10 * difference_bound(lhs, rhs).bit_length_bound
    lo, hi = 17, 17
    while prime_count_lower_bound(hi) < need:
        lo, hi = hi, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if prime_count_lower_bound(mid) >= need:
            hi = mid
        else:
            lo = mid + 1
    return hi


def equality_test(
    lhs: Expr,
    rhs: Expr,
    trials: int = 10,
    target_error=None,
    rng: BitStream | None = None,
    precheck: bool = True,
) -> EqVerdict:
    """Fingerprint test: certified Unequal, or ProbablyEqual with an error bound.

    Runs up to ``trials`` independent rounds, each drawing a uniformly random
    prime modulus from [2, R] with R sized so a single agreeing round is wrong
    with probability at most 1/10. The first disagreeing residue certifies
    inequality with zero error. If every round agrees, the verdict carries the
    bound (1/10)**trials; when that bound is still above ``target_error``,
    TrialBudgetError is raised with the verdict attached rather than returning
    a silently weaker answer.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if target_error is not None and not 0 < target_error < 1:
        raise ValueError("target_error must be in (0, 1)")
    if precheck:
        verdict = parity_precheck(lhs, rhs)
        if verdict is not None:
            return verdict
    if rng is None:
        rng = BitStream()
    modulus_range = choose_modulus_range(lhs, rhs)
    for t in range(1, trials + 1):
        p = random_prime(2, modulus_range, rng)
        a = eval_mod(lhs, p)
        b = eval_mod(rhs, p)
        if a != b:
            return Unequal(
                witness_modulus=p, lhs_residue=a, rhs_residue=b, trials=t
            )
    bound = PER_TRIAL_ERROR**trials
    verdict = ProbablyEqual(error_bound=bound, trials=trials)
    if target_error is not None and bound > _as_fraction(target_error):
        raise TrialBudgetError(trials, bound, target_error, verdict)
    return verdict
