"""Expression evaluation: modular (cheap) and exact (guarded oracle)."""

from __future__ import annotations

from ..errors import SizeGuardExceeded
from .nodes import Add, Expr, Literal, Mul, Pow, Sub, bit_length_bound

DEFAULT_GUARD_BITS = 10**6


def eval_mod(e: Expr, modulus: int) -> int:
    """Value of ``e`` modulo ``modulus``, always in [0, modulus).

    Powers go through three-argument ``pow`` (square-and-multiply on
    residues); subtraction stays correct in [0, modulus) even when the
    subtrahend is larger. The full number is never expanded.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    match e:
        case Literal(value=v):
            return v % modulus
        case Add(left=a, right=b):
            return (eval_mod(a, modulus) + eval_mod(b, modulus)) % modulus
        case Sub(left=a, right=b):
            return (eval_mod(a, modulus) - eval_mod(b, modulus)) % modulus
        case Mul(left=a, right=b):
            return (eval_mod(a, modulus) * eval_mod(b, modulus)) % modulus
        case Pow(base=b, exponent=k):
            return pow(eval_mod(b, modulus), k, modulus)
        case _:
            raise TypeError(f"not an expression node: {e!r}")


def eval_exact(e: Expr, guard_bits: int = DEFAULT_GUARD_BITS) -> int:
    """Exact signed value of ``e``; brute force, for desk-scale oracles only.

    Refuses with SizeGuardExceeded when the syntactic bit-length bound
    crosses ``guard_bits``.
    """
    bound = bit_length_bound(e)
    if bound > guard_bits:
        raise SizeGuardExceeded(bound, guard_bits)
    return _eval(e)


def _eval(e: Expr) -> int:
    match e:
        case Literal(value=v):
            return v
        case Add(left=a, right=b):
            return _eval(a) + _eval(b)
        case Sub(left=a, right=b):
            return _eval(a) - _eval(b)
        case Mul(left=a, right=b):
            return _eval(a) * _eval(b)
        case Pow(base=b, exponent=k):
            return _eval(b) ** k
        case _:
            raise TypeError(f"not an expression node: {e!r}")
