"""AST for big-integer arithmetic expressions.

Nodes are frozen dataclasses: literals, +, -, *, and power with a literal
nonnegative exponent. Exponents are plain ints capped at 2**32, which keeps
the syntactic size bound computable and the squaring depth bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ExponentOverflowError

MAX_EXPONENT = 1 << 32


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Literal(Expr):
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError("literal value must be an int")
        if self.value < 0:
            raise ValueError("literal value must be nonnegative")


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("exponent must be an int")
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if self.exponent > MAX_EXPONENT:
            raise ExponentOverflowError(self.exponent, MAX_EXPONENT)


def bit_length_bound(e: Expr) -> int:
    """Upper bound on the bit length of ``|value(e)|``, computed bottom-up.

    Literal: exact bit length. Add/Sub: max of the sides plus one carry bit.
    Mul: sum of the sides. Pow: exponent times the base bound (1 for e == 0).
    """
    match e:
        case Literal(value=v):
            return v.bit_length()
        case Add(left=a, right=b) | Sub(left=a, right=b):
            return max(bit_length_bound(a), bit_length_bound(b)) + 1
        case Mul(left=a, right=b):
            return bit_length_bound(a) + bit_length_bound(b)
        case Pow(base=b, exponent=k):
            if k == 0:
                return 1
            return k * bit_length_bound(b)
        case _:
            raise TypeError(f"not an expression node: {e!r}")


@dataclass(frozen=True)
class SizeBound:
    """Bit-length cap for the absolute difference of two expressions."""

    bit_length_bound: int

    def __post_init__(self):
        if self.bit_length_bound < 1:
            raise ValueError("bound must be positive")


def difference_bound(lhs: Expr, rhs: Expr) -> SizeBound:
    """SizeBound for |lhs - rhs|."""
    return SizeBound(max(1, bit_length_bound(Sub(lhs, rhs))))


def render(e: Expr) -> str:
    """Textual form that parses back to a structurally equal tree."""
    return _render(e, 0)


# precedence levels: 1 add/sub, 2 mul, 3 pow operand
def _render(e: Expr, level: int) -> str:
    match e:
        case Literal(value=v):
            return str(v)
        case Add(left=a, right=b):
            s = f"{_render(a, 1)} + {_render(b, 2)}"
            return f"({s})" if level > 1 else s
        case Sub(left=a, right=b):
            s = f"{_render(a, 1)} - {_render(b, 2)}"
            return f"({s})" if level > 1 else s
        case Mul(left=a, right=b):
            s = f"{_render(a, 2)}*{_render(b, 3)}"
            return f"({s})" if level > 2 else s
        case Pow(base=b, exponent=k):
            if isinstance(b, Literal):
                return f"{b.value}^{k}"
            return f"({_render(b, 0)})^{k}"
        case _:
            raise TypeError(f"not an expression node: {e!r}")
