"""Arithmetic expression language with random modular fingerprint equality."""

from .equality import (
    PER_TRIAL_ERROR,
    EqVerdict,
    ProbablyEqual,
    Unequal,
    amplified_error,
    choose_modulus_range,
    equality_test,
    parity_precheck,
)
from .evaluate import DEFAULT_GUARD_BITS, eval_exact, eval_mod
from .nodes import (
    MAX_EXPONENT,
    Add,
    Expr,
    Literal,
    Mul,
    Pow,
    SizeBound,
    Sub,
    bit_length_bound,
    difference_bound,
    render,
)
from .parser import parse

__all__ = [
    "Add",
    "DEFAULT_GUARD_BITS",
    "EqVerdict",
    "Expr",
    "Literal",
    "MAX_EXPONENT",
    "Mul",
    "PER_TRIAL_ERROR",
    "Pow",
    "ProbablyEqual",
    "SizeBound",
    "Sub",
    "Unequal",
    "amplified_error",
    "bit_length_bound",
    "choose_modulus_range",
    "difference_bound",
    "equality_test",
    "eval_exact",
    "eval_mod",
    "parity_precheck",
    "parse",
    "render",
]
