"""Recursive-descent parser for the expression language.

Grammar (whitespace ignored between tokens):

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := atom ("^" natural)?
    atom    := natural | "(" expr ")"
    natural := digits, optionally with "," or "_" group separators

"^" binds tighter than "*", which binds tighter than "+"/"-"; "+"/"-" are
left-associative. Exponents must be literal naturals, so "2^3^4" is a syntax
error rather than an ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ExponentOverflowError, ExprSyntaxError
from .nodes import MAX_EXPONENT, Add, Expr, Literal, Mul, Pow, Sub

_OPERATORS = "+-*^()"


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", one of _OPERATORS, or "end"
    value: int | None
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPERATORS:
            tokens.append(_Token(c, None, i))
            i += 1
            continue
        if c.isdigit():
            start = i
            digits = [c]
            i += 1
            while i < n:
                c = text[i]
                if c.isdigit():
                    digits.append(c)
                    i += 1
                elif c in ",_" and i + 1 < n and text[i + 1].isdigit():
                    # group separator, consumed only between digits
                    i += 1
                else:
                    break
            tokens.append(_Token("num", int("".join(digits)), start))
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {what}", tok.position)
        return self.advance()

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind in "+-":
            op = self.advance()
            right = self.term()
            node = Add(node, right) if op.kind == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind == "*":
            self.advance()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.peek().kind == "^":
            self.advance()
            tok = self.expect("num", "a literal exponent after '^'")
            assert tok.value is not None
            if tok.value > MAX_EXPONENT:
                raise ExponentOverflowError(tok.value, MAX_EXPONENT, tok.position)
            node = Pow(node, tok.value)
        return node

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            assert tok.value is not None
            return Literal(tok.value)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        raise ExprSyntaxError("expected a number or '('", tok.position)


def parse(text: str) -> Expr:
    """Parse expression text into its unique AST.

    Raises ExprSyntaxError with the offending position on malformed input and
    ExponentOverflowError on exponents above 2**32.
    """
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(
            f"unexpected {trailing.kind!r} after a complete expression",
            trailing.position,
        )
    return node
