"""수식 문법 파서 (재귀 하강) 와 출력기

문법:
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := primary ('^' exponent)*
    exponent := '-'? INTEGER | '(' '-'? INTEGER ')'
    primary  := NUMBER | 'i' | 'x0'..'x3' | ('exp'|'sin'|'cos') '(' expr ')' | '(' expr ')'

이항 '-' 는 Sum(a, Neg(b)) 로 읽는다.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import List, Optional

from spintensor.errors import ExpressionSyntaxError, UnknownSymbolError
from spintensor.expressions.nodes import (
    Coord,
    Cos,
    Exp,
    Expr,
    ImaginaryUnit,
    Neg,
    Pow,
    Prod,
    Quot,
    Rational,
    Sin,
    Sum,
)

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:\.\d+)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")
_COORDINATE = re.compile(r"^x([0-3])$")
_FUNCTIONS = {"exp": Exp, "sin": Sin, "cos": Cos}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _accept(self, op: str) -> Optional[Token]:
        if self.current.kind == "op" and self.current.text == op:
            return self._advance()
        return None

    def _expect(self, op: str) -> Token:
        token = self._accept(op)
        if token is None:
            found = self.current.text or "end of input"
            raise ExpressionSyntaxError(f"expected {op!r}, found {found!r}", self.current.position)
        return token

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExpressionSyntaxError("empty expression", 0)
        expr = self._expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(f"unexpected token {self.current.text!r}", self.current.position)
        return expr

    def _expr(self) -> Expr:
        left = self._term()
        while True:
            if self._accept("+"):
                left = Sum(left, self._term())
            elif self._accept("-"):
                left = Sum(left, Neg(self._term()))
            else:
                return left

    def _term(self) -> Expr:
        left = self._unary()
        while True:
            if self._accept("*"):
                left = Prod(left, self._unary())
            elif self._accept("/"):
                left = Quot(left, self._unary())
            else:
                return left

    def _unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Expr:
        base = self._primary()
        while self._accept("^"):
            base = Pow(base, self._exponent())
        return base

    def _exponent(self) -> int:
        parenthesized = self._accept("(") is not None
        sign = -1 if self._accept("-") else 1
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise ExpressionSyntaxError("exponent must be an integer literal", token.position)
        self._advance()
        if parenthesized:
            self._expect(")")
        return sign * int(token.text)

    def _primary(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Rational(Fraction(token.text))
        if token.kind == "name":
            self._advance()
            if token.text == "i":
                return ImaginaryUnit()
            coordinate = _COORDINATE.match(token.text)
            if coordinate:
                return Coord(int(coordinate.group(1)))
            if token.text in _FUNCTIONS:
                self._expect("(")
                arg = self._expr()
                self._expect(")")
                return _FUNCTIONS[token.text](arg)
            raise UnknownSymbolError(f"unknown symbol {token.text!r}", token.position)
        if self._accept("("):
            inner = self._expr()
            self._expect(")")
            return inner
        found = token.text or "end of input"
        raise ExpressionSyntaxError(f"unexpected {found!r}", token.position)


def parse_expr(text: str) -> Expr:
    """수식 문자열을 AST 로 변환

    Raises:
        ExpressionSyntaxError: 구문 오류 (position 속성 포함)
        UnknownSymbolError: 알 수 없는 식별자
    """
    return _Parser(text).parse()


@singledispatch
def to_text(e: Expr) -> str:
    """문법을 따르는 완전 괄호 문자열 (다시 파싱 가능)"""
    raise TypeError(f"cannot print {type(e).__name__}")


@to_text.register
def _(e: Rational) -> str:
    value = e.value
    if value.denominator == 1 and value >= 0:
        return str(value.numerator)
    if value >= 0:
        return f"({value.numerator}/{value.denominator})"
    return f"(-{to_text(Rational(-value))})"


@to_text.register
def _(e: ImaginaryUnit) -> str:
    return "i"


@to_text.register
def _(e: Coord) -> str:
    return f"x{e.index}"


@to_text.register
def _(e: Neg) -> str:
    return f"(-{to_text(e.arg)})"


@to_text.register
def _(e: Sum) -> str:
    return f"({to_text(e.left)} + {to_text(e.right)})"


@to_text.register
def _(e: Prod) -> str:
    return f"({to_text(e.left)} * {to_text(e.right)})"


@to_text.register
def _(e: Quot) -> str:
    return f"({to_text(e.left)} / {to_text(e.right)})"


@to_text.register
def _(e: Pow) -> str:
    return f"({to_text(e.base)}^{e.exponent})"


@to_text.register
def _(e: Exp) -> str:
    return f"exp({to_text(e.arg)})"


@to_text.register
def _(e: Sin) -> str:
    return f"sin({to_text(e.arg)})"


@to_text.register
def _(e: Cos) -> str:
    return f"cos({to_text(e.arg)})"
