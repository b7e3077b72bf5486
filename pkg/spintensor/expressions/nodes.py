"""차트 좌표 x0..x3 위의 수식 AST

노드는 모두 불변 (frozen dataclass) 이며 해시 가능하다. 파서는 원형 노드를 그대로 만들고,
미분 등 내부 변환은 상수 접기와 0/1 흡수만 하는 스마트 생성자 (add, mul, ...) 를 쓴다.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from spintensor.config.constants import SPATIAL_RANGE
from spintensor.errors import IndexRangeError


class Expr:
    """수식 노드 기반 클래스"""

    __slots__ = ()

    def __str__(self) -> str:
        from spintensor.expressions.parser import to_text

        return to_text(self)


@dataclass(frozen=True, repr=False)
class Rational(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def __repr__(self) -> str:
        return f"Rational({self.value})"


@dataclass(frozen=True, repr=False)
class ImaginaryUnit(Expr):
    def __repr__(self) -> str:
        return "ImaginaryUnit()"


@dataclass(frozen=True, repr=False)
class Coord(Expr):
    index: int

    def __post_init__(self):
        if not 0 <= self.index < SPATIAL_RANGE:
            raise IndexRangeError(f"coordinate index out of range: {self.index}")

    def __repr__(self) -> str:
        return f"Coord({self.index})"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Prod(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Quot(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


ZERO = Rational(Fraction(0))
ONE = Rational(Fraction(1))


def const(value) -> Rational:
    return Rational(Fraction(value))


def _is(e: Expr, value) -> bool:
    return isinstance(e, Rational) and e.value == value


def neg(a: Expr) -> Expr:
    if isinstance(a, Rational):
        return Rational(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Rational(a.value + b.value)
    return Sum(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(b))


def mul(a: Expr, b: Expr) -> Expr:
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if _is(a, -1):
        return neg(b)
    if _is(b, -1):
        return neg(a)
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Rational(a.value * b.value)
    return Prod(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is(b, 1):
        return a
    if _is(a, 0) and not _is(b, 0):
        return ZERO
    if isinstance(a, Rational) and isinstance(b, Rational) and b.value != 0:
        return Rational(a.value / b.value)
    return Quot(a, b)


def power(base: Expr, exponent: int) -> Expr:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Rational) and (base.value != 0 or exponent > 0):
        return Rational(base.value ** exponent)
    return Pow(base, exponent)
