"""수식 평가, 기호 미분, 정확 상수 평가, 켤레"""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache, singledispatch
from typing import Optional, Sequence

import numpy as np

from spintensor.algebra.scalars import GaussianRational
from spintensor.config.constants import SPATIAL_RANGE
from spintensor.errors import ExpressionEvaluationError, IndexRangeError
from spintensor.expressions.nodes import (
    ONE,
    ZERO,
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
    add,
    const,
    div,
    mul,
    neg,
    power,
    sub,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- evaluation


@singledispatch
def _evaluate(e: Expr, point) -> complex:
    raise TypeError(f"cannot evaluate {type(e).__name__}")


def _finite(value: complex, what: str, point) -> complex:
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise ExpressionEvaluationError(f"{what} is not finite", point)
    return value


@_evaluate.register
def _(e: Rational, point) -> complex:
    try:
        return complex(float(e.value))
    except OverflowError as exc:
        raise ExpressionEvaluationError("rational constant overflows a float", point) from exc


@_evaluate.register
def _(e: ImaginaryUnit, point) -> complex:
    return 1j


@_evaluate.register
def _(e: Coord, point) -> complex:
    return complex(point[e.index])


@_evaluate.register
def _(e: Neg, point) -> complex:
    return -_evaluate(e.arg, point)


@_evaluate.register
def _(e: Sum, point) -> complex:
    return _evaluate(e.left, point) + _evaluate(e.right, point)


@_evaluate.register
def _(e: Prod, point) -> complex:
    return _evaluate(e.left, point) * _evaluate(e.right, point)


@_evaluate.register
def _(e: Quot, point) -> complex:
    denominator = _evaluate(e.right, point)
    if denominator == 0:
        raise ExpressionEvaluationError("division by zero", point)
    return _evaluate(e.left, point) / denominator


@_evaluate.register
def _(e: Pow, point) -> complex:
    base = _evaluate(e.base, point)
    if e.exponent < 0 and base == 0:
        raise ExpressionEvaluationError("zero raised to a negative power", point)
    try:
        return _finite(base ** e.exponent, "power", point)
    except (OverflowError, ZeroDivisionError) as exc:
        raise ExpressionEvaluationError(f"power overflow ({exc})", point) from exc


@_evaluate.register
def _(e: Exp, point) -> complex:
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(np.exp(_evaluate(e.arg, point)))
    return _finite(value, "exp", point)


@_evaluate.register
def _(e: Sin, point) -> complex:
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(np.sin(_evaluate(e.arg, point)))
    return _finite(value, "sin", point)


@_evaluate.register
def _(e: Cos, point) -> complex:
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(np.cos(_evaluate(e.arg, point)))
    return _finite(value, "cos", point)


def eval_expr(e: Expr, point: Sequence[float]) -> complex:
    """실수 좌표점에서 수식 평가

    Args:
        e: 수식
        point: (x0, x1, x2, x3)

    Returns:
        복소 부동소수점 값

    Raises:
        ExpressionEvaluationError: 0 으로 나누기, 오버플로, 비유한 값 등 (샘플 포인트 포함)
    """
    if len(point) != SPATIAL_RANGE:
        raise IndexRangeError(f"sample point must have {SPATIAL_RANGE} coordinates, got {len(point)}")
    point = tuple(float(x) for x in point)
    if not all(np.isfinite(point)):
        raise ExpressionEvaluationError("non-finite sample point", point)
    try:
        value = _evaluate(e, point)
    except OverflowError as exc:
        raise ExpressionEvaluationError(f"overflow ({exc})", point) from exc
    return _finite(value, "value", point)


def eval_array(exprs: np.ndarray, point: Sequence[float]) -> np.ndarray:
    """수식 배열을 같은 모양의 complex128 배열로 평가"""
    out = np.empty(exprs.shape, dtype=np.complex128)
    for index, e in np.ndenumerate(exprs):
        out[index] = eval_expr(e, point)
    return out


# ----------------------------------------------------------- differentiation


@singledispatch
def _derivative(e: Expr, k: int) -> Expr:
    raise TypeError(f"cannot differentiate {type(e).__name__}")


@_derivative.register(Rational)
@_derivative.register(ImaginaryUnit)
def _(e, k: int) -> Expr:
    return ZERO


@_derivative.register
def _(e: Coord, k: int) -> Expr:
    return ONE if e.index == k else ZERO


@_derivative.register
def _(e: Neg, k: int) -> Expr:
    return neg(differentiate(e.arg, k))


@_derivative.register
def _(e: Sum, k: int) -> Expr:
    return add(differentiate(e.left, k), differentiate(e.right, k))


@_derivative.register
def _(e: Prod, k: int) -> Expr:
    return add(
        mul(differentiate(e.left, k), e.right),
        mul(e.left, differentiate(e.right, k)),
    )


@_derivative.register
def _(e: Quot, k: int) -> Expr:
    numerator = sub(
        mul(differentiate(e.left, k), e.right),
        mul(e.left, differentiate(e.right, k)),
    )
    return div(numerator, power(e.right, 2))


@_derivative.register
def _(e: Pow, k: int) -> Expr:
    return mul(mul(const(e.exponent), power(e.base, e.exponent - 1)), differentiate(e.base, k))


@_derivative.register
def _(e: Exp, k: int) -> Expr:
    return mul(e, differentiate(e.arg, k))


@_derivative.register
def _(e: Sin, k: int) -> Expr:
    return mul(Cos(e.arg), differentiate(e.arg, k))


@_derivative.register
def _(e: Cos, k: int) -> Expr:
    return neg(mul(Sin(e.arg), differentiate(e.arg, k)))


@lru_cache(maxsize=8192)
def differentiate(e: Expr, k: int) -> Expr:
    """좌표 x^k 에 대한 기호 미분 (상수 접기, 0/1 흡수만 수행)

    Raises:
        IndexRangeError: k 가 0..3 범위를 벗어난 경우
    """
    if not 0 <= k < SPATIAL_RANGE:
        raise IndexRangeError(f"coordinate index out of range: {k}")
    return _derivative(e, k)


def central_difference(e: Expr, k: int, point: Sequence[float], h: float) -> complex:
    """x^k 방향 중심 차분 (e(x + h) - e(x - h)) / 2h"""
    forward = list(point)
    backward = list(point)
    forward[k] += h
    backward[k] -= h
    return (eval_expr(e, forward) - eval_expr(e, backward)) / (2.0 * h)


# ---------------------------------------------------------- exact constants


@singledispatch
def _constant(e: Expr) -> Optional[GaussianRational]:
    return None


@_constant.register
def _(e: Rational) -> Optional[GaussianRational]:
    return GaussianRational(e.value)


@_constant.register
def _(e: ImaginaryUnit) -> Optional[GaussianRational]:
    return GaussianRational(Fraction(0), Fraction(1))


@_constant.register
def _(e: Neg) -> Optional[GaussianRational]:
    value = _constant(e.arg)
    return None if value is None else -value


def _binary(e, op) -> Optional[GaussianRational]:
    left, right = _constant(e.left), _constant(e.right)
    if left is None or right is None:
        return None
    return op(left, right)


@_constant.register
def _(e: Sum) -> Optional[GaussianRational]:
    return _binary(e, lambda a, b: a + b)


@_constant.register
def _(e: Prod) -> Optional[GaussianRational]:
    return _binary(e, lambda a, b: a * b)


@_constant.register
def _(e: Quot) -> Optional[GaussianRational]:
    return _binary(e, lambda a, b: None if b == 0 else a / b)


@_constant.register
def _(e: Pow) -> Optional[GaussianRational]:
    base = _constant(e.base)
    if base is None or (base == 0 and e.exponent < 0):
        return None
    return base ** e.exponent


@_constant.register(Exp)
@_constant.register(Cos)
def _(e) -> Optional[GaussianRational]:
    arg = _constant(e.arg)
    return GaussianRational(1) if arg is not None and arg == 0 else None


@_constant.register
def _(e: Sin) -> Optional[GaussianRational]:
    arg = _constant(e.arg)
    return GaussianRational(0) if arg is not None and arg == 0 else None


def constant_value(e: Expr) -> Optional[GaussianRational]:
    """좌표를 포함하지 않는 수식의 정확한 가우스 유리수 값 (표현 불가하면 None)"""
    return _constant(e)


# --------------------------------------------------------------- conjugation


@singledispatch
def conjugate_expr(e: Expr) -> Expr:
    """복소 켤레 함수 (i → -i, 좌표는 실수)"""
    raise TypeError(f"cannot conjugate {type(e).__name__}")


@conjugate_expr.register(Rational)
@conjugate_expr.register(Coord)
def _(e) -> Expr:
    return e


@conjugate_expr.register
def _(e: ImaginaryUnit) -> Expr:
    return Neg(e)


@conjugate_expr.register(Neg)
@conjugate_expr.register(Exp)
@conjugate_expr.register(Sin)
@conjugate_expr.register(Cos)
def _(e) -> Expr:
    return type(e)(conjugate_expr(e.arg))


@conjugate_expr.register(Sum)
@conjugate_expr.register(Prod)
@conjugate_expr.register(Quot)
def _(e) -> Expr:
    return type(e)(conjugate_expr(e.left), conjugate_expr(e.right))


@conjugate_expr.register
def _(e: Pow) -> Expr:
    return Pow(conjugate_expr(e.base), e.exponent)
