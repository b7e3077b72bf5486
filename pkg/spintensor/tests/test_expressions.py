"""
차트 좌표 수식 테스트

- 파서 오류 위치, 알 수 없는 식별자
- 기호 미분 대 중심 차분 (임의 수식 100개)
- 출력 후 재파싱 왕복, 정확 상수 평가, 켤레
"""
import logging
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from spintensor.algebra.scalars import GaussianRational
from spintensor.errors import ExpressionEvaluationError, ExpressionSyntaxError, IndexRangeError, UnknownSymbolError
from spintensor.expressions.calculus import (
    central_difference,
    conjugate_expr,
    constant_value,
    differentiate,
    eval_expr,
)
from spintensor.expressions.nodes import (
    Coord,
    Cos,
    Exp,
    ImaginaryUnit,
    Neg,
    Pow,
    Prod,
    Quot,
    Rational,
    Sin,
    Sum,
    add,
)
from spintensor.expressions.parser import parse_expr, to_text

logger = logging.getLogger(__name__)

FD_STEP = 1e-5

coords = st.integers(min_value=0, max_value=3).map(Coord)
rationals = st.fractions(min_value=-2, max_value=2, max_denominator=4).map(Rational)
points = st.tuples(*[st.floats(min_value=-1, max_value=1, allow_nan=False)] * 4)


def _safe_denominator(e):
    """분모가 0 이 되지 않도록 2 + e·e 또는 exp(e) 로 감쌈 (e 는 실수값 수식)"""
    return st.sampled_from([Sum(Rational(2), Prod(e, e)), Exp(e)])


@st.composite
def real_exprs(draw, depth=3):
    """실수값 수식 (분모 안전)"""
    if depth == 0 or draw(st.booleans()):
        return draw(st.one_of(coords, rationals))
    kind = draw(st.sampled_from(["sum", "prod", "quot", "pow", "neg", "exp", "sin", "cos"]))
    a = draw(real_exprs(depth=depth - 1))
    if kind in ("exp", "sin", "cos"):
        # exp 의 인자는 sin 으로 [-1, 1] 에 묶음
        return {"exp": Exp(Sin(a)), "sin": Sin(a), "cos": Cos(a)}[kind]
    if kind == "neg":
        return Neg(a)
    if kind == "pow":
        return Pow(a, draw(st.integers(min_value=0, max_value=3)))
    b = draw(real_exprs(depth=depth - 1))
    if kind == "quot":
        return Quot(a, draw(_safe_denominator(b)))
    return Sum(a, b) if kind == "sum" else Prod(a, b)


@st.composite
def complex_exprs(draw):
    real = draw(real_exprs())
    imag = draw(real_exprs())
    return Sum(real, Prod(ImaginaryUnit(), imag))


def test_parse_precedence_and_values():
    point = (0.5, 2.0, -1.0, 3.0)
    cases = {
        "1 + 2*3": 7,
        "-x1^2": -4,
        "(x0 + x1) * x2": -2.5,
        "x1^(-2)": 0.25,
        "x3/x1/x0": 3.0,
        "2 - 3 - 4": -5,
        "exp(0) + sin(0) + cos(0)": 2,
        "i*i": -1,
        "0.5 * x1": 1.0,
    }
    for text, expected in cases.items():
        assert eval_expr(parse_expr(text), point) == pytest.approx(expected), text


def test_parse_errors_carry_position():
    with pytest.raises(UnknownSymbolError) as exc:
        parse_expr("x1 + y")
    assert exc.value.position == 5
    with pytest.raises(UnknownSymbolError):
        parse_expr("x4")
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_expr("2 + * 3")
    assert exc.value.position == 4
    for text in ["", "sin x1", "(x1 + 2", "x1^1.5", "x1 x2", "3 $ 4"]:
        with pytest.raises(ExpressionSyntaxError):
            parse_expr(text)
    logger.info("[TEST] 파서 오류 위치 확인")


def test_evaluation_errors():
    with pytest.raises(ExpressionEvaluationError) as exc:
        eval_expr(parse_expr("1/(x1 - x1)"), (0.0, 0.3, 0.0, 0.0))
    assert exc.value.point == (0.0, 0.3, 0.0, 0.0)
    with pytest.raises(ExpressionEvaluationError):
        eval_expr(parse_expr("x2^(-1)"), (0.0, 0.0, 0.0, 0.0))
    with pytest.raises(ExpressionEvaluationError):
        eval_expr(parse_expr("x1"), (0.0, math.inf, 0.0, 0.0))
    with pytest.raises(IndexRangeError):
        eval_expr(parse_expr("x1"), (0.0, 0.0, 0.0))
    with pytest.raises(IndexRangeError):
        differentiate(parse_expr("x1"), 4)


@pytest.mark.parametrize(
    "text, point",
    [
        ("(exp(x0)+i)^1000", (1.0, 0.0, 0.0, 0.0)),
        ("exp(x0)", (1000.0, 0.0, 0.0, 0.0)),
        ("x0^3 * x0^3", (1e100, 0.0, 0.0, 0.0)),
        ("1" + "0" * 400 + " * x0", (1.0, 0.0, 0.0, 0.0)),
    ],
)
def test_overflow_is_an_evaluation_error(text, point):
    """오버플로/비유한 결과는 OverflowError 대신 포인트가 붙은 평가 오류"""
    logger.info(f"[TEST] 오버플로 평가: {text[:20]}")
    with pytest.raises(ExpressionEvaluationError) as exc:
        eval_expr(parse_expr(text), point)
    assert exc.value.point == point


def test_symbolic_derivatives():
    point = (0.3, -0.7, 1.1, 0.2)
    cases = [
        ("x1*x2", 1, point[2]),
        ("exp(-x1)", 1, -math.exp(0.7)),
        ("sin(x0)^2", 0, 2 * math.sin(0.3) * math.cos(0.3)),
        ("1/x3", 3, -1 / 0.2**2),
        ("i*x2", 2, 1j),
        ("x0", 1, 0),
    ]
    for text, k, expected in cases:
        assert eval_expr(differentiate(parse_expr(text), k), point) == pytest.approx(expected), text


def test_derivative_is_linear():
    a, b = parse_expr("x1*exp(x2)"), parse_expr("cos(x1)")
    for k in range(4):
        assert differentiate(Sum(a, b), k) == add(differentiate(a, k), differentiate(b, k))


@hypothesis_settings(max_examples=100, deadline=None)
@given(complex_exprs(), points, st.integers(min_value=0, max_value=3))
def test_symbolic_matches_central_difference(e, point, k):
    """기호 미분 = 중심 차분 (h = 1e-5, 상대 오차 1e-5)"""
    symbolic = eval_expr(differentiate(e, k), point)
    numeric = central_difference(e, k, point, FD_STEP)
    scale = max(1.0, abs(symbolic), abs(eval_expr(e, point)))
    assert abs(symbolic - numeric) <= 1e-5 * scale, to_text(e)


@hypothesis_settings(max_examples=100, deadline=None)
@given(complex_exprs(), points)
def test_print_parse_round_trip(e, point):
    """출력 후 재파싱하면 수치적으로 동일한 함수"""
    reparsed = parse_expr(to_text(e))
    assert eval_expr(reparsed, point) == eval_expr(e, point)
    assert to_text(parse_expr(to_text(reparsed))) == to_text(reparsed)


def test_constant_value():
    assert constant_value(parse_expr("i*2 + 1/3")) == GaussianRational(Fraction(1, 3), 2)
    assert constant_value(parse_expr("exp(0) - cos(0)")) == 0
    assert constant_value(parse_expr("(1 + i)^2")) == GaussianRational(0, 2)
    assert constant_value(parse_expr("exp(1)")) is None
    assert constant_value(parse_expr("x1 - x1")) is None
    assert constant_value(parse_expr("1/0")) is None


@given(complex_exprs(), points)
def test_conjugate_expr(e, point):
    value = eval_expr(e, point)
    assert eval_expr(conjugate_expr(e), point) == pytest.approx(value.conjugate(), rel=1e-12, abs=1e-12)
