"""차트 좌표 수식 모듈 (파싱, 평가, 기호 미분)"""

from spintensor.expressions.nodes import Expr
from spintensor.expressions.parser import parse_expr, to_text
from spintensor.expressions.calculus import (
    central_difference,
    conjugate_expr,
    constant_value,
    differentiate,
    eval_array,
    eval_expr,
)

__all__ = [
    "Expr",
    "parse_expr",
    "to_text",
    "central_difference",
    "conjugate_expr",
    "constant_value",
    "differentiate",
    "eval_array",
    "eval_expr",
]
