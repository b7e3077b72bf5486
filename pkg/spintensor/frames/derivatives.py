"""편미분 엔진: 기호 미분 또는 중심 차분"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from spintensor.config.settings import settings
from spintensor.expressions.calculus import central_difference, differentiate, eval_expr
from spintensor.expressions.nodes import Expr


class DerivativeMode(str, Enum):
    """미분 방식"""

    SYMBOLIC = "symbolic"
    FINITE_DIFFERENCE = "finite-difference"


@dataclass(frozen=True)
class DerivativeEngine:
    """좌표 편미분 ∂_k 를 샘플 포인트에서 계산"""

    mode: DerivativeMode = DerivativeMode.SYMBOLIC
    step: float = settings.finite_difference_step

    def partial(self, e: Expr, k: int, point: Sequence[float]) -> complex:
        if self.mode is DerivativeMode.SYMBOLIC:
            return eval_expr(differentiate(e, k), point)
        return central_difference(e, k, point, self.step)

    def gradient(self, e: Expr, point: Sequence[float]) -> np.ndarray:
        """(∂_0 e, ..., ∂_3 e)"""
        return np.array([self.partial(e, k, point) for k in range(4)], dtype=np.complex128)

    def gradient_array(self, exprs: np.ndarray, point: Sequence[float]) -> np.ndarray:
        """수식 배열의 기울기. 결과 모양은 (4,) + exprs.shape (첫 축이 미분 방향)"""
        out = np.empty((4,) + exprs.shape, dtype=np.complex128)
        for index, e in np.ndenumerate(exprs):
            out[(slice(None),) + index] = self.gradient(e, point)
        return out


SYMBOLIC = DerivativeEngine()
