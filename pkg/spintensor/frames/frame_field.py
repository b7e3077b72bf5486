"""차트 위의 프레임과 프레임 성분 계량, 교환 계수, 프레임 방향 리 미분"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from spintensor.config.settings import settings
from spintensor.errors import (
    ExpressionEvaluationError,
    FrameDegeneracyError,
    MetricDegeneracyError,
    SignatureError,
    SignatureViolationError,
)
from spintensor.expressions.calculus import differentiate, eval_array
from spintensor.expressions.nodes import Expr, add, mul
from spintensor.expressions.parser import parse_expr
from spintensor.frames.derivatives import SYMBOLIC, DerivativeEngine

logger = logging.getLogger(__name__)


def _expr_matrix(rows: Sequence[Sequence], shape=(4, 4)) -> np.ndarray:
    """문자열 또는 Expr 중첩 리스트를 Expr 객체 배열로 변환"""
    out = np.empty(shape, dtype=object)
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        raise SignatureError(f"expected a {shape[0]}×{shape[1]} array of expressions")
    for i, row in enumerate(rows):
        for j, item in enumerate(row):
            out[i, j] = parse_expr(item) if isinstance(item, str) else item
    return out


@dataclass(frozen=True, eq=False)
class FrameField:
    """프레임 Υ_r = Σ_i Υ^i_r ∂_i (행 i = 좌표 성분, 열 r = 프레임 레이블)"""

    components: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "FrameField":
        return cls(_expr_matrix(rows))

    @classmethod
    def holonomic(cls) -> "FrameField":
        return cls.from_rows([["1" if i == r else "0" for r in range(4)] for i in range(4)])

    def matrix(self, point: Sequence[float]) -> np.ndarray:
        return eval_array(self.components, point)

    def checked_matrix(self, point: Sequence[float], threshold: Optional[float] = None) -> np.ndarray:
        """프레임 행렬과 가역성 검사

        Raises:
            FrameDegeneracyError: |det Υ| < threshold
        """
        threshold = settings.frame_degeneracy_threshold if threshold is None else threshold
        E = self.matrix(point)
        det = np.linalg.det(E)
        if abs(det) < threshold:
            raise FrameDegeneracyError(f"frame determinant {abs(det):.3e} below {threshold:.1e} at point {list(point)}")
        return E


@dataclass(frozen=True, eq=False)
class MetricField:
    """프레임 성분으로 주어진 계량 g_ij"""

    components: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "MetricField":
        return cls(_expr_matrix(rows))

    @classmethod
    def minkowski(cls) -> "MetricField":
        diagonal = ("1", "-1", "-1", "-1")
        return cls.from_rows([[diagonal[i] if i == j else "0" for j in range(4)] for i in range(4)])

    def matrix(self, point: Sequence[float]) -> np.ndarray:
        return eval_array(self.components, point)

    def checked_matrix(self, point: Sequence[float], threshold: Optional[float] = None) -> np.ndarray:
        """계량 값과 로렌츠 부호 (+,-,-,-) 검사

        Raises:
            MetricDegeneracyError: |det g| < threshold
            SignatureViolationError: 부호가 (+,-,-,-) 가 아닌 경우
        """
        threshold = settings.frame_degeneracy_threshold if threshold is None else threshold
        g = self.matrix(point)
        if np.max(np.abs(g - g.T)) > threshold:
            raise SignatureError(f"metric is not symmetric at point {list(point)}")
        det = np.linalg.det(g)
        if abs(det) < threshold:
            raise MetricDegeneracyError(f"metric determinant {abs(det):.3e} below {threshold:.1e} at point {list(point)}")
        if np.max(np.abs(g.imag)) > threshold:
            raise SignatureViolationError(f"metric has complex components at point {list(point)}")
        eigenvalues = np.linalg.eigvalsh(g.real)
        if det.real >= 0 or int(np.sum(eigenvalues > 0)) != 1:
            raise SignatureViolationError(f"metric signature is not (+,-,-,-) at point {list(point)}")
        return g


def lie_derivative(
    f: FrameField,
    component: Expr,
    r: int,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
) -> complex:
    """프레임 벡터 Υ_r 방향 미분 L_r(φ) = Σ_i Υ^i_r ∂_i φ

    Raises:
        ExpressionEvaluationError: 평가 오류 (샘플 포인트 포함)
    """
    E = f.matrix(point)
    try:
        return complex(sum(E[i, r] * engine.partial(component, i, point) for i in range(4)))
    except ExpressionEvaluationError as e:
        raise e.at_point(point) from e


def lie_derivative_array(
    f: FrameField,
    exprs: np.ndarray,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
    frame_matrix: Optional[np.ndarray] = None,
) -> np.ndarray:
    """수식 배열 전체의 L_r 값. 결과 모양은 (4,) + exprs.shape (첫 축이 r)"""
    E = f.matrix(point) if frame_matrix is None else frame_matrix
    gradient = engine.gradient_array(exprs, point)
    return np.tensordot(E.T, gradient, axes=([1], [0]))


def commutation_coefficients(
    f: FrameField,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
    threshold: Optional[float] = None,
) -> np.ndarray:
    """교환 계수 c^k_ij ([Υ_i, Υ_j] = Σ_k c^k_ij Υ_k)

    좌표 성분 괄호 [Υ_i, Υ_j]^m = Σ_n (Υ^n_i ∂_n Υ^m_j - Υ^n_j ∂_n Υ^m_i) 를 구한 뒤
    역 프레임 행렬을 곱한다. 결과는 구성상 (i, j) 에 대해 정확히 반대칭이다.

    Returns:
        c[k, i, j] 4×4×4 복소 배열

    Raises:
        FrameDegeneracyError: 프레임 행렬이 특이한 경우
    """
    E = f.checked_matrix(point, threshold)
    dE = engine.gradient_array(f.components, point)  # dE[n, m, j] = ∂_n Υ^m_j
    half = np.einsum("ni,nmj->mij", E, dE)
    bracket = half - np.transpose(half, (0, 2, 1))
    return np.einsum("km,mij->kij", np.linalg.inv(E), bracket)


def frame_derivative_expr(f: FrameField, phi: Expr, r: int) -> Expr:
    """L_r(φ) 를 수식으로 구성 (기호 미분)"""
    result = None
    for i in range(4):
        term = mul(f.components[i, r], differentiate(phi, i))
        result = term if result is None else add(result, term)
    return result


def bracket_residual(f: FrameField, phi: Expr, point: Sequence[float]) -> float:
    """max_{i,j} |L_i(L_j φ) - L_j(L_i φ) - Σ_k c^k_ij L_k φ| (기호 미분)"""
    c = commutation_coefficients(f, point)
    first = np.array([lie_derivative(f, phi, k, point) for k in range(4)])
    second = np.empty((4, 4), dtype=np.complex128)
    for j in range(4):
        inner = frame_derivative_expr(f, phi, j)
        for i in range(4):
            second[i, j] = lie_derivative(f, inner, i, point)
    residual = second - second.T - np.einsum("kij,k->ij", c, first)
    return float(np.max(np.abs(residual)))
