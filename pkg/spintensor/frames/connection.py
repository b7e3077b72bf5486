"""비홀로노믹 프레임에서의 계량 접속과 비틀림/계량성 잔차 검사"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from spintensor.frames.derivatives import SYMBOLIC, DerivativeEngine
from spintensor.frames.frame_field import (
    FrameField,
    MetricField,
    commutation_coefficients,
    lie_derivative_array,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidualReport:
    """수치 잔차 검사 결과"""

    name: str
    residual: float
    tolerance: float
    argmax: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def residual_report(name: str, values: np.ndarray, tol: float) -> ResidualReport:
    """잔차 배열의 최대 절댓값으로 보고서 생성"""
    magnitudes = np.abs(np.asarray(values))
    if magnitudes.size == 0:
        return ResidualReport(name, 0.0, tol)
    flat = int(np.argmax(magnitudes))
    index = tuple(int(v) for v in np.unravel_index(flat, magnitudes.shape))
    return ResidualReport(name, float(magnitudes.flat[flat]), tol, index)


@dataclass(frozen=True, eq=False)
class ConnectionAtPoint:
    """한 점에서의 계량 접속

    gamma[k, i, j] = Γ^k_ij (첫 아래 인덱스 i 가 미분 방향),
    gamma_lowered[r, q, m] = Σ_p g_mp Γ^p_rq.
    metric, metric_dual, metric_derivative[r, i, j] = L_r(g_ij), commutation 도 함께 보관한다.
    """

    gamma: np.ndarray
    gamma_lowered: np.ndarray
    metric: np.ndarray
    metric_dual: np.ndarray
    metric_derivative: np.ndarray
    commutation: np.ndarray


def christoffel(
    f: FrameField,
    m: MetricField,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
    threshold: Optional[float] = None,
) -> ConnectionAtPoint:
    """비틀림 없는 계량 접속 Γ^k_ij

    Γ^k_ij = ½ Σ_r g^{kr} (L_i g_rj + L_j g_ir - L_r g_ij) + ½ c^k_ij
             - ½ Σ_{r,s} c^s_ir g^{kr} g_sj - ½ Σ_{r,s} c^s_jr g^{kr} g_si

    Raises:
        MetricDegeneracyError: 계량 퇴화
        SignatureViolationError: 계량 부호 위반
        FrameDegeneracyError: 프레임 퇴화
    """
    g = m.checked_matrix(point, threshold)
    g_dual = np.linalg.inv(g)
    E = f.checked_matrix(point, threshold)
    c = commutation_coefficients(f, point, engine, threshold)
    Lg = lie_derivative_array(f, m.components, point, engine, frame_matrix=E)  # Lg[r, i, j] = L_r g_ij

    derivative_part = (
        np.einsum("irj->rij", Lg)  # L_i g_rj
        + np.einsum("jir->rij", Lg)  # L_j g_ir
        - Lg  # L_r g_ij
    )
    gamma = 0.5 * np.einsum("kr,rij->kij", g_dual, derivative_part)
    gamma = gamma + 0.5 * c
    gamma = gamma - 0.5 * np.einsum("sir,kr,sj->kij", c, g_dual, g)
    gamma = gamma - 0.5 * np.einsum("sjr,kr,si->kij", c, g_dual, g)
    gamma_lowered = np.einsum("mp,prq->rqm", g, gamma)
    return ConnectionAtPoint(
        gamma=gamma,
        gamma_lowered=gamma_lowered,
        metric=g,
        metric_dual=g_dual,
        metric_derivative=Lg,
        commutation=c,
    )


def check_torsion(conn: ConnectionAtPoint, c: np.ndarray, tol: float) -> ResidualReport:
    """max |Γ^k_ij - Γ^k_ji - c^k_ij|"""
    residual = conn.gamma - np.transpose(conn.gamma, (0, 2, 1)) - c
    return residual_report("torsion", residual, tol)


def check_metricity(
    f: FrameField,
    m: MetricField,
    conn: ConnectionAtPoint,
    point: Sequence[float],
    tol: float,
    engine: DerivativeEngine = SYMBOLIC,
) -> ResidualReport:
    """max |L_r(g_ij) - Σ_k Γ^k_ri g_kj - Σ_k Γ^k_rj g_ik|"""
    Lg = lie_derivative_array(f, m.components, point, engine)
    g = m.matrix(point)
    residual = Lg - np.einsum("kri,kj->rij", conn.gamma, g) - np.einsum("krj,ik->rij", conn.gamma, g)
    return residual_report("metricity", residual, tol)


def check_symmetrization(conn: ConnectionAtPoint, tol: float) -> ResidualReport:
    """max |Γ_rqp + Γ_rpq - L_r(g_pq)| (아래 인덱스 접속의 대칭화)"""
    gl = conn.gamma_lowered
    residual = gl + np.transpose(gl, (0, 2, 1)) - np.transpose(conn.metric_derivative, (0, 2, 1))
    return residual_report("symmetrization", residual, tol)


def check_trace(conn: ConnectionAtPoint, tol: float) -> ResidualReport:
    """max_r |Σ_q Γ^q_rq - ½ Σ_{q,m} g^{qm} L_r(g_qm)|"""
    lhs = np.einsum("qrq->r", conn.gamma)
    rhs = 0.5 * np.einsum("qm,rqm->r", conn.metric_dual, conn.metric_derivative)
    return residual_report("trace", lhs - rhs, tol)
