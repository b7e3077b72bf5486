"""스피너 접속 A^i_rj 계산과 두 가지 스피너 일치 조건, U 계수, 미분 교환 잔차"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from spintensor.config.settings import settings
from spintensor.frames.connection import ConnectionAtPoint, ResidualReport, residual_report
from spintensor.frames.derivatives import SYMBOLIC, DerivativeEngine
from spintensor.frames.frame_field import FrameField, lie_derivative_array
from spintensor.spinors.equipment_field import EquipmentField, check_equipment_consistency

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpinorConnectionAtPoint:
    """한 점에서의 스피너 접속

    A[i, r, j] = A^i_rj, Abar 는 A 의 성분별 켤레 (스피너 레이블을 켤레 스피너 레이블로 읽음).
    terms 는 A 를 이루는 세 항 (Christoffel 항, IvdW 미분 항, 켤레 스피너 계량 대각합 항).
    """

    A: np.ndarray
    Abar: np.ndarray
    terms: Tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def term_norms(self) -> Tuple[float, float, float]:
        return tuple(float(np.max(np.abs(t))) for t in self.terms)


def spinor_connection(
    ef: EquipmentField,
    f: FrameField,
    conn: ConnectionAtPoint,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
    tol: Optional[float] = None,
) -> SpinorConnectionAtPoint:
    """스피너 접속 성분

    A^i_rj = ¼ Σ G^{i s̄}_p Γ^p_rq G^q_{j s̄} - ¼ Σ L_r(G^{i s̄}_q) G^q_{j s̄}
             - ¼ δ^i_j Σ L_r(d̄_{j̄ ī}) d̄^{ī j̄}

    Raises:
        EquipmentInconsistencyError: 점에서 장비 일관성 검사 실패 (실패 항등식 목록 포함)
    """
    tol = settings.equipment_tolerance if tol is None else tol
    eq = ef.evaluate(point)
    check_equipment_consistency(eq, tol, metric=conn.metric, point=point)
    G, G_inv = eq.G.entries, eq.G_inv.entries
    dbar_dual = eq.dbar_dual.entries
    E = f.matrix(point)
    LG = lie_derivative_array(f, ef.G, point, engine, frame_matrix=E)  # LG[r, q, i, s̄]
    Ldbar = lie_derivative_array(f, ef.dbar, point, engine, frame_matrix=E)  # Ldbar[r, j̄, ī]

    christoffel_term = 0.25 * np.einsum("pis,prq,qjs->irj", G, conn.gamma, G_inv)
    derivative_term = -0.25 * np.einsum("rqis,qjs->irj", LG, G_inv)
    trace = np.einsum("rba,ab->r", Ldbar, dbar_dual)
    trace_term = -0.25 * np.einsum("ij,r->irj", np.eye(2), trace)
    A = christoffel_term + derivative_term + trace_term
    return SpinorConnectionAtPoint(A=A, Abar=np.conj(A), terms=(christoffel_term, derivative_term, trace_term))


def check_spinor_metric_concordance(
    ef: EquipmentField,
    f: FrameField,
    sc: SpinorConnectionAtPoint,
    point: Sequence[float],
    tol: float,
    engine: DerivativeEngine = SYMBOLIC,
) -> ResidualReport:
    """max |L_r(d_ij) - Σ_k A^k_ri d_kj - Σ_k A^k_rj d_ik|"""
    d = ef.evaluate(point).d.entries
    Ld = lie_derivative_array(f, ef.d, point, engine)
    residual = Ld - np.einsum("kri,kj->rij", sc.A, d) - np.einsum("krj,ik->rij", sc.A, d)
    return residual_report("spinor_metric_concordance", residual, tol)


def check_ivdw_concordance(
    ef: EquipmentField,
    f: FrameField,
    conn: ConnectionAtPoint,
    sc: SpinorConnectionAtPoint,
    point: Sequence[float],
    tol: float,
    engine: DerivativeEngine = SYMBOLIC,
) -> ResidualReport:
    """max |L_r(G^{i ī}_p) + Σ_k A^i_rk G^{k ī}_p + Σ_k̄ Ā^ī_rk̄ G^{i k̄}_p - Σ_k Γ^k_rp G^{i ī}_k|"""
    G = ef.evaluate(point).G.entries
    LG = lie_derivative_array(f, ef.G, point, engine)
    residual = (
        LG
        + np.einsum("irk,pkb->rpib", sc.A, G)
        + np.einsum("brk,pik->rpib", sc.Abar, G)
        - np.einsum("krp,kib->rpib", conn.gamma, G)
    )
    return residual_report("ivdw_concordance", residual, tol)


def u_coefficients(
    ef: EquipmentField,
    f: FrameField,
    point: Sequence[float],
    engine: DerivativeEngine = SYMBOLIC,
) -> Tuple[np.ndarray, np.ndarray]:
    """U_r = ½ Σ_{i,k} L_r(d^{ik}) d_ki 와 같은 방식의 Ū_r (d̄ 로부터)"""
    eq = ef.evaluate(point)
    L_dual = lie_derivative_array(f, ef.d_dual, point, engine)
    L_bar_dual = lie_derivative_array(f, ef.dbar_dual, point, engine)
    U = 0.5 * np.einsum("rik,ki->r", L_dual, eq.d.entries)
    U_bar = 0.5 * np.einsum("rik,ki->r", L_bar_dual, eq.dbar.entries)
    return U, U_bar


def check_u_proportionality(
    ef: EquipmentField,
    f: FrameField,
    point: Sequence[float],
    tol: float,
    engine: DerivativeEngine = SYMBOLIC,
) -> Tuple[ResidualReport, ResidualReport]:
    """L_r(d^{ik}) = U_r d^{ik} 와 켤레 관계의 잔차"""
    eq = ef.evaluate(point)
    U, U_bar = u_coefficients(ef, f, point, engine)
    L_dual = lie_derivative_array(f, ef.d_dual, point, engine)
    L_bar_dual = lie_derivative_array(f, ef.dbar_dual, point, engine)
    return (
        residual_report("u_proportionality", L_dual - np.einsum("r,ik->rik", U, eq.d_dual.entries), tol),
        residual_report("ubar_proportionality", L_bar_dual - np.einsum("r,ik->rik", U_bar, eq.dbar_dual.entries), tol),
    )


def derivative_swap_residuals(
    ef: EquipmentField,
    f: FrameField,
    point: Sequence[float],
    tol: float,
    engine: DerivativeEngine = SYMBOLIC,
) -> Dict[str, ResidualReport]:
    """Σ L(G)·G_inv = -Σ G·L(G_inv) 의 네 가지 축약 패턴

    spinor_pair:        Σ_{i,ī}  (자유 인덱스 r, p, q)
    spatial_conjugate:  Σ_{q,s̄} (자유 인덱스 r, i, j)
    conjugate_pair:     Σ_{m,k}  (자유 인덱스 r, s̄, ī)
    spatial:            Σ_q      (자유 인덱스 r, i, ī, j, j̄)
    """
    eq = ef.evaluate(point)
    G, G_inv = eq.G.entries, eq.G_inv.entries
    E = f.matrix(point)
    LG = lie_derivative_array(f, ef.G, point, engine, frame_matrix=E)
    LG_inv = lie_derivative_array(f, ef.G_inv, point, engine, frame_matrix=E)
    patterns = {
        "swap.spinor_pair": ("rpab,qab->rpq", "pab,rqab->rpq"),
        "swap.spatial_conjugate": ("rqis,qjs->rij", "qis,rqjs->rij"),
        "swap.conjugate_pair": ("rmki,mks->rsi", "mki,rmks->rsi"),
        "swap.spatial": ("rqab,qcd->rabcd", "qab,rqcd->rabcd"),
    }
    reports = {}
    for name, (first, second) in patterns.items():
        residual = np.einsum(first, LG, G_inv) + np.einsum(second, G, LG_inv)
        reports[name] = residual_report(name, residual, tol)
    return reports
