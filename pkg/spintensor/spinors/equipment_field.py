"""수식 성분을 갖는 장비 장 (EquipmentField) 과 점별 스핀 프레임 변환, 일관성 검사"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Optional, Sequence

import numpy as np

from spintensor.algebra.scalars import GaussianRational, ScalarRealm
from spintensor.algebra.tensors import (
    CONJ_DOWN,
    CONJ_UP,
    SPATIAL_DOWN,
    SPATIAL_UP,
    SPINOR_DOWN,
    SPINOR_UP,
    SpinTensor,
)
from spintensor.config.settings import settings
from spintensor.equipment.canonical import (
    INVERSE_IVDW_SIGNATURE,
    IVDW_SIGNATURE,
    Equipment,
    Orientation,
    canonical_equipment,
    volume_tensor,
)
from spintensor.errors import (
    EquipmentInconsistencyError,
    ExpressionEvaluationError,
    RepresentationError,
    SpinTransformDegeneracyError,
)
from spintensor.expressions.calculus import conjugate_expr, constant_value, eval_array, eval_expr
from spintensor.expressions.nodes import ZERO, Expr, ImaginaryUnit, add, const, div, mul, neg, sub
from spintensor.expressions.parser import parse_expr

logger = logging.getLogger(__name__)


def gaussian_to_expr(z: GaussianRational) -> Expr:
    """가우스 유리수 상수를 수식으로 변환"""
    return add(const(z.re), mul(const(z.im), ImaginaryUnit()))


def _exprs_from_tensor(t: SpinTensor) -> np.ndarray:
    out = np.empty(t.shape, dtype=object)
    for index, value in np.ndenumerate(t.entries):
        out[index] = gaussian_to_expr(GaussianRational.coerce(value))
    return out


def _sum_exprs(terms) -> Expr:
    total = ZERO
    for term in terms:
        total = add(total, term)
    return total


def _conjugate_array(exprs: np.ndarray) -> np.ndarray:
    out = np.empty(exprs.shape, dtype=object)
    for index, e in np.ndenumerate(exprs):
        out[index] = conjugate_expr(e)
    return out


@dataclass(frozen=True, eq=False)
class EquipmentField:
    """장비 성분의 수식 배열 (프레임 레이블 기준)

    d, d_dual, dbar, dbar_dual: 2×2, G[p, r, r̄], G_inv[q, s, s̄]: 4×2×2, g, g_dual: 4×4
    """

    d: np.ndarray
    d_dual: np.ndarray
    dbar: np.ndarray
    dbar_dual: np.ndarray
    G: np.ndarray
    G_inv: np.ndarray
    g: np.ndarray
    g_dual: np.ndarray
    orientation: Orientation = Orientation.RIGHT

    @classmethod
    def from_equipment(cls, eq: Equipment) -> "EquipmentField":
        """정확 실현 상수 장비를 상수 수식 장으로 변환"""
        return cls(
            d=_exprs_from_tensor(eq.d),
            d_dual=_exprs_from_tensor(eq.d_dual),
            dbar=_exprs_from_tensor(eq.dbar),
            dbar_dual=_exprs_from_tensor(eq.dbar_dual),
            G=_exprs_from_tensor(eq.G),
            G_inv=_exprs_from_tensor(eq.G_inv),
            g=_exprs_from_tensor(eq.g),
            g_dual=_exprs_from_tensor(eq.g_dual),
            orientation=eq.orientation,
        )

    @classmethod
    def canonical(cls, orientation: Orientation = Orientation.RIGHT) -> "EquipmentField":
        return cls.from_equipment(canonical_equipment(orientation))

    def evaluate(self, point: Sequence[float]) -> Equipment:
        """샘플 포인트에서 부동소수점 실현 장비로 평가

        Raises:
            ExpressionEvaluationError: 평가 오류 (샘플 포인트 포함)
            SignatureViolationError: 계량이 로렌츠 부호가 아닌 경우
        """
        try:
            values = {name: eval_array(getattr(self, name), point) for name in _FIELD_NAMES}
        except ExpressionEvaluationError as e:
            raise e.at_point(point) from e
        return self._assemble(values, ScalarRealm.FLOAT)

    def evaluate_exact(self) -> Equipment:
        """모든 성분이 정확한 상수일 때 정확 실현 장비로 평가

        Raises:
            RepresentationError: 좌표 의존 성분이나 초월 함수 값이 있는 경우
        """
        values = {}
        for name in _FIELD_NAMES:
            exprs = getattr(self, name)
            out = np.empty(exprs.shape, dtype=object)
            for index, e in np.ndenumerate(exprs):
                value = constant_value(e)
                if value is None:
                    raise RepresentationError(f"{name}{list(index)} is not an exact constant: {e}")
                out[index] = value
            values[name] = out
        return self._assemble(values, ScalarRealm.EXACT)

    def _assemble(self, values: Dict[str, np.ndarray], realm: ScalarRealm) -> Equipment:
        g = SpinTensor((SPATIAL_DOWN, SPATIAL_DOWN), values["g"], realm)
        g_dual = SpinTensor((SPATIAL_UP, SPATIAL_UP), values["g_dual"], realm)
        omega, omega_dual = volume_tensor(g, g_dual, self.orientation)
        return Equipment(
            g=g,
            g_dual=g_dual,
            d=SpinTensor((SPINOR_DOWN, SPINOR_DOWN), values["d"], realm),
            d_dual=SpinTensor((SPINOR_UP, SPINOR_UP), values["d_dual"], realm),
            dbar=SpinTensor((CONJ_DOWN, CONJ_DOWN), values["dbar"], realm),
            dbar_dual=SpinTensor((CONJ_UP, CONJ_UP), values["dbar_dual"], realm),
            G=SpinTensor(IVDW_SIGNATURE, values["G"], realm),
            G_inv=SpinTensor(INVERSE_IVDW_SIGNATURE, values["G_inv"], realm),
            omega=omega,
            omega_dual=omega_dual,
            orientation=self.orientation,
        )


_FIELD_NAMES = ("d", "d_dual", "dbar", "dbar_dual", "G", "G_inv", "g", "g_dual")


def _spin_matrix(S) -> np.ndarray:
    out = np.empty((2, 2), dtype=object)
    for a, b in product(range(2), range(2)):
        item = S[a][b]
        out[a, b] = parse_expr(item) if isinstance(item, str) else item
    return out


def spin_determinant(S) -> Expr:
    """det S 수식"""
    S = _spin_matrix(S)
    return sub(mul(S[0, 0], S[1, 1]), mul(S[0, 1], S[1, 0]))


def spin_frame_transform(
    ef: EquipmentField,
    S,
    sample_points: Optional[Sequence[Sequence[float]]] = None,
    threshold: Optional[float] = None,
    tol: Optional[float] = None,
) -> EquipmentField:
    """점별 스핀 프레임 변환 S(x)

    아래 스피너 인덱스는 S, 위 인덱스는 S⁻¹, 켤레 인덱스는 켤레 행렬로 변환한다. g 는 그대로.
    샘플 포인트가 주어지면 각 점에서 det S 와 변환 후 장비 일관성을 검사한다.

    Args:
        ef: 원래 장비 장
        S: 2×2 수식 (문자열 또는 Expr)
        sample_points: 사전/사후 검사할 점 목록
        threshold: |det S| 하한
        tol: 사후 일관성 허용 오차

    Raises:
        SpinTransformDegeneracyError: 샘플 포인트에서 S 가 특이한 경우
        EquipmentInconsistencyError: 변환 후 장비가 일관성 검사를 통과하지 못한 경우
    """
    threshold = settings.frame_degeneracy_threshold if threshold is None else threshold
    tol = settings.equipment_tolerance if tol is None else tol
    S = _spin_matrix(S)
    det = spin_determinant(S)
    for point in sample_points or ():
        value = eval_expr(det, point)
        if abs(value) < threshold:
            raise SpinTransformDegeneracyError(
                f"spin transform determinant {abs(value):.3e} below {threshold:.1e} at point {list(point)}"
            )

    S_inv = np.empty((2, 2), dtype=object)
    S_inv[0, 0], S_inv[0, 1] = div(S[1, 1], det), neg(div(S[0, 1], det))
    S_inv[1, 0], S_inv[1, 1] = neg(div(S[1, 0], det)), div(S[0, 0], det)
    S_bar = _conjugate_array(S)
    S_inv_bar = _conjugate_array(S_inv)
    pairs = list(product(range(2), range(2)))

    d = np.empty((2, 2), dtype=object)
    d_dual = np.empty((2, 2), dtype=object)
    for i, j in pairs:
        d[i, j] = _sum_exprs(mul(mul(S[a, i], S[b, j]), ef.d[a, b]) for a, b in pairs)
        d_dual[i, j] = _sum_exprs(mul(mul(S_inv[i, a], S_inv[j, b]), ef.d_dual[a, b]) for a, b in pairs)
    G = np.empty((4, 2, 2), dtype=object)
    G_inv = np.empty((4, 2, 2), dtype=object)
    for p, (r, rb) in product(range(4), pairs):
        G[p, r, rb] = _sum_exprs(
            mul(mul(S_inv[r, a], S_inv_bar[rb, ab]), ef.G[p, a, ab]) for a, ab in pairs
        )
        G_inv[p, r, rb] = _sum_exprs(
            mul(mul(S[a, r], S_bar[ab, rb]), ef.G_inv[p, a, ab]) for a, ab in pairs
        )
    transformed = EquipmentField(
        d=d,
        d_dual=d_dual,
        dbar=_conjugate_array(d),
        dbar_dual=_conjugate_array(d_dual),
        G=G,
        G_inv=G_inv,
        g=ef.g,
        g_dual=ef.g_dual,
        orientation=ef.orientation,
    )
    for point in sample_points or ():
        check_equipment_consistency(transformed.evaluate(point), tol, point=point)
    logger.debug(f"[DEBUG] spin-frame transform applied ({len(sample_points or ())} points checked)")
    return transformed


def equipment_residuals(eq: Equipment, metric: Optional[np.ndarray] = None) -> Dict[str, float]:
    """장비 일관성 잔차 (부동소수점)

    계량 역, 스피너 계량 역 (d, d̄), d̄ 켤레 일관성, 두 이차 항등식, 장면 계량과의 일치.
    """
    eye4, eye2 = np.eye(4), np.eye(2)
    f = {name: getattr(eq, name).to_float().entries for name in _FIELD_NAMES}
    residuals = {
        "metric_inverse": np.abs(f["g"] @ f["g_dual"] - eye4),
        "spinor_metric_inverse": np.abs(f["d"] @ f["d_dual"] - eye2),
        "conjugate_spinor_metric_inverse": np.abs(f["dbar"] @ f["dbar_dual"] - eye2),
        "conjugation": np.concatenate([
            np.abs(f["dbar"] - np.conj(f["d"])).ravel(),
            np.abs(f["dbar_dual"] - np.conj(f["d_dual"])).ravel(),
        ]),
        "quadratic.spatial": np.abs(np.einsum("prb,qrb->pq", f["G"], f["G_inv"]) - 2 * eye4),
        "quadratic.spinor": np.abs(
            np.einsum("qab,qcd->abcd", f["G"], f["G_inv"]) - 2 * np.einsum("ac,bd->abcd", eye2, eye2)
        ),
    }
    if metric is not None:
        residuals["metric_agreement"] = np.abs(f["g"] - metric)
    return {name: float(np.max(values)) for name, values in residuals.items()}


def check_equipment_consistency(
    eq: Equipment,
    tol: float,
    metric: Optional[np.ndarray] = None,
    point: Optional[Sequence[float]] = None,
) -> Dict[str, float]:
    """일관성 잔차를 계산하고 허용 오차를 넘는 항목이 있으면 예외

    Raises:
        EquipmentInconsistencyError: 실패한 항등식 이름 목록 포함
    """
    residuals = equipment_residuals(eq, metric)
    failed = [name for name, value in residuals.items() if value > tol]
    if failed:
        logger.warning(f"[WARNING] equipment inconsistent at {point}: {failed}")
        raise EquipmentInconsistencyError(failed, point)
    return residuals
