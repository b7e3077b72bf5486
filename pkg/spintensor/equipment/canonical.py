"""표준 프레임 쌍의 장비: 민코프스키 계량, 스피너 계량, 파울리 IvdW 장, 부피 텐서"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Sequence, Tuple

import numpy as np
from sympy.combinatorics.permutations import Permutation

from spintensor.algebra.levi_civita import levi_civita_table
from spintensor.algebra.scalars import GaussianRational, ScalarRealm, exact_conjugate
from spintensor.algebra.tensors import (
    CONJ_DOWN,
    CONJ_UP,
    SPATIAL_DOWN,
    SPATIAL_UP,
    SPINOR_DOWN,
    SPINOR_UP,
    SpinTensor,
    conjugate,
    raise_lower,
)
from spintensor.config.constants import (
    MINKOWSKI_DIAGONAL,
    MIRROR_SIGNS,
    PAULI_MATRICES,
    SPATIAL_RANGE,
    SPINOR_METRIC,
    SPINOR_METRIC_DUAL,
)
from spintensor.errors import (
    IndexRangeError,
    RepresentationError,
    SignatureError,
    SignatureViolationError,
    SpinTransformDegeneracyError,
)

logger = logging.getLogger(__name__)

IVDW_SIGNATURE = (SPATIAL_DOWN, SPINOR_UP, CONJ_UP)
INVERSE_IVDW_SIGNATURE = (SPATIAL_UP, SPINOR_DOWN, CONJ_DOWN)


class Orientation(str, Enum):
    """프레임 방향 (오른손/왼손)"""

    RIGHT = "right"
    LEFT = "left"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.RIGHT else -1

    def flipped(self) -> "Orientation":
        return Orientation.LEFT if self is Orientation.RIGHT else Orientation.RIGHT


@dataclass(frozen=True)
class Equipment:
    """프레임 쌍의 장비 성분 묶음 (값 객체)"""

    g: SpinTensor
    g_dual: SpinTensor
    d: SpinTensor
    d_dual: SpinTensor
    dbar: SpinTensor
    dbar_dual: SpinTensor
    G: SpinTensor
    G_inv: SpinTensor
    omega: SpinTensor
    omega_dual: SpinTensor
    orientation: Orientation = Orientation.RIGHT

    @property
    def realm(self) -> ScalarRealm:
        return self.G.realm


def minkowski_metric(realm: ScalarRealm = ScalarRealm.EXACT) -> Tuple[SpinTensor, SpinTensor]:
    """(g_pq, g^mn) = diag(1,-1,-1,-1)"""
    diag = np.diag(MINKOWSKI_DIAGONAL).tolist()
    return (
        SpinTensor((SPATIAL_DOWN, SPATIAL_DOWN), diag, realm),
        SpinTensor((SPATIAL_UP, SPATIAL_UP), diag, realm),
    )


def spinor_metric(realm: ScalarRealm = ScalarRealm.EXACT) -> Tuple[SpinTensor, SpinTensor, SpinTensor, SpinTensor]:
    """(d, d_dual, dbar, dbar_dual)"""
    d = SpinTensor((SPINOR_DOWN, SPINOR_DOWN), [list(row) for row in SPINOR_METRIC], realm)
    d_dual = SpinTensor((SPINOR_UP, SPINOR_UP), [list(row) for row in SPINOR_METRIC_DUAL], realm)
    return d, d_dual, conjugate(d), conjugate(d_dual)


def pauli_ivdw(realm: ScalarRealm = ScalarRealm.EXACT) -> SpinTensor:
    """G^{r r̄}_p 의 공간 슬라이스가 (σ0, σ1, σ2, σ3) 인 IvdW 장"""
    entries = [
        [[GaussianRational(re, im) for re, im in row] for row in sigma]
        for sigma in PAULI_MATRICES
    ]
    G = SpinTensor(IVDW_SIGNATURE, entries, ScalarRealm.EXACT)
    return G.to_float() if realm is ScalarRealm.FLOAT else G


def inverse_ivdw(G: SpinTensor, g_dual: SpinTensor, d: SpinTensor, dbar: SpinTensor) -> SpinTensor:
    """공간 인덱스를 올리고 두 스피너 인덱스를 내려 G^q_{s s̄} 계산

    G^q_{s s̄} = Σ G^{r r̄}_p g^{pq} d_{rs} d̄_{r̄ s̄}

    Raises:
        SignatureError: 입력 시그니처가 장비 규약과 다른 경우
    """
    expected = {
        "G": (G, IVDW_SIGNATURE),
        "g_dual": (g_dual, (SPATIAL_UP, SPATIAL_UP)),
        "d": (d, (SPINOR_DOWN, SPINOR_DOWN)),
        "dbar": (dbar, (CONJ_DOWN, CONJ_DOWN)),
    }
    for name, (tensor, signature) in expected.items():
        if tensor.signature != signature:
            raise SignatureError(f"{name} has signature {tensor.signature}, expected {signature}")
    result = raise_lower(G, 0, g_dual)
    result = raise_lower(result, 1, d)
    return raise_lower(result, 2, dbar)


def _determinant(m: SpinTensor):
    """라이프니츠 전개 (정확 실현에서도 그대로 동작)"""
    entries = m.entries
    total = GaussianRational(0) if m.realm is ScalarRealm.EXACT else 0j
    for perm in permutations(range(SPATIAL_RANGE)):
        term = Permutation(list(perm)).signature()
        for row, col in enumerate(perm):
            term = term * entries[row, col]
        total = total + term
    return total


def _exact_sqrt(value: Fraction) -> Fraction:
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise RepresentationError(f"sqrt({value}) is not rational; use the float realization")
    return Fraction(rn, rd)


def _sqrt_minus_det(metric: SpinTensor):
    det = _determinant(metric)
    if metric.realm is ScalarRealm.EXACT:
        if det.im != 0 or det.re >= 0:
            raise SignatureViolationError(f"metric determinant {det} is not negative")
        return GaussianRational(_exact_sqrt(-det.re))
    det = complex(det)
    if abs(det.imag) > 1e-12 * max(1.0, abs(det.real)) or det.real >= 0:
        raise SignatureViolationError(f"metric determinant {det} is not negative")
    return math.sqrt(-det.real)


def volume_tensor(
    g: SpinTensor, g_dual: SpinTensor, orientation: Orientation = Orientation.RIGHT
) -> Tuple[SpinTensor, SpinTensor]:
    """부피 텐서 ω_prqs 와 그 쌍대 ω^{ambn}

    ω_prqs = sqrt(-det g) ε_prqs, ω^{ambn} = -sqrt(-det g^) ε^{ambn} (왼손 방향은 둘 다 부호 반전)

    Raises:
        SignatureViolationError: det(g) >= 0
        RepresentationError: 정확 실현에서 -det(g) 가 유리수의 제곱이 아닌 경우
    """
    if g.signature != (SPATIAL_DOWN, SPATIAL_DOWN) or g_dual.signature != (SPATIAL_UP, SPATIAL_UP):
        raise SignatureError("volume_tensor expects g (lower, lower) and g_dual (upper, upper)")
    root = _sqrt_minus_det(g)
    root_dual = _sqrt_minus_det(g_dual)
    sign = orientation.sign
    epsilon = levi_civita_table()
    if g.realm is ScalarRealm.EXACT:
        eps = np.empty(epsilon.shape, dtype=object)
        for index, value in np.ndenumerate(epsilon):
            eps[index] = GaussianRational(int(value))
        omega = eps * (root * sign)
        omega_dual = eps * (-root_dual * sign)
    else:
        omega = epsilon * (root * sign)
        omega_dual = epsilon * (-root_dual * sign)
    return (
        SpinTensor((SPATIAL_DOWN,) * 4, omega, g.realm),
        SpinTensor((SPATIAL_UP,) * 4, omega_dual, g.realm),
    )


def assemble_equipment(
    g: SpinTensor,
    g_dual: SpinTensor,
    d: SpinTensor,
    d_dual: SpinTensor,
    G: SpinTensor,
    orientation: Orientation = Orientation.RIGHT,
    G_inv: SpinTensor | None = None,
) -> Equipment:
    """성분들로 장비 구성 (d̄ 는 켤레로, G_inv 는 생략 시 inverse_ivdw 로 계산)"""
    dbar = conjugate(d)
    dbar_dual = conjugate(d_dual)
    if G_inv is None:
        G_inv = inverse_ivdw(G, g_dual, d, dbar)
    omega, omega_dual = volume_tensor(g, g_dual, orientation)
    return Equipment(
        g=g, g_dual=g_dual, d=d, d_dual=d_dual, dbar=dbar, dbar_dual=dbar_dual,
        G=G, G_inv=G_inv, omega=omega, omega_dual=omega_dual, orientation=orientation,
    )


def canonical_equipment(orientation: Orientation = Orientation.RIGHT) -> Equipment:
    """표준 프레임 쌍의 장비 (정확 실현)

    방향 플래그는 ω 와 ω 쌍대의 부호만 바꾼다.
    """
    g, g_dual = minkowski_metric()
    d, d_dual, _, _ = spinor_metric()
    equipment = assemble_equipment(g, g_dual, d, d_dual, pauli_ivdw(), orientation)
    logger.debug(f"[DEBUG] canonical equipment built: orientation={orientation.value}")
    return equipment


def mirror_frame(eq: Equipment) -> Equipment:
    """공간 반사 diag(1,-1,-1,-1) 를 텐서 변환으로 적용

    G, G_inv 의 공간 슬라이스 1..3 과 ω, ω 쌍대의 부호가 바뀌고 방향 플래그가 뒤집힌다.
    g 와 스피너 계량은 불변.
    """
    signs = np.array(MIRROR_SIGNS, dtype=object if eq.realm is ScalarRealm.EXACT else np.complex128)
    G = SpinTensor(eq.G.signature, eq.G.entries * signs[:, None, None], eq.realm)
    G_inv = SpinTensor(eq.G_inv.signature, eq.G_inv.entries * signs[:, None, None], eq.realm)
    return replace(
        eq, G=G, G_inv=G_inv, omega=-eq.omega, omega_dual=-eq.omega_dual,
        orientation=eq.orientation.flipped(),
    )


def oriented_frame_pair(orientation: Orientation) -> Equipment:
    """주어진 방향의 일관된 표준 프레임 쌍

    오른손은 canonical_equipment 그대로, 왼손은 오른손 쌍을 공간 반사한 것이다.
    왼손 쌍의 ω 는 canonical_equipment(LEFT) 의 ω 와 같다.
    """
    right = canonical_equipment(Orientation.RIGHT)
    if orientation is Orientation.RIGHT:
        return right
    return mirror_frame(right)


def corrupt_equipment(eq: Equipment, labels: Sequence[int]) -> Equipment:
    """G 의 성분 하나 (레이블 p, r, r̄) 의 부호를 바꾼 장비 (G_inv 는 유지)

    Raises:
        IndexRangeError: 레이블이 범위를 벗어나거나 해당 성분이 0 이라 변화가 없는 경우
    """
    if len(labels) != 3:
        raise IndexRangeError(f"corruption needs three labels (p, r, rbar), got {list(labels)}")
    value = eq.G.at(*labels)
    if value == 0:
        raise IndexRangeError(f"G entry {tuple(labels)} is zero; negating it changes nothing")
    p, r, rbar = labels
    entries = eq.G.entries.copy()
    entries[p, r - 1, rbar - 1] = -value
    logger.info(f"[INFO] Corrupted G entry {tuple(labels)}: {value} -> {-value}")
    return replace(eq, G=SpinTensor(eq.G.signature, entries, eq.realm))


SpinMatrix = np.ndarray


def _exact_matrix(S) -> np.ndarray:
    out = np.empty((2, 2), dtype=object)
    for a in range(2):
        for b in range(2):
            out[a, b] = GaussianRational.coerce(S[a][b])
    return out


def _exact_inverse_2x2(S: np.ndarray) -> np.ndarray:
    det = S[0, 0] * S[1, 1] - S[0, 1] * S[1, 0]
    if det == 0:
        raise SpinTransformDegeneracyError("spin-frame transform matrix is singular")
    inv = np.empty((2, 2), dtype=object)
    inv[0, 0], inv[0, 1] = S[1, 1] / det, -S[0, 1] / det
    inv[1, 0], inv[1, 1] = -S[1, 0] / det, S[0, 0] / det
    return inv


def transform_spin_frame(eq: Equipment, S) -> Equipment:
    """상수 스핀 프레임 변환 (정확 실현)

    아래 스피너 인덱스는 S, 위 인덱스는 S⁻¹, 켤레 인덱스는 켤레 행렬로 변환한다.
    d' = Sᵀ d S, G'_p = S⁻¹ G_p S⁻¹†, G_inv'^q = Sᵀ G_inv^q S̄. g 와 ω 는 그대로.

    Args:
        eq: 정확 실현 장비
        S: 2×2 가우스 유리수 행렬 (행렬식 ≠ 0)

    Returns:
        변환된 장비
    """
    S = _exact_matrix(S)
    S_inv = _exact_inverse_2x2(S)
    S_bar = exact_conjugate(S)
    S_inv_bar = exact_conjugate(S_inv)

    d = SpinTensor(eq.d.signature, S.T @ eq.d.entries @ S, ScalarRealm.EXACT)
    d_dual = SpinTensor(eq.d_dual.signature, S_inv @ eq.d_dual.entries @ S_inv.T, ScalarRealm.EXACT)
    G = np.empty(eq.G.shape, dtype=object)
    G_inv = np.empty(eq.G_inv.shape, dtype=object)
    for p in range(SPATIAL_RANGE):
        G[p] = S_inv @ eq.G.entries[p] @ S_inv_bar.T
        G_inv[p] = S.T @ eq.G_inv.entries[p] @ S_bar
    return replace(
        eq,
        d=d,
        d_dual=d_dual,
        dbar=conjugate(d),
        dbar_dual=conjugate(d_dual),
        G=SpinTensor(eq.G.signature, G, ScalarRealm.EXACT),
        G_inv=SpinTensor(eq.G_inv.signature, G_inv, ScalarRealm.EXACT),
    )


def _random_gaussian_rational(rng: np.random.Generator) -> GaussianRational:
    re = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 5)))
    im = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 5)))
    return GaussianRational(re, im)


def random_unimodular(rng: np.random.Generator, factors: int = 3) -> np.ndarray:
    """행렬식이 1 인 임의의 가우스 유리수 2×2 행렬 (기본 행렬의 곱)"""
    one, zero = GaussianRational(1), GaussianRational(0)
    result = np.array([[one, zero], [zero, one]], dtype=object)
    for _ in range(factors):
        upper = np.array([[one, _random_gaussian_rational(rng)], [zero, one]], dtype=object)
        lower = np.array([[one, zero], [_random_gaussian_rational(rng), one]], dtype=object)
        scale = _random_gaussian_rational(rng)
        if scale == 0:
            scale = GaussianRational(2, 1)
        diagonal = np.array([[scale, zero], [zero, scale.inverse()]], dtype=object)
        result = result @ upper @ diagonal @ lower
    return result
