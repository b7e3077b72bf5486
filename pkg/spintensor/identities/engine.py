"""표준 프레임 쌍에서 IvdW 항등식의 전수 검증 (정확 산술)

모든 비교는 가우스 유리수의 정확한 동등 비교이며, 실패한 인덱스 튜플은 양변 값과 함께 기록된다.
인덱스 튜플은 레이블 (공간 0..3, 스피너 1..2) 로 보고한다.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from spintensor.algebra.scalars import GaussianRational, ScalarRealm
from spintensor.config.constants import (
    AUX_IDENTITY_IDS,
    IDENTITY_AUX,
    IDENTITY_CUBIC,
    IDENTITY_DERIVED,
    IDENTITY_DERIVED_ANTISYMMETRIC,
    IDENTITY_DERIVED_PRODUCT,
    IDENTITY_DERIVED_RECONSTRUCTION,
    IDENTITY_DERIVED_SYMMETRIC,
    IDENTITY_HERMITICITY,
    IDENTITY_QUADRATIC,
)
from spintensor.equipment.canonical import Equipment
from spintensor.errors import RealizationError

logger = logging.getLogger(__name__)

ZERO = GaussianRational(0)
I = GaussianRational(0, 1)
S4 = range(4)
S2 = range(2)


@dataclass(frozen=True)
class IdentityFailure:
    """실패한 인덱스 튜플과 양변 값"""

    index: Tuple[int, ...]
    lhs: object
    rhs: object
    relation: str = ""


@dataclass
class IdentityReport:
    """항등식 하나의 검증 결과"""

    identity_id: str
    total_cases: int
    index_names: Tuple[str, ...] = ()
    failures: List[IdentityFailure] = field(default_factory=list)
    sub_reports: List["IdentityReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(sub.passed for sub in self.sub_reports)


def _require_exact(eq: Equipment, check: str) -> None:
    if eq.realm is not ScalarRealm.EXACT:
        raise RealizationError(f"{check} requires the exact (Gaussian rational) realization")


def _labels(index: Sequence[int], spinor_slots: Iterable[int]) -> Tuple[int, ...]:
    """저장 인덱스 → 레이블 (스피너 슬롯에 +1)"""
    spinor_slots = set(spinor_slots)
    return tuple(v + 1 if k in spinor_slots else v for k, v in enumerate(index))


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def _sum(values: Iterable) -> GaussianRational:
    total = ZERO
    for v in values:
        total = total + v
    return total


def _nonzero_omega(omega_dual: np.ndarray) -> List[Tuple[int, int, int, int, GaussianRational]]:
    return [(a, m, b, n, omega_dual[a, m, b, n]) for a, m, b, n in product(S4, S4, S4, S4) if omega_dual[a, m, b, n] != 0]


def _record(report: IdentityReport, index, lhs, rhs, relation: str = "") -> None:
    if lhs != rhs:
        report.failures.append(IdentityFailure(index=index, lhs=lhs, rhs=rhs, relation=relation))


def check_hermiticity(eq: Equipment, tol: Optional[float] = None) -> IdentityReport:
    """G, G_inv 의 각 공간 슬라이스가 에르미트 행렬인지 검증

    Args:
        eq: 장비
        tol: 부동소수점 실현에서 필수인 허용 오차 (정확 실현에서는 무시)

    Returns:
        32 케이스 (G 16 + G_inv 16) 보고서
    """
    exact = eq.realm is ScalarRealm.EXACT
    if not exact and tol is None:
        raise RealizationError("check_hermiticity on float equipment needs an explicit tolerance")
    report = IdentityReport(IDENTITY_HERMITICITY, 32, ("p", "r", "rbar"))
    for name, tensor in (("G", eq.G.entries), ("G_inv", eq.G_inv.entries)):
        for p, r, rb in product(S4, S2, S2):
            lhs = tensor[p, r, rb]
            rhs = tensor[p, rb, r].conjugate()
            equal = lhs == rhs if exact else abs(complex(lhs) - complex(rhs)) <= tol
            if not equal:
                report.failures.append(IdentityFailure((p, r + 1, rb + 1), lhs, rhs, name))
    logger.debug(f"[DEBUG] [IdentityEngine] hermiticity: {len(report.failures)} failures")
    return report


def check_quadratic(eq: Equipment) -> IdentityReport:
    """두 이차 항등식 검증 (16 + 16 케이스)

    Σ_{r,r̄} G^{r r̄}_p G^q_{r r̄} = 2δ^q_p,  Σ_q G^{r r̄}_q G^q_{s s̄} = 2δ^r_s δ^{r̄}_{s̄}
    """
    _require_exact(eq, "check_quadratic")
    G, Gi = eq.G.entries, eq.G_inv.entries
    report = IdentityReport(IDENTITY_QUADRATIC, 32)
    for p, q in product(S4, S4):
        lhs = _sum(G[p, r, rb] * Gi[q, r, rb] for r, rb in product(S2, S2))
        _record(report, (p, q), lhs, GaussianRational(2 * _delta(p, q)), "spatial")
    for r, rb, s, sb in product(S2, S2, S2, S2):
        lhs = _sum(G[q, r, rb] * Gi[q, s, sb] for q in S4)
        rhs = GaussianRational(2 * _delta(r, s) * _delta(rb, sb))
        _record(report, (r + 1, rb + 1, s + 1, sb + 1), lhs, rhs, "spinor")
    return report


def cubic_sides(eq: Equipment, p: int, q: int, m: int, r: int, rb: int) -> Tuple[GaussianRational, GaussianRational]:
    """삼차 항등식의 양변 (저장 인덱스)"""
    G, Gi, g, gd = eq.G.entries, eq.G_inv.entries, eq.g.entries, eq.g_dual.entries
    wd = eq.omega_dual.entries
    lhs = _sum(G[p, r, sb] * Gi[m, s, sb] * G[q, s, rb] for s, sb in product(S2, S2))
    rhs = G[p, r, rb] * _delta(m, q) + G[q, r, rb] * _delta(m, p)
    rhs = rhs - _sum(G[n, r, rb] * gd[m, n] * g[p, q] for n in S4)
    rhs = rhs + I * _sum(
        g[p, a] * g[q, b] * wd[a, m, b, n] * G[n, r, rb]
        for a, b, n in product(S4, S4, S4)
        if wd[a, m, b, n] != 0
    )
    return lhs, rhs


def check_cubic(eq: Equipment) -> IdentityReport:
    """삼차 항등식 검증 (256 케이스, 루프 순서 p, m, q, r, r̄)"""
    _require_exact(eq, "check_cubic")
    start = time.time()
    report = IdentityReport(IDENTITY_CUBIC, 256, ("p", "q", "m", "r", "rbar"))
    for p, m, q, r, rb in product(S4, S4, S4, S2, S2):
        lhs, rhs = cubic_sides(eq, p, q, m, r, rb)
        _record(report, (p, q, m, r + 1, rb + 1), lhs, rhs)
    logger.info(
        f"[INFO] [IdentityEngine] cubic: {report.total_cases} cases, "
        f"{len(report.failures)} failures ({time.time() - start:.3f}s)"
    )
    return report


def _derived_terms(eq: Equipment):
    """유도 관계식에 쓰이는 항을 만드는 함수 묶음"""
    G, g, dd, dbd = eq.G.entries, eq.g.entries, eq.d_dual.entries, eq.dbar_dual.entries
    omega_terms = _nonzero_omega(eq.omega_dual.entries)

    def product_term(p, q, r, rb, u, ub):
        return G[p, r, ub] * G[q, u, rb]

    def symmetric_rhs(p, q, r, rb, u, ub):
        return (
            G[p, r, rb] * G[q, u, ub]
            + G[q, r, rb] * G[p, u, ub]
            - 2 * dd[r, u] * dbd[rb, ub] * g[p, q]
        )

    def alternating_rhs(p, q, r, rb, u, ub):
        return I * _sum(
            g[p, a] * g[q, b] * w * G[m, u, ub] * G[n, r, rb]
            for a, m, b, n, w in omega_terms
            if g[p, a] != 0 and g[q, b] != 0
        )

    return product_term, symmetric_rhs, alternating_rhs


def check_derived(eq: Equipment) -> IdentityReport:
    """삼차 항등식에서 유도되는 곱 관계식과 그 대칭화/반대칭화 검증

    곱 관계식:  2 G^{r ū}_p G^{u r̄}_q = B_pq + W_pq
    대칭화:     G^{r ū}_p G^{u r̄}_q + G^{r ū}_q G^{u r̄}_p = B_pq
    반대칭화:   G^{r ū}_p G^{u r̄}_q - G^{r ū}_q G^{u r̄}_p = W_pq
    B 는 (p, q) 대칭 부분, W 는 부피 텐서 항이다. 재구성 검사는 대칭화와 반대칭화의
    합이 (p, q) 의 곱 관계식, 차가 (q, p) 의 곱 관계식을 양변 모두 정확히 재현하는지 본다.

    Returns:
        총 768 케이스 부모 보고서 (하위: product, symmetric, antisymmetric, reconstruction)
    """
    _require_exact(eq, "check_derived")
    names = ("p", "q", "r", "rbar", "u", "ubar")
    product_report = IdentityReport(IDENTITY_DERIVED_PRODUCT, 256, names)
    symmetric_report = IdentityReport(IDENTITY_DERIVED_SYMMETRIC, 256, names)
    alternating_report = IdentityReport(IDENTITY_DERIVED_ANTISYMMETRIC, 256, names)
    reconstruction_report = IdentityReport(IDENTITY_DERIVED_RECONSTRUCTION, 256, names)
    product_term, symmetric_rhs, alternating_rhs = _derived_terms(eq)

    def sides(p, q, r, rb, u, ub):
        a_pq = product_term(p, q, r, rb, u, ub)
        a_qp = product_term(q, p, r, rb, u, ub)
        b = symmetric_rhs(p, q, r, rb, u, ub)
        w = alternating_rhs(p, q, r, rb, u, ub)
        return {
            "product": (2 * a_pq, b + w),
            "symmetric": (a_pq + a_qp, b),
            "antisymmetric": (a_pq - a_qp, w),
        }

    for p, q, r, rb, u, ub in product(S4, S4, S2, S2, S2, S2):
        labels = (p, q, r + 1, rb + 1, u + 1, ub + 1)
        here = sides(p, q, r, rb, u, ub)
        _record(product_report, labels, *here["product"])
        _record(symmetric_report, labels, *here["symmetric"])
        _record(alternating_report, labels, *here["antisymmetric"])

        swapped = sides(q, p, r, rb, u, ub)["product"]
        sym, alt = here["symmetric"], here["antisymmetric"]
        checks = (
            ("sum.lhs", sym[0] + alt[0], here["product"][0]),
            ("sum.rhs", sym[1] + alt[1], here["product"][1]),
            ("difference.lhs", sym[0] - alt[0], swapped[0]),
            ("difference.rhs", sym[1] - alt[1], swapped[1]),
        )
        for relation, combined, target in checks:
            if combined != target:
                reconstruction_report.failures.append(IdentityFailure(labels, combined, target, relation))
                break

    parent = IdentityReport(
        IDENTITY_DERIVED,
        product_report.total_cases + symmetric_report.total_cases + alternating_report.total_cases,
        names,
        sub_reports=[product_report, symmetric_report, alternating_report, reconstruction_report],
    )
    logger.info(f"[INFO] [IdentityEngine] derived: passed={parent.passed}")
    return parent


def _aux_definitions(eq: Equipment) -> List[Tuple[str, Tuple[str, ...], Sequence[range], Callable, Callable, Tuple[int, ...]]]:
    G, Gi = eq.G.entries, eq.G_inv.entries
    g, gd = eq.g.entries, eq.g_dual.entries
    d, dd, db, dbd = eq.d.entries, eq.d_dual.entries, eq.dbar.entries, eq.dbar_dual.entries
    return [
        (
            AUX_IDENTITY_IDS[0], ("p", "j", "sbar"), (S4, S2, S2),
            lambda p, j, sb: _sum(G[p, k, sb] * d[k, j] for k in S2),
            lambda p, j, sb: _sum(Gi[m, j, rb] * dbd[rb, sb] * g[m, p] for m, rb in product(S4, S2)),
            (1, 2),
        ),
        (
            AUX_IDENTITY_IDS[1], ("p", "j", "rbar"), (S4, S2, S2),
            lambda p, j, rb: _sum(G[p, k, ab] * d[k, j] * db[ab, rb] for ab, k in product(S2, S2)),
            lambda p, j, rb: _sum(Gi[q, j, rb] * g[p, q] for q in S4),
            (1, 2),
        ),
        (
            AUX_IDENTITY_IDS[2], ("n", "k", "rbar"), (S4, S2, S2),
            lambda n, k, rb: _sum(dbd[rb, sb] * g[n, m] * Gi[m, k, sb] for sb, m in product(S2, S4)),
            lambda n, k, rb: _sum(G[n, s, rb] * d[k, s] for s in S2),
            (1, 2),
        ),
        (
            AUX_IDENTITY_IDS[3], ("n", "q", "sbar"), (S4, S2, S2),
            lambda n, q, sb: _sum(dd[q, k] * g[n, m] * Gi[m, k, sb] for k, m in product(S2, S4)),
            lambda n, q, sb: _sum(G[n, q, kb] * db[sb, kb] for kb in S2),
            (1, 2),
        ),
        (
            AUX_IDENTITY_IDS[4], ("m", "q", "rbar"), (S4, S2, S2),
            lambda m, q, rb: _sum(dd[q, k] * dbd[rb, sb] * Gi[m, k, sb] for k, sb in product(S2, S2)),
            lambda m, q, rb: _sum(G[p, q, rb] * gd[p, m] for p in S4),
            (1, 2),
        ),
    ]


def check_aux_contractions(eq: Equipment) -> IdentityReport:
    """접속 계산에서 재사용되는 다섯 가지 축약 관계식 검증 (각 16 케이스)"""
    _require_exact(eq, "check_aux_contractions")
    subs = []
    for identity_id, names, ranges, lhs_fn, rhs_fn, spinor_slots in _aux_definitions(eq):
        report = IdentityReport(identity_id, int(np.prod([len(r) for r in ranges])), names)
        for index in product(*ranges):
            _record(report, _labels(index, spinor_slots), lhs_fn(*index), rhs_fn(*index))
        subs.append(report)
    return IdentityReport(IDENTITY_AUX, sum(s.total_cases for s in subs), sub_reports=subs)


def run_identity_suite(eq: Equipment) -> List[IdentityReport]:
    """에르미트성, 이차, 삼차, 유도, 보조 축약 순서로 전체 검증"""
    return [
        check_hermiticity(eq),
        check_quadratic(eq),
        check_cubic(eq),
        check_derived(eq),
        check_aux_contractions(eq),
    ]
