"""
프레임, 교환 계수, 계량 접속 테스트

- 등각 프레임 Υ_r = e^{-x1} ∂_r 의 교환 계수
- 비틀림, 계량성, 대칭화, 대각합 잔차 (기호 미분/중심 차분)
- 홀로노믹 프레임의 Christoffel 기호, 퇴화/부호 위반
"""
import logging
import math
from dataclasses import replace

import numpy as np
import pytest

from spintensor.errors import (
    FrameDegeneracyError,
    MetricDegeneracyError,
    SignatureError,
    SignatureViolationError,
)
from spintensor.expressions.parser import parse_expr
from spintensor.frames.connection import (
    check_metricity,
    check_symmetrization,
    check_torsion,
    check_trace,
    christoffel,
)
from spintensor.frames.derivatives import DerivativeEngine, DerivativeMode
from spintensor.frames.frame_field import (
    FrameField,
    MetricField,
    bracket_residual,
    commutation_coefficients,
    lie_derivative,
)
from spintensor.tests.conftest import SAMPLE_POINTS

logger = logging.getLogger(__name__)

FINITE_DIFFERENCE = DerivativeEngine(DerivativeMode.FINITE_DIFFERENCE)

CONFORMAL = FrameField.from_rows([["exp(-x1)" if i == r else "0" for r in range(4)] for i in range(4)])
GENERIC = FrameField.from_rows([
    ["1", "x1/3", "0", "0"],
    ["0", "exp(x0/2)", "0", "0"],
    ["0", "0", "1", "sin(x1)/4"],
    ["0", "x3/5", "0", "1 + x2^2/5"],
])
MINKOWSKI = MetricField.minkowski()


def _connection_reports(f, m, point, tol, engine):
    c = commutation_coefficients(f, point, engine)
    conn = christoffel(f, m, point, engine)
    return [
        check_torsion(conn, c, tol),
        check_metricity(f, m, conn, point, tol, engine),
        check_symmetrization(conn, tol),
        check_trace(conn, tol),
    ]


def test_conformal_commutation_coefficients():
    """c^k_1j = -e^{-x1} δ^k_j (j ≠ 1), 나머지 0"""
    point = (0.1, 0.2, -0.3, 0.4)
    c = commutation_coefficients(CONFORMAL, point)
    expected = np.zeros((4, 4, 4))
    for j in (0, 2, 3):
        expected[j, 1, j] = -math.exp(-0.2)
        expected[j, j, 1] = math.exp(-0.2)
    assert np.max(np.abs(c - expected)) <= 1e-12
    assert np.max(np.abs(c + np.transpose(c, (0, 2, 1)))) <= 1e-15


def test_lie_derivative_on_conformal_frame():
    point = (0.0, 0.5, 0.0, 0.0)
    value = lie_derivative(CONFORMAL, parse_expr("x1^2"), 1, point)
    assert value == pytest.approx(math.exp(-0.5) * 2 * 0.5)
    assert lie_derivative(CONFORMAL, parse_expr("x1^2"), 2, point) == 0


@pytest.mark.parametrize("point", SAMPLE_POINTS)
def test_conformal_connection_residuals(point):
    """등각 프레임: 네 가지 잔차 모두 1e-9 이하"""
    for report in _connection_reports(CONFORMAL, MINKOWSKI, point, 1e-9, DerivativeEngine()):
        assert report.passed, report


@pytest.mark.parametrize("point", SAMPLE_POINTS)
def test_generic_frame_connection_residuals(point):
    for report in _connection_reports(GENERIC, MINKOWSKI, point, 1e-9, DerivativeEngine()):
        assert report.passed, report


@pytest.mark.parametrize("point", SAMPLE_POINTS)
def test_finite_difference_mode(point):
    """중심 차분 모드: 잔차 1e-5 이하, 교환 계수는 기호 미분과 일치"""
    for report in _connection_reports(GENERIC, MINKOWSKI, point, 1e-5, FINITE_DIFFERENCE):
        assert report.passed, report
    symbolic = commutation_coefficients(GENERIC, point)
    numeric = commutation_coefficients(GENERIC, point, FINITE_DIFFERENCE)
    assert np.max(np.abs(symbolic - numeric)) <= 1e-6


def test_flat_frame_gives_exact_zeros():
    point = (0.7, -0.4, 0.25, 0.6)
    holonomic = FrameField.holonomic()
    c = commutation_coefficients(holonomic, point)
    conn = christoffel(holonomic, MINKOWSKI, point)
    assert np.all(c == 0)
    assert np.all(conn.gamma == 0)
    assert all(r.residual == 0.0 for r in _connection_reports(holonomic, MINKOWSKI, point, 1e-12, DerivativeEngine()))


def test_holonomic_christoffel_value():
    """g = diag(1, -(1 + x0²), -1, -1): Γ^1_01 = x0 / (1 + x0²)"""
    metric = MetricField.from_rows([
        ["1", "0", "0", "0"],
        ["0", "-(1 + x0^2)", "0", "0"],
        ["0", "0", "-1", "0"],
        ["0", "0", "0", "-1"],
    ])
    point = (0.5, 0.1, 0.2, 0.3)
    conn = christoffel(FrameField.holonomic(), metric, point)
    assert conn.gamma[1, 0, 1] == pytest.approx(0.5 / 1.25)
    assert conn.gamma[1, 1, 0] == pytest.approx(0.5 / 1.25)
    assert conn.gamma[0, 1, 1] == pytest.approx(0.5)
    for report in _connection_reports(FrameField.holonomic(), metric, point, 1e-9, DerivativeEngine()):
        assert report.passed, report


def test_torsion_detects_perturbation():
    point = (0.1, 0.2, -0.3, 0.4)
    c = commutation_coefficients(CONFORMAL, point)
    conn = christoffel(CONFORMAL, MINKOWSKI, point)
    gamma = conn.gamma.copy()
    gamma[0, 1, 2] += 1e-3
    broken = replace(conn, gamma=gamma)
    report = check_torsion(broken, c, 1e-9)
    assert not report.passed
    assert report.residual == pytest.approx(1e-3, rel=1e-6)
    assert report.argmax in ((0, 1, 2), (0, 2, 1))
    assert not check_metricity(CONFORMAL, MINKOWSKI, broken, point, 1e-9).passed


@pytest.mark.parametrize("phi", ["x1*sin(x2) + exp(x0*x3)", "x0^2*x1 - cos(x3)/(2 + x2^2)", "i*x2*exp(-x1)"])
def test_bracket_relation(phi):
    """L_i L_j φ - L_j L_i φ = Σ_k c^k_ij L_k φ"""
    for point in SAMPLE_POINTS:
        assert bracket_residual(GENERIC, parse_expr(phi), point) <= 1e-6
        assert bracket_residual(CONFORMAL, parse_expr(phi), point) <= 1e-6


def test_degenerate_frame_and_metric():
    point = (0.0, 0.0, 0.0, 0.0)
    degenerate = FrameField.from_rows([["x1" if i == r else "0" for r in range(4)] for i in range(4)])
    with pytest.raises(FrameDegeneracyError):
        commutation_coefficients(degenerate, point)
    singular = MetricField.from_rows([["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "0"]])
    with pytest.raises(MetricDegeneracyError):
        christoffel(CONFORMAL, singular, point)
    euclidean = MetricField.from_rows([["1" if i == j else "0" for j in range(4)] for i in range(4)])
    with pytest.raises(SignatureViolationError):
        christoffel(CONFORMAL, euclidean, point)
    asymmetric = MetricField.from_rows([["1", "x1 + 1", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]])
    with pytest.raises(SignatureError):
        christoffel(CONFORMAL, asymmetric, point)
    logger.info("[TEST] 퇴화 프레임/계량 오류 확인")
