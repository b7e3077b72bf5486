"""프레임, 교환 계수, 계량 접속 모듈"""

from spintensor.frames.derivatives import DerivativeEngine, DerivativeMode
from spintensor.frames.frame_field import (
    FrameField,
    MetricField,
    bracket_residual,
    commutation_coefficients,
    lie_derivative,
)
from spintensor.frames.connection import (
    ConnectionAtPoint,
    ResidualReport,
    check_metricity,
    check_symmetrization,
    check_torsion,
    check_trace,
    christoffel,
)

__all__ = [
    "DerivativeEngine",
    "DerivativeMode",
    "FrameField",
    "MetricField",
    "bracket_residual",
    "commutation_coefficients",
    "lie_derivative",
    "ConnectionAtPoint",
    "ResidualReport",
    "check_metricity",
    "check_symmetrization",
    "check_torsion",
    "check_trace",
    "christoffel",
]
