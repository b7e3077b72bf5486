"""Pydantic 스키마"""

from spintensor.schemas.scene import SceneConfig, SpinTransformSpec
from spintensor.schemas.report import (
    IdentityFailureModel,
    IdentityReportModel,
    PointReport,
    ResidualModel,
    RunReport,
    SceneReport,
)

__all__ = [
    "SceneConfig",
    "SpinTransformSpec",
    "IdentityFailureModel",
    "IdentityReportModel",
    "PointReport",
    "ResidualModel",
    "RunReport",
    "SceneReport",
]
