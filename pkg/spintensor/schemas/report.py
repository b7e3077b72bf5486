"""실행 보고서 Pydantic 스키마

복소수는 [re, im] 쌍, 정확 스칼라는 "1/2-3i" 형식의 문자열로 직렬화한다.
"""
from typing import List, Optional

from pydantic import BaseModel, Field


class IdentityFailureModel(BaseModel):
    """항등식 실패 케이스"""

    index: List[int]
    lhs: str
    rhs: str
    relation: str = ""


class IdentityReportModel(BaseModel):
    """항등식 검증 보고서"""

    identity_id: str
    total_cases: int
    passed: bool
    index_names: List[str] = []
    failures: List[IdentityFailureModel] = []
    sub_reports: List["IdentityReportModel"] = []


class ResidualModel(BaseModel):
    """수치 잔차"""

    name: str
    residual: float
    tolerance: float
    passed: bool
    argmax: List[int] = []


class PointReport(BaseModel):
    """샘플 포인트 하나의 결과"""

    index: int
    point: List[float]
    passed: bool
    error: Optional[str] = None
    residuals: List[ResidualModel] = []
    commutation_max: Optional[float] = None
    u: List[List[float]] = []
    ubar: List[List[float]] = []
    spinor_term_max: List[float] = []


class SceneReport(BaseModel):
    """장면 보고서"""

    name: str
    derivative_mode: str
    orientation: str
    tolerance: float
    passed: bool
    points: List[PointReport]


class RunReport(BaseModel):
    """실행 보고서 (overall_pass 는 모든 하위 보고서 통과 여부)"""

    schema_version: str
    tool_version: str
    command: str
    overall_pass: bool
    orientation: Optional[str] = None
    cubic_total_cases: Optional[int] = None
    corrupted_entry: Optional[List[int]] = None
    identities: List[IdentityReportModel] = Field(default_factory=list)
    scenes: List[SceneReport] = Field(default_factory=list)


IdentityReportModel.model_rebuild()
