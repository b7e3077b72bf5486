"""장면 설정 Pydantic 스키마"""
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from spintensor.equipment.canonical import Orientation
from spintensor.expressions.calculus import eval_expr
from spintensor.expressions.parser import parse_expr
from spintensor.frames.derivatives import DerivativeMode

CANONICAL_CONSTANT = "canonical-constant"
SYMMETRY_TOLERANCE = 1e-12


def _check_expr_matrix(rows: List[List[str]], size: int) -> List[List[str]]:
    if len(rows) != size or any(len(row) != size for row in rows):
        raise ValueError(f"expected a {size}x{size} array of expression strings")
    for i, row in enumerate(rows):
        for j, text in enumerate(row):
            try:
                parse_expr(text)
            except ValueError as e:
                raise ValueError(f"[{i}][{j}] {text!r}: {e}") from e
    return rows


class SpinTransformSpec(BaseModel):
    """정준 장비 장에 적용할 스핀 프레임 변환 S (2×2 수식 문자열)"""

    spin_transform: List[List[str]]

    @field_validator("spin_transform")
    @classmethod
    def _validate(cls, rows: List[List[str]]) -> List[List[str]]:
        return _check_expr_matrix(rows, 2)


class SceneConfig(BaseModel):
    """장면 설정 스키마"""

    name: str
    frame: List[List[str]]
    metric: List[List[str]]
    equipment: Union[Literal["canonical-constant"], SpinTransformSpec] = CANONICAL_CONSTANT
    sample_points: List[Tuple[float, float, float, float]] = Field(min_length=1)
    tolerance: Optional[float] = Field(default=None, gt=0)
    derivative_mode: DerivativeMode = DerivativeMode.SYMBOLIC
    orientation: Orientation = Orientation.RIGHT

    model_config = {"extra": "forbid"}

    @field_validator("frame", "metric")
    @classmethod
    def _validate_matrix(cls, rows: List[List[str]]) -> List[List[str]]:
        return _check_expr_matrix(rows, 4)

    @model_validator(mode="after")
    def _validate_metric_symmetry(self) -> "SceneConfig":
        # 구문 트리가 아니라 샘플 포인트 값으로 비교 (x0*x1 == x1*x0). 평가 오류는 포인트 단위로 보고
        for point in self.sample_points:
            for i in range(4):
                for j in range(i + 1, 4):
                    try:
                        upper = eval_expr(parse_expr(self.metric[i][j]), point)
                        lower = eval_expr(parse_expr(self.metric[j][i]), point)
                    except ValueError:
                        continue
                    if abs(upper - lower) > SYMMETRY_TOLERANCE * max(1.0, abs(upper)):
                        raise ValueError(
                            f"metric must be symmetric: [{i}][{j}] differs from [{j}][{i}] at point {list(point)}"
                        )
        return self
