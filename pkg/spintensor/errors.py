"""스핀 텐서 엔진 예외 정의

모든 예외는 ValueError 를 상속하므로 서비스 경계에서 ValueError 로 한 번에 처리할 수 있다.
"""
from typing import List, Optional, Sequence


class SpinTensorError(ValueError):
    """엔진 공통 예외"""


class IndexRangeError(SpinTensorError):
    """인덱스가 허용 범위를 벗어남 (인자 오류)"""


class SignatureError(SpinTensorError):
    """인덱스 시그니처 불일치 (족/변동성)"""


class RealizationError(SpinTensorError):
    """스칼라 실현 방식 불일치 (정확 산술이 필요한 곳에 부동소수점 입력 등)"""


class RepresentationError(SpinTensorError):
    """정확 산술로 표현할 수 없는 값 (예: 완전제곱이 아닌 -det g 의 제곱근)"""


class SignatureViolationError(SpinTensorError):
    """로렌츠 부호 (+,-,-,-) 위반"""


class DegeneracyError(SpinTensorError):
    """행렬식이 0 에 가까운 퇴화 상황"""


class FrameDegeneracyError(DegeneracyError):
    """프레임 행렬 퇴화"""


class MetricDegeneracyError(DegeneracyError):
    """계량 퇴화"""


class SpinTransformDegeneracyError(DegeneracyError):
    """스핀 프레임 변환 행렬 퇴화"""


class ExpressionSyntaxError(SpinTensorError):
    """수식 구문 오류 (위치 포함)"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnknownSymbolError(ExpressionSyntaxError):
    """알 수 없는 식별자"""


class ExpressionEvaluationError(SpinTensorError):
    """수식 평가 오류 (샘플 포인트 포함)"""

    def __init__(self, message: str, point: Optional[Sequence[float]] = None):
        self.point = tuple(point) if point is not None else None
        suffix = f" at point {list(self.point)}" if self.point is not None else ""
        super().__init__(f"{message}{suffix}")

    def at_point(self, point: Sequence[float]) -> "ExpressionEvaluationError":
        """샘플 포인트 정보를 덧붙인 새 예외 반환"""
        message = str(self)
        if self.point is not None:
            return self
        return ExpressionEvaluationError(message, point)


class EquipmentInconsistencyError(SpinTensorError):
    """장비 일관성 사전 조건 실패 (실패한 항등식 목록 포함)"""

    def __init__(self, failed: List[str], point: Optional[Sequence[float]] = None):
        self.failed = list(failed)
        self.point = tuple(point) if point is not None else None
        where = f" at point {list(self.point)}" if self.point is not None else ""
        super().__init__(f"equipment inconsistent{where}: {', '.join(self.failed)}")


class ConfigError(SpinTensorError):
    """장면 설정 파일 오류 (경로, 필드 위치 포함)"""

    def __init__(self, message: str, path: Optional[str] = None, location: Optional[str] = None):
        self.path = path
        self.location = location
        parts = [p for p in (path, location) if p]
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
