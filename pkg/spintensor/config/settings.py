"""애플리케이션 설정"""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """애플리케이션 설정 (환경 변수 접두사: SPINTENSOR_)"""

    # 허용 오차
    analytic_tolerance: float = 1e-9  # 기호 미분 파이프라인
    finite_difference_tolerance: float = 1e-5  # 유한 차분 모드
    equipment_tolerance: float = 1e-9  # 장비 일관성 사전 조건

    # 유한 차분 스텝 (중심 차분)
    finite_difference_step: float = 1e-5

    # 프레임 행렬식 하한
    frame_degeneracy_threshold: float = 1e-8

    # 샘플 포인트 병렬 처리 워커 수 (SPINTENSOR_MAX_WORKERS로 재정의)
    max_workers: int = Field(default=4, ge=1)

    # 로그 레벨
    log_level: str = "WARNING"

    # 번들 장면 디렉토리
    scenes_dir: Path = Path(__file__).parent.parent / "scenes"

    model_config = {
        "env_prefix": "SPINTENSOR_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "extra": "ignore",  # .env에 정의되지 않은 필드는 무시
    }


# 전역 설정 인스턴스
settings = Settings()
