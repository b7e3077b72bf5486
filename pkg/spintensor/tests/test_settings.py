"""
설정 테스트

- SPINTENSOR_ 접두사 환경 변수 재정의
- 작업 디렉토리의 .env 파일 로드, 환경 변수 우선
- .env.example 의 키가 모두 Settings 필드와 일치
"""
import logging
from pathlib import Path

import pytest
from pydantic import ValidationError

from spintensor.config.settings import Settings

logger = logging.getLogger(__name__)

ENV_EXAMPLE = Path(__file__).resolve().parents[2] / ".env.example"


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    s = Settings()
    assert s.analytic_tolerance == 1e-9
    assert s.finite_difference_tolerance == 1e-5
    assert s.max_workers == 4
    assert s.scenes_dir.name == "scenes"


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SPINTENSOR_MAX_WORKERS", "2")
    monkeypatch.setenv("spintensor_analytic_tolerance", "1e-7")
    s = Settings()
    assert s.max_workers == 2
    assert s.analytic_tolerance == 1e-7


def test_dotenv_file_is_loaded(monkeypatch, tmp_path):
    """.env 값 적용, 같은 키의 환경 변수가 우선"""
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text(
        "SPINTENSOR_LOG_LEVEL=DEBUG\nSPINTENSOR_MAX_WORKERS=3\nUNRELATED_KEY=1\n", encoding="utf-8"
    )
    monkeypatch.setenv("SPINTENSOR_MAX_WORKERS", "6")
    s = Settings()
    assert s.log_level == "DEBUG"
    assert s.max_workers == 6
    logger.info("[TEST] .env 로드 확인")


def test_invalid_worker_count_is_rejected(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SPINTENSOR_MAX_WORKERS", "0")
    with pytest.raises(ValidationError):
        Settings()


def test_env_example_matches_settings_fields():
    keys = set()
    for line in ENV_EXAMPLE.read_text(encoding="utf-8").splitlines():
        line = line.lstrip("# ").strip()
        if line.startswith("SPINTENSOR_") and "=" in line:
            keys.add(line.split("=", 1)[0].removeprefix("SPINTENSOR_").lower())
    assert keys == set(Settings.model_fields)
