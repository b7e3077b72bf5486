"""
표준 프레임 쌍 검증 서비스

verify-canonical 명령의 본체: 방향에 맞는 표준 프레임 쌍을 만들고 (선택적으로 G 성분 하나를 오염시킨 뒤)
전체 IvdW 항등식 묶음을 정확 산술로 검증합니다.
"""
import logging
import time
from typing import Optional, Sequence

from spintensor import __version__
from spintensor.config.constants import IDENTITY_CUBIC, REPORT_SCHEMA_VERSION
from spintensor.equipment.canonical import Orientation, corrupt_equipment, oriented_frame_pair
from spintensor.identities.engine import run_identity_suite
from spintensor.schemas.report import RunReport
from spintensor.services.report_service import identity_to_model

logger = logging.getLogger(__name__)

COMMAND = "verify-canonical"


class CanonicalService:
    """표준 프레임 쌍 항등식 검증 서비스"""

    def __init__(self, orientation: Orientation = Orientation.RIGHT):
        """
        Args:
            orientation: 프레임 방향 (오른손/왼손)
        """
        self.orientation = Orientation(orientation)
        logger.info(f"[INFO] CanonicalService initialized: orientation={self.orientation.value}")

    def verify(self, corrupt: Optional[Sequence[int]] = None) -> RunReport:
        """
        항등식 묶음 실행

        Args:
            corrupt: 부호를 뒤집을 G 성분 레이블 (p, r, r̄). p 는 0..3, r 와 r̄ 는 1..2

        Returns:
            RunReport (identities 에 항등식별 보고서)

        Raises:
            IndexRangeError: corrupt 레이블이 범위를 벗어나거나 0 성분을 가리키는 경우
        """
        started = time.perf_counter()
        equipment = oriented_frame_pair(self.orientation)
        if corrupt is not None:
            equipment = corrupt_equipment(equipment, corrupt)
            logger.info(f"[INFO] [CanonicalService] corrupted G entry {tuple(corrupt)}")

        reports = run_identity_suite(equipment)
        identities = [identity_to_model(report) for report in reports]
        cubic_total = next(r.total_cases for r in reports if r.identity_id == IDENTITY_CUBIC)
        overall = all(report.passed for report in reports)

        for report in reports:
            level = logging.INFO if report.passed else logging.WARNING
            logger.log(
                level,
                f"[{logging.getLevelName(level)}] [CanonicalService] {report.identity_id}: "
                f"{report.total_cases} cases, {len(report.failures)} failures",
            )
        logger.info(
            f"[INFO] [CanonicalService] [DONE] overall_pass={overall} "
            f"({time.perf_counter() - started:.2f}s)"
        )
        return RunReport(
            schema_version=REPORT_SCHEMA_VERSION,
            tool_version=__version__,
            command=COMMAND,
            overall_pass=overall,
            orientation=self.orientation.value,
            cubic_total_cases=cubic_total,
            corrupted_entry=list(corrupt) if corrupt is not None else None,
            identities=identities,
        )


def run_verify_canonical(
    orientation: Orientation = Orientation.RIGHT,
    corrupt: Optional[Sequence[int]] = None,
) -> RunReport:
    """verify-canonical 진입점"""
    return CanonicalService(orientation).verify(corrupt)
