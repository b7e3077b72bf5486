"""
보고서 변환 및 출력 서비스

엔진 결과 (dataclass) 를 Pydantic 보고서 모델로 변환하고 JSON/텍스트로 직렬화합니다.
JSON 출력은 키 정렬과 고정 들여쓰기를 사용하므로 같은 입력에 대해 바이트 단위로 동일합니다.
"""
import json
import logging
from typing import Iterable, List

import numpy as np

from spintensor.identities.engine import IdentityFailure, IdentityReport
from spintensor.frames.connection import ResidualReport
from spintensor.schemas.report import (
    IdentityFailureModel,
    IdentityReportModel,
    ResidualModel,
    RunReport,
)

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("json", "text")


def _scalar_text(value) -> str:
    if isinstance(value, complex):
        return f"{value.real:.17g}{value.imag:+.17g}i"
    return str(value)


def failure_to_model(failure: IdentityFailure) -> IdentityFailureModel:
    return IdentityFailureModel(
        index=list(failure.index),
        lhs=_scalar_text(failure.lhs),
        rhs=_scalar_text(failure.rhs),
        relation=failure.relation,
    )


def identity_to_model(report: IdentityReport) -> IdentityReportModel:
    """항등식 보고서를 재귀적으로 변환"""
    return IdentityReportModel(
        identity_id=report.identity_id,
        total_cases=report.total_cases,
        passed=report.passed,
        index_names=list(report.index_names),
        failures=[failure_to_model(f) for f in report.failures],
        sub_reports=[identity_to_model(sub) for sub in report.sub_reports],
    )


def residual_to_model(report: ResidualReport) -> ResidualModel:
    return ResidualModel(
        name=report.name,
        residual=report.residual,
        tolerance=report.tolerance,
        passed=report.passed,
        argmax=list(report.argmax),
    )


def complex_pairs(values: Iterable[complex]) -> List[List[float]]:
    """복소수 배열을 [re, im] 쌍 목록으로"""
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def _text_identity(report: IdentityReportModel, depth: int = 0) -> List[str]:
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{'  ' * depth}{report.identity_id}: {status} ({report.total_cases} cases, {len(report.failures)} failures)"]
    for failure in report.failures[:5]:
        relation = f" [{failure.relation}]" if failure.relation else ""
        lines.append(f"{'  ' * (depth + 1)}{tuple(failure.index)}{relation}: lhs={failure.lhs} rhs={failure.rhs}")
    for sub in report.sub_reports:
        lines.extend(_text_identity(sub, depth + 1))
    return lines


def render_text(report: RunReport) -> str:
    """사람이 읽는 요약"""
    lines = [f"spintensor {report.tool_version} {report.command}"]
    if report.orientation:
        lines.append(f"orientation: {report.orientation}")
    if report.corrupted_entry:
        lines.append(f"corrupted entry: {tuple(report.corrupted_entry)}")
    for identity in report.identities:
        lines.extend(_text_identity(identity))
    for scene in report.scenes:
        status = "PASS" if scene.passed else "FAIL"
        lines.append(f"scene {scene.name} ({scene.derivative_mode}, tol={scene.tolerance:g}): {status}")
        for point in scene.points:
            if point.error:
                lines.append(f"  point {point.index} {point.point}: ERROR {point.error}")
                continue
            worst = max(point.residuals, key=lambda r: r.residual / r.tolerance, default=None)
            detail = f" worst={worst.name} {worst.residual:.3e}" if worst else ""
            lines.append(f"  point {point.index} {point.point}: {'PASS' if point.passed else 'FAIL'}{detail}")
            for residual in point.residuals:
                if not residual.passed:
                    lines.append(f"    {residual.name}: {residual.residual:.3e} > {residual.tolerance:g}")
    lines.append(f"overall: {'PASS' if report.overall_pass else 'FAIL'}")
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, fmt: str = "json") -> str:
    """
    보고서 직렬화

    Args:
        report: 실행 보고서
        fmt: "json" 또는 "text"

    Returns:
        직렬화된 문자열 (개행으로 끝남)

    Raises:
        ValueError: 알 수 없는 형식
    """
    if fmt == "json":
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown report format: {fmt!r} (expected one of {REPORT_FORMATS})")
