"""
장면 검증 서비스

verify-scene 명령의 본체: 장면 설정을 읽어 프레임/계량/장비 장을 구성하고, 샘플 포인트마다
교환 계수, 계량 접속, 스피너 접속과 모든 잔차를 계산합니다.
샘플 포인트는 서로 독립이므로 ThreadPoolExecutor 로 병렬 처리하고, 결과는 포인트 순서로 다시 정렬합니다.
"""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from spintensor import __version__
from spintensor.config.constants import BUNDLED_SCENES, REPORT_SCHEMA_VERSION
from spintensor.config.settings import settings
from spintensor.equipment.canonical import Orientation, oriented_frame_pair
from spintensor.errors import ConfigError, SpinTransformDegeneracyError
from spintensor.expressions.calculus import eval_expr
from spintensor.expressions.nodes import Expr
from spintensor.frames.connection import (
    check_metricity,
    check_symmetrization,
    check_torsion,
    check_trace,
    christoffel,
)
from spintensor.frames.derivatives import DerivativeEngine, DerivativeMode
from spintensor.frames.frame_field import FrameField, MetricField, commutation_coefficients
from spintensor.schemas.report import PointReport, RunReport, SceneReport
from spintensor.schemas.scene import SceneConfig, SpinTransformSpec
from spintensor.services.report_service import complex_pairs, residual_to_model
from spintensor.spinors.equipment_field import EquipmentField, spin_determinant, spin_frame_transform
from spintensor.spinors.spinor_connection import (
    check_ivdw_concordance,
    check_spinor_metric_concordance,
    check_u_proportionality,
    derivative_swap_residuals,
    spinor_connection,
    u_coefficients,
)

logger = logging.getLogger(__name__)

COMMAND = "verify-scene"


def resolve_scene_path(name_or_path: Union[str, Path]) -> Path:
    """
    장면 경로 해석 (파일 경로 또는 번들 장면 이름)

    Raises:
        ConfigError: 파일이 없고 번들 장면 이름도 아닌 경우
    """
    path = Path(name_or_path)
    if path.is_file():
        return path
    if str(name_or_path) in BUNDLED_SCENES:
        return settings.scenes_dir / f"{name_or_path}.json"
    raise ConfigError(
        f"scene file not found (bundled scenes: {', '.join(BUNDLED_SCENES)})", path=str(name_or_path)
    )


def load_scene_config(path: Union[str, Path]) -> SceneConfig:
    """
    장면 설정 JSON 로드 및 검증

    Args:
        path: 설정 파일 경로 또는 번들 장면 이름

    Returns:
        SceneConfig

    Raises:
        ConfigError: 파일 없음, JSON 구문 오류 (행/열 포함), 스키마 위반 (필드 경로 포함)
    """
    resolved = resolve_scene_path(path)
    try:
        raw = json.loads(resolved.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read scene file: {e.strerror}", path=str(resolved)) from e
    except json.JSONDecodeError as e:
        raise ConfigError(e.msg, path=str(resolved), location=f"line {e.lineno}, column {e.colno}") from e

    try:
        config = SceneConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigError(first["msg"], path=str(resolved), location=location) from e
    logger.info(f"[INFO] scene config loaded: {config.name} ({len(config.sample_points)} points) from {resolved}")
    return config


@dataclass(frozen=True, eq=False)
class Scene:
    """검증 가능한 상태로 구성된 장면"""

    name: str
    frame: FrameField
    metric: MetricField
    equipment: EquipmentField
    spin_determinant: Optional[Expr]
    sample_points: Tuple[Tuple[float, ...], ...]
    tolerance: float
    engine: DerivativeEngine
    orientation: Orientation


def default_tolerance(mode: DerivativeMode) -> float:
    if mode is DerivativeMode.FINITE_DIFFERENCE:
        return settings.finite_difference_tolerance
    return settings.analytic_tolerance


def build_scene(config: SceneConfig) -> Scene:
    """
    설정으로부터 장면 구성

    장비 장은 방향에 맞는 표준 프레임 쌍에서 시작하고, 스핀 변환이 있으면 기호적으로 적용한다.
    det S 와 변환 후 일관성은 포인트별 검증 단계에서 검사한다.
    """
    equipment = EquipmentField.from_equipment(oriented_frame_pair(config.orientation))
    determinant = None
    if isinstance(config.equipment, SpinTransformSpec):
        equipment = spin_frame_transform(equipment, config.equipment.spin_transform)
        determinant = spin_determinant(config.equipment.spin_transform)
    tolerance = config.tolerance if config.tolerance is not None else default_tolerance(config.derivative_mode)
    return Scene(
        name=config.name,
        frame=FrameField.from_rows(config.frame),
        metric=MetricField.from_rows(config.metric),
        equipment=equipment,
        spin_determinant=determinant,
        sample_points=tuple(tuple(float(x) for x in p) for p in config.sample_points),
        tolerance=tolerance,
        engine=DerivativeEngine(mode=config.derivative_mode),
        orientation=config.orientation,
    )


def verify_point(scene: Scene, index: int, point: Sequence[float]) -> PointReport:
    """
    샘플 포인트 하나의 전체 검증

    포인트 단위 오류 (퇴화, 장비 불일치, 평가 오류) 는 예외 대신 error 필드로 보고한다.
    """
    tol, engine, f = scene.tolerance, scene.engine, scene.frame
    try:
        if scene.spin_determinant is not None:
            det = abs(eval_expr(scene.spin_determinant, point))
            if det < settings.frame_degeneracy_threshold:
                raise SpinTransformDegeneracyError(
                    f"spin transform determinant {det:.3e} below "
                    f"{settings.frame_degeneracy_threshold:.1e} at point {list(point)}"
                )
        c = commutation_coefficients(f, point, engine)
        conn = christoffel(f, scene.metric, point, engine)
        reports = [
            check_torsion(conn, c, tol),
            check_metricity(f, scene.metric, conn, point, tol, engine),
            check_symmetrization(conn, tol),
            check_trace(conn, tol),
        ]
        sc = spinor_connection(scene.equipment, f, conn, point, engine)
        reports.append(check_spinor_metric_concordance(scene.equipment, f, sc, point, tol, engine))
        reports.append(check_ivdw_concordance(scene.equipment, f, conn, sc, point, tol, engine))
        reports.extend(check_u_proportionality(scene.equipment, f, point, tol, engine))
        reports.extend(derivative_swap_residuals(scene.equipment, f, point, tol, engine).values())
        U, U_bar = u_coefficients(scene.equipment, f, point, engine)
    except (ValueError, ArithmeticError) as e:
        logger.error(f"[ERROR] [SceneService] {scene.name} point {index}: {type(e).__name__}: {e}")
        return PointReport(index=index, point=list(point), passed=False, error=f"{type(e).__name__}: {e}")

    return PointReport(
        index=index,
        point=list(point),
        passed=all(r.passed for r in reports),
        residuals=[residual_to_model(r) for r in reports],
        commutation_max=float(np.max(np.abs(c))),
        u=complex_pairs(U),
        ubar=complex_pairs(U_bar),
        spinor_term_max=list(sc.term_norms),
    )


class SceneService:
    """장면 검증 서비스 클래스"""

    MAX_WORKERS = settings.max_workers

    def __init__(self, config: SceneConfig, max_workers: Optional[int] = None):
        """
        Args:
            config: 검증된 장면 설정
            max_workers: 포인트 병렬 처리 워커 수 (기본: MAX_WORKERS)
        """
        self.config = config
        self.scene = build_scene(config)
        self.max_workers = max_workers or self.MAX_WORKERS
        logger.info(
            f"[INFO] SceneService initialized: scene={self.scene.name}, "
            f"mode={self.scene.engine.mode.value}, tol={self.scene.tolerance:g}, workers={self.max_workers}"
        )

    def verify_points(self) -> List[PointReport]:
        """모든 샘플 포인트를 병렬로 검증하고 포인트 순서로 정렬"""
        started = time.perf_counter()
        results: List[PointReport] = []
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {
                executor.submit(verify_point, self.scene, index, point): index
                for index, point in enumerate(self.scene.sample_points)
            }
            for future in as_completed(futures):
                index = futures[future]
                report = future.result()
                results.append(report)
                logger.info(
                    f"[INFO] [SceneService] [POINT_DONE] {self.scene.name} point {index}: "
                    f"{'PASS' if report.passed else 'FAIL'}"
                )
        results.sort(key=lambda r: r.index)
        logger.info(
            f"[INFO] [SceneService] {self.scene.name}: {len(results)} points in "
            f"{time.perf_counter() - started:.2f}s"
        )
        return results

    def verify(self) -> SceneReport:
        points = self.verify_points()
        return SceneReport(
            name=self.scene.name,
            derivative_mode=self.scene.engine.mode.value,
            orientation=self.scene.orientation.value,
            tolerance=self.scene.tolerance,
            passed=all(p.passed for p in points),
            points=points,
        )


def run_verify_scene(config: SceneConfig) -> RunReport:
    """verify-scene 진입점"""
    scene_report = SceneService(config).verify()
    return RunReport(
        schema_version=REPORT_SCHEMA_VERSION,
        tool_version=__version__,
        command=COMMAND,
        overall_pass=scene_report.passed,
        orientation=scene_report.orientation,
        scenes=[scene_report],
    )
