"""
서비스 계층 테스트

- CanonicalService: 방향별 항등식 보고서, 오염 진단
- SceneService: 번들 장면 3종, 포인트 단위 오류 보고, 유한 차분 허용 오차
- 장면 설정 로드 오류 (JSON 위치, 스키마 필드 경로)
"""
import json
import logging

import pytest

from spintensor.config.constants import IDENTITY_CUBIC, IDENTITY_QUADRATIC, REPORT_SCHEMA_VERSION
from spintensor.equipment.canonical import Orientation
from spintensor.errors import ConfigError, IndexRangeError
from spintensor.schemas.report import RunReport
from spintensor.schemas.scene import SceneConfig, SpinTransformSpec
from spintensor.services import (
    CanonicalService,
    SceneService,
    build_scene,
    emit_report,
    load_scene_config,
    run_verify_canonical,
    run_verify_scene,
)
from spintensor.tests.conftest import SAMPLE_POINTS

logger = logging.getLogger(__name__)

IDENTITY_ROWS = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]
MINKOWSKI_ROWS = [["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]


def _scene_dict(**overrides):
    data = {
        "name": "custom",
        "frame": IDENTITY_ROWS,
        "metric": MINKOWSKI_ROWS,
        "sample_points": [list(p) for p in SAMPLE_POINTS],
    }
    data.update(overrides)
    return data


def _write(tmp_path, content, name="scene.json"):
    path = tmp_path / name
    path.write_text(content if isinstance(content, str) else json.dumps(content), encoding="utf-8")
    return path


@pytest.mark.parametrize("orientation", list(Orientation))
def test_canonical_service_passes(orientation):
    report = CanonicalService(orientation).verify()
    assert report.overall_pass
    assert report.command == "verify-canonical"
    assert report.schema_version == REPORT_SCHEMA_VERSION
    assert report.orientation == orientation.value
    assert report.cubic_total_cases == 256
    assert report.corrupted_entry is None
    assert [i.identity_id for i in report.identities][:3] == ["hermiticity", IDENTITY_QUADRATIC, IDENTITY_CUBIC]


def test_canonical_service_reports_corruption():
    """G^{11}_0 오염: 이차/삼차 실패, 실패 인덱스와 양변 값이 보고서에 기록"""
    report = run_verify_canonical(Orientation.RIGHT, [0, 1, 1])
    assert not report.overall_pass
    assert report.corrupted_entry == [0, 1, 1]
    by_id = {i.identity_id: i for i in report.identities}
    assert by_id["hermiticity"].passed
    quadratic = by_id[IDENTITY_QUADRATIC]
    assert not quadratic.passed
    first = next(f for f in quadratic.failures if f.relation == "spatial")
    assert first.index == [0, 0] and first.lhs == "0" and first.rhs == "2"
    assert not by_id[IDENTITY_CUBIC].passed
    logger.info(f"[TEST] 오염 보고: {first}")


def test_canonical_service_rejects_zero_entry():
    with pytest.raises(IndexRangeError):
        run_verify_canonical(Orientation.RIGHT, [0, 1, 2])


@pytest.mark.parametrize("name", ["flat", "conformal", "spin-rescaled"])
def test_bundled_scenes_pass(name):
    report = run_verify_scene(load_scene_config(name))
    assert report.overall_pass, emit_report(report, "text")
    scene = report.scenes[0]
    assert scene.name == name
    assert [p.index for p in scene.points] == list(range(len(SAMPLE_POINTS)))
    for point in scene.points:
        assert point.error is None
        assert {r.name for r in point.residuals} >= {
            "torsion",
            "metricity",
            "spinor_metric_concordance",
            "ivdw_concordance",
            "u_proportionality",
            "swap.conjugate_pair",
            "swap.spatial",
        }
        assert all(r.residual <= r.tolerance for r in point.residuals)


def test_flat_scene_residuals_are_exact_zero(flat_config):
    scene = SceneService(flat_config).verify()
    for point in scene.points:
        assert point.commutation_max == 0.0
        assert all(r.residual == 0.0 for r in point.residuals)
        assert point.spinor_term_max == [0.0, 0.0, 0.0]


def test_spin_rescaled_scene_reports_u(spin_rescaled_config):
    """S = e^{x1}·1: d^{ik} ∝ e^{-2x1} 이므로 U_1 = -2 e^{-x1} (등각 프레임)"""
    scene = SceneService(spin_rescaled_config, max_workers=2).verify()
    origin = scene.points[0]
    assert origin.u[1] == pytest.approx([-2.0, 0.0])
    assert origin.ubar[1] == pytest.approx([-2.0, 0.0])
    assert all(norm > 0 for norm in origin.spinor_term_max)


def test_build_scene_uses_orientation_and_default_tolerance():
    config = SceneConfig.model_validate(
        _scene_dict(orientation="left", derivative_mode="finite-difference", equipment={"spin_transform": [["2", "0"], ["0", "1"]]})
    )
    scene = build_scene(config)
    assert scene.orientation is Orientation.LEFT
    assert scene.equipment.orientation is Orientation.LEFT
    assert scene.tolerance == 1e-5
    assert scene.spin_determinant is not None
    assert SceneService(config).verify().passed


def test_degenerate_spin_transform_is_reported_per_point():
    """원점에서 det S = 0: 해당 포인트만 오류로 보고"""
    config = SceneConfig.model_validate(_scene_dict(equipment={"spin_transform": [["x1", "0"], ["0", "1"]]}))
    report = run_verify_scene(config)
    assert not report.overall_pass
    points = report.scenes[0].points
    assert points[0].error.startswith("SpinTransformDegeneracyError")
    assert points[0].residuals == []
    assert all(p.error is None and p.passed for p in points[1:])


def test_finite_difference_cannot_meet_tiny_tolerance():
    config = SceneConfig.model_validate(
        _scene_dict(
            frame=[["exp(-x1)" if i == r else "0" for r in range(4)] for i in range(4)],
            derivative_mode="finite-difference",
            tolerance=1e-15,
        )
    )
    report = run_verify_scene(config)
    assert not report.overall_pass
    assert all(p.error is None for p in report.scenes[0].points)


def test_inconsistent_metric_is_reported_per_point():
    config = SceneConfig.model_validate(
        _scene_dict(metric=[["2", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]])
    )
    points = run_verify_scene(config).scenes[0].points
    assert all(p.error.startswith("EquipmentInconsistencyError") for p in points)
    assert "metric_agreement" in points[0].error


def test_overflowing_point_is_reported_not_raised():
    """x0 = 0.7 에서 |e^{x0}+i|^1000 이 float 범위를 넘음: 해당 포인트만 평가 오류"""
    config = SceneConfig.model_validate(
        _scene_dict(equipment={"spin_transform": [["(exp(x0)+i)^1000", "0"], ["0", "1"]]})
    )
    report = run_verify_scene(config)
    assert not report.overall_pass
    points = report.scenes[0].points
    assert len(points) == len(SAMPLE_POINTS)
    assert points[3].error.startswith("ExpressionEvaluationError")
    assert points[3].residuals == []
    logger.info(f"[TEST] 오버플로 포인트 오류: {points[3].error}")


def test_metric_symmetry_compares_values():
    """x0*x1 과 x1*x0 은 같은 성분: 설정 오류가 아님"""
    commuted = [row[:] for row in MINKOWSKI_ROWS]
    commuted[0][1] = "x0*x1/10"
    commuted[1][0] = "x1*x0/10"
    config = SceneConfig.model_validate(_scene_dict(metric=commuted))
    points = run_verify_scene(config).scenes[0].points
    assert not any((p.error or "").startswith("SignatureError") for p in points)

    asymmetric = [row[:] for row in MINKOWSKI_ROWS]
    asymmetric[0][1] = "x0*x1/10"
    asymmetric[1][0] = "x0*x2/10"
    with pytest.raises(ValueError, match="metric must be symmetric"):
        SceneConfig.model_validate(_scene_dict(metric=asymmetric))


def test_load_scene_config_accepts_commuted_metric(tmp_path):
    commuted = [row[:] for row in MINKOWSKI_ROWS]
    commuted[0][2] = "2*x3"
    commuted[2][0] = "x3*2"
    config = load_scene_config(_write(tmp_path, _scene_dict(metric=commuted)))
    assert config.metric[2][0] == "x3*2"


def test_scene_config_round_trip(spin_rescaled_config):
    restored = SceneConfig.model_validate_json(spin_rescaled_config.model_dump_json())
    assert restored == spin_rescaled_config
    assert isinstance(restored.equipment, SpinTransformSpec)


def test_run_report_json_is_deterministic(conformal_config):
    first = emit_report(run_verify_scene(conformal_config), "json")
    second = emit_report(run_verify_scene(conformal_config), "json")
    assert first == second
    assert RunReport.model_validate_json(first).scenes[0].name == "conformal"


def test_load_scene_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_scene_config("no-such-scene")

    broken = _write(tmp_path, '{"name": "x",\n  "frame": [}')
    with pytest.raises(ConfigError) as exc:
        load_scene_config(broken)
    assert exc.value.location.startswith("line 2")
    assert exc.value.path == str(broken)

    extra = _write(tmp_path, _scene_dict(colour="blue"), "extra.json")
    with pytest.raises(ConfigError) as exc:
        load_scene_config(extra)
    assert exc.value.location == "colour"

    bad_expr = _write(tmp_path, _scene_dict(frame=[["1", "0", "0", "0"], ["0", "y", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]), "expr.json")
    with pytest.raises(ConfigError) as exc:
        load_scene_config(bad_expr)
    assert exc.value.location == "frame"

    no_points = _write(tmp_path, _scene_dict(sample_points=[]), "points.json")
    with pytest.raises(ConfigError) as exc:
        load_scene_config(no_points)
    assert exc.value.location == "sample_points"


def test_emit_report_rejects_unknown_format():
    report = run_verify_canonical(Orientation.RIGHT, None)
    with pytest.raises(ValueError):
        emit_report(report, "yaml")
    text = emit_report(report, "text")
    assert text.endswith("overall: PASS\n")
