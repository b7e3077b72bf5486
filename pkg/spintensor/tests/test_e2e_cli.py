"""
CLI E2E 테스트

- 종료 코드: 0 (통과), 1 (검증 실패), 2 (설정/인자 오류)
- JSON 보고서의 결정성, text 형식, --out 파일 출력
- 별도 프로세스로 실행한 결과와 in-process 실행 결과 일치
"""
import json
import subprocess
import sys

import pytest

from spintensor import __version__
from spintensor.cli.main import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from spintensor.schemas.report import RunReport

pytestmark = pytest.mark.e2e


def _run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_canonical_passes(capsys):
    code, out, _ = _run_cli(capsys, "verify-canonical")
    assert code == EXIT_PASS
    report = RunReport.model_validate_json(out)
    assert report.overall_pass
    assert report.tool_version == __version__
    assert report.cubic_total_cases == 256


def test_verify_canonical_left(capsys):
    code, out, _ = _run_cli(capsys, "verify-canonical", "--orientation", "left")
    assert code == EXIT_PASS
    assert json.loads(out)["orientation"] == "left"


def test_verify_canonical_corrupt_exits_one(capsys):
    code, out, _ = _run_cli(capsys, "verify-canonical", "--corrupt", "0,1,1")
    assert code == EXIT_FAIL
    data = json.loads(out)
    assert data["overall_pass"] is False
    assert data["corrupted_entry"] == [0, 1, 1]


def test_corrupt_zero_entry_exits_two(capsys):
    code, out, err = _run_cli(capsys, "verify-canonical", "--corrupt", "0,1,2")
    assert code == EXIT_USAGE
    assert out == ""
    assert any(line.startswith("error:") for line in err.splitlines())


@pytest.mark.parametrize("value", ["0,1", "a,b,c"])
def test_malformed_corrupt_is_usage_error(capsys, value):
    with pytest.raises(SystemExit) as exc:
        main(["verify-canonical", "--corrupt", value])
    assert exc.value.code == EXIT_USAGE


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE


def test_canonical_json_is_byte_identical(capsys):
    _, first, _ = _run_cli(capsys, "verify-canonical", "--format", "json")
    _, second, _ = _run_cli(capsys, "verify-canonical", "--format", "json")
    assert first == second


def test_json_output_is_byte_identical(capsys):
    _, first, _ = _run_cli(capsys, "verify-scene", "--config", "spin-rescaled")
    _, second, _ = _run_cli(capsys, "verify-scene", "--config", "spin-rescaled")
    assert first == second
    assert first.endswith("\n")
    assert list(json.loads(first)) == sorted(json.loads(first))


@pytest.mark.parametrize("name", ["flat", "conformal", "spin-rescaled"])
def test_verify_bundled_scene(capsys, name):
    code, out, _ = _run_cli(capsys, "verify-scene", "--config", name)
    assert code == EXIT_PASS
    assert json.loads(out)["scenes"][0]["name"] == name


def test_scene_with_tiny_tolerance_exits_one(capsys, tmp_path, scenes_dir):
    data = json.loads((scenes_dir / "conformal.json").read_text(encoding="utf-8"))
    data.update(derivative_mode="finite-difference", tolerance=1e-15)
    path = tmp_path / "strict.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = _run_cli(capsys, "verify-scene", "--config", str(path), "--format", "text")
    assert code == EXIT_FAIL
    assert "scene conformal (finite-difference, tol=1e-15): FAIL" in out
    assert out.endswith("overall: FAIL\n")


def test_bad_config_exits_two(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "bad", "frame": ', encoding="utf-8")
    code, out, err = _run_cli(capsys, "verify-scene", "--config", str(path))
    assert code == EXIT_USAGE
    assert out == ""
    assert "line 1" in err

    code, _, err = _run_cli(capsys, "verify-scene", "--config", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE
    assert "scene file not found" in err


def test_out_writes_report_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = _run_cli(capsys, "verify-canonical", "--format", "text", "--out", str(target))
    assert code == EXIT_PASS
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith(f"spintensor {__version__} verify-canonical")
    assert text.endswith("overall: PASS\n")


@pytest.mark.parametrize("target", ["directory", "missing_parent"])
def test_unwritable_out_exits_two(capsys, tmp_path, target):
    """--out 경로에 쓸 수 없으면 traceback 대신 종료 코드 2 와 한 줄 오류"""
    path = tmp_path if target == "directory" else tmp_path / "no" / "such" / "report.json"
    code, out, err = _run_cli(capsys, "verify-canonical", "--out", str(path))
    assert code == EXIT_USAGE
    assert out == ""
    errors = [line for line in err.splitlines() if line.startswith("error:")]
    assert len(errors) == 1
    assert "cannot write report" in errors[0]


@pytest.mark.slow
def test_subprocess_matches_in_process(capsys):
    """python -m 실행 결과가 in-process main() 결과와 바이트 단위로 동일"""
    _, expected, _ = _run_cli(capsys, "verify-scene", "--config", "conformal")
    result = subprocess.run(
        [sys.executable, "-m", "spintensor.cli.main", "verify-scene", "--config", "conformal"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert result.returncode == EXIT_PASS, result.stderr
    assert result.stdout == expected
