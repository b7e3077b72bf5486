"""
spintensor 명령행 도구

    spintensor verify-canonical [--orientation right|left] [--corrupt p,r,rbar]
    spintensor verify-scene --config <path|flat|conformal|spin-rescaled>

두 명령 모두 --format json|text, --out <path>, --verbose 를 받는다.
종료 코드: 0 = 전체 통과, 1 = 검증 실패, 2 = 설정/인자 오류.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from spintensor import __version__
from spintensor.config.constants import BUNDLED_SCENES
from spintensor.config.settings import settings
from spintensor.equipment.canonical import Orientation
from spintensor.errors import ConfigError
from spintensor.schemas.report import RunReport
from spintensor.services.canonical_service import run_verify_canonical
from spintensor.services.report_service import REPORT_FORMATS, emit_report
from spintensor.services.scene_service import load_scene_config, run_verify_scene

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def setup_logging(level: str = "WARNING") -> None:
    """
    로깅 설정

    보고서가 표준 출력을 쓰므로 로그는 표준 에러로 보낸다.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # 기존 핸들러 제거 (중복 방지)
    root_logger.handlers.clear()

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setLevel(level)
    formatter = logging.Formatter(
        "[%(asctime)s] %(name)s - %(levelname)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    stderr_handler.setFormatter(formatter)
    root_logger.addHandler(stderr_handler)


def parse_corrupt(text: str) -> List[int]:
    """'p,r,rbar' 형식의 오염 레이블 파싱"""
    parts = [part.strip() for part in text.split(",")]
    try:
        labels = [int(part) for part in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three integers 'p,r,rbar', got {text!r}")
    if len(labels) != 3:
        raise argparse.ArgumentTypeError(f"expected three labels 'p,r,rbar', got {len(labels)}")
    return labels


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=REPORT_FORMATS, default="json", help="보고서 형식")
    parser.add_argument("--out", type=Path, default=None, help="보고서 파일 경로 (기본: 표준 출력)")
    parser.add_argument("--verbose", action="store_true", help="DEBUG 로그 출력")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spintensor",
        description="스핀 텐서 대수 검증 도구 (IvdW 항등식, 계량 접속, 스피너 접속)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    canonical = subparsers.add_parser("verify-canonical", help="표준 프레임 쌍의 항등식 전수 검증")
    canonical.add_argument(
        "--orientation",
        choices=[o.value for o in Orientation],
        default=Orientation.RIGHT.value,
        help="프레임 방향",
    )
    canonical.add_argument(
        "--corrupt",
        type=parse_corrupt,
        default=None,
        metavar="p,r,rbar",
        help="부호를 뒤집을 G 성분 (진단용)",
    )
    _add_output_options(canonical)

    scene = subparsers.add_parser("verify-scene", help="장면의 접속/스피너 접속 잔차 검증")
    scene.add_argument(
        "--config",
        required=True,
        help=f"장면 설정 JSON 경로 또는 번들 장면 이름 ({', '.join(BUNDLED_SCENES)})",
    )
    _add_output_options(scene)
    return parser


def _run(args: argparse.Namespace) -> RunReport:
    if args.command == "verify-canonical":
        return run_verify_canonical(Orientation(args.orientation), args.corrupt)
    return run_verify_scene(load_scene_config(args.config))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """명령행 진입점 (종료 코드 반환)"""
    args = build_parser().parse_args(argv)
    setup_logging("DEBUG" if args.verbose else settings.log_level)

    try:
        report = _run(args)
    except ConfigError as e:
        logger.error(f"[ERROR] config error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        logger.error(f"[ERROR] invalid argument: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    rendered = emit_report(report, args.format)
    if args.out is not None:
        try:
            args.out.write_text(rendered, encoding="utf-8")
        except OSError as e:
            logger.error(f"[ERROR] cannot write report to {args.out}: {e}")
            print(f"error: cannot write report to {args.out}: {e.strerror or e}", file=sys.stderr)
            return EXIT_USAGE
        logger.info(f"[INFO] report written to {args.out}")
    else:
        sys.stdout.write(rendered)
    return EXIT_PASS if report.overall_pass else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
