"""검증 서비스 레이어"""

from spintensor.services.canonical_service import CanonicalService, run_verify_canonical
from spintensor.services.report_service import emit_report
from spintensor.services.scene_service import (
    SceneService,
    build_scene,
    load_scene_config,
    run_verify_scene,
)

__all__ = [
    "CanonicalService",
    "run_verify_canonical",
    "emit_report",
    "SceneService",
    "build_scene",
    "load_scene_config",
    "run_verify_scene",
]
