"""공통 픽스처 (표준 장비, 번들 장면)"""
import pytest

from spintensor.config.settings import settings
from spintensor.equipment.canonical import Orientation, canonical_equipment, oriented_frame_pair
from spintensor.services.scene_service import load_scene_config

SAMPLE_POINTS = [
    (0.0, 0.0, 0.0, 0.0),
    (0.1, 0.2, -0.3, 0.4),
    (-0.5, 0.3, 0.1, -0.2),
    (0.7, -0.4, 0.25, 0.6),
    (0.2, 0.9, -0.8, 0.1),
]


@pytest.fixture(scope="session")
def canonical_right():
    """오른손 표준 프레임 쌍 (정확 실현)"""
    return canonical_equipment(Orientation.RIGHT)


@pytest.fixture(scope="session")
def left_frame_pair():
    """왼손 프레임 쌍 (오른손 쌍의 공간 반사)"""
    return oriented_frame_pair(Orientation.LEFT)


@pytest.fixture(scope="session")
def scenes_dir():
    return settings.scenes_dir


@pytest.fixture
def flat_config():
    return load_scene_config("flat")


@pytest.fixture
def conformal_config():
    return load_scene_config("conformal")


@pytest.fixture
def spin_rescaled_config():
    return load_scene_config("spin-rescaled")
