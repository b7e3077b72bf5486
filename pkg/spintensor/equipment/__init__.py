"""표준 프레임 쌍 장비 모듈"""

from spintensor.equipment.canonical import (
    Equipment,
    Orientation,
    canonical_equipment,
    corrupt_equipment,
    inverse_ivdw,
    mirror_frame,
    oriented_frame_pair,
    random_unimodular,
    transform_spin_frame,
    volume_tensor,
)

__all__ = [
    "Equipment",
    "Orientation",
    "canonical_equipment",
    "corrupt_equipment",
    "inverse_ivdw",
    "mirror_frame",
    "oriented_frame_pair",
    "random_unimodular",
    "transform_spin_frame",
    "volume_tensor",
]
