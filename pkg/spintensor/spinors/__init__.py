"""스피너 접속 모듈"""

from spintensor.spinors.equipment_field import (
    EquipmentField,
    check_equipment_consistency,
    equipment_residuals,
    spin_determinant,
    spin_frame_transform,
)
from spintensor.spinors.spinor_connection import (
    SpinorConnectionAtPoint,
    check_ivdw_concordance,
    check_spinor_metric_concordance,
    check_u_proportionality,
    derivative_swap_residuals,
    spinor_connection,
    u_coefficients,
)

__all__ = [
    "EquipmentField",
    "check_equipment_consistency",
    "equipment_residuals",
    "spin_determinant",
    "spin_frame_transform",
    "SpinorConnectionAtPoint",
    "check_ivdw_concordance",
    "check_spinor_metric_concordance",
    "check_u_proportionality",
    "derivative_swap_residuals",
    "spinor_connection",
    "u_coefficients",
]
