"""스칼라와 스핀 텐서 대수 모듈"""

from spintensor.algebra.scalars import GaussianRational, ScalarRealm
from spintensor.algebra.tensors import (
    IndexFamily,
    IndexKind,
    SpinTensor,
    Variance,
    conjugate,
    contract,
    raise_lower,
    swap_slots,
)
from spintensor.algebra.levi_civita import levi_civita

__all__ = [
    "GaussianRational",
    "ScalarRealm",
    "IndexFamily",
    "IndexKind",
    "SpinTensor",
    "Variance",
    "conjugate",
    "contract",
    "raise_lower",
    "swap_slots",
    "levi_civita",
]
