"""IvdW 항등식 정확 검증 모듈"""

from spintensor.identities.engine import (
    IdentityFailure,
    IdentityReport,
    check_aux_contractions,
    check_cubic,
    check_derived,
    check_hermiticity,
    check_quadratic,
    cubic_sides,
    run_identity_suite,
)

__all__ = [
    "IdentityFailure",
    "IdentityReport",
    "check_aux_contractions",
    "check_cubic",
    "check_derived",
    "check_hermiticity",
    "check_quadratic",
    "cubic_sides",
    "run_identity_suite",
]
