"""도메인 상수"""

from fractions import Fraction

# 인덱스 범위
SPATIAL_RANGE = 4
SPINOR_RANGE = 2

# 좌표 이름 (차트)
COORDINATE_NAMES = ("x0", "x1", "x2", "x3")

# 민코프스키 계량 대각 성분 (+,-,-,-)
MINKOWSKI_DIAGONAL = (1, -1, -1, -1)

# 스피너 계량 d_ij 와 그 쌍대 d^ij (행 = 첫 인덱스, 레이블 1..2 → 저장 0..1)
SPINOR_METRIC = ((0, 1), (-1, 0))
SPINOR_METRIC_DUAL = ((0, -1), (1, 0))

# 파울리 행렬 (실수부, 허수부) 쌍. sigma_2 의 (1,2) 성분은 -i
PAULI_MATRICES = (
    (((1, 0), (0, 0)), ((0, 0), (1, 0))),
    (((0, 0), (1, 0)), ((1, 0), (0, 0))),
    (((0, 0), (0, -1)), ((0, 1), (0, 0))),
    (((1, 0), (0, 0)), ((0, 0), (-1, 0))),
)

# 공간 반사 (부적절한 프레임 변환) 부호
MIRROR_SIGNS = (1, -1, -1, -1)

HALF = Fraction(1, 2)

# 항등식 식별자
IDENTITY_HERMITICITY = "hermiticity"
IDENTITY_QUADRATIC = "quadratic"
IDENTITY_CUBIC = "cubic"
IDENTITY_DERIVED = "derived"
IDENTITY_DERIVED_PRODUCT = "derived.product"
IDENTITY_DERIVED_SYMMETRIC = "derived.symmetric"
IDENTITY_DERIVED_ANTISYMMETRIC = "derived.antisymmetric"
IDENTITY_DERIVED_RECONSTRUCTION = "derived.reconstruction"
IDENTITY_AUX = "aux"
AUX_IDENTITY_IDS = (
    "aux.ivdw_spinor_lowering",
    "aux.ivdw_double_lowering",
    "aux.inverse_conjugate_lowering",
    "aux.inverse_spinor_lowering",
    "aux.inverse_spatial_lowering",
)

# 리포트 스키마 버전
REPORT_SCHEMA_VERSION = "1"

# 번들 장면 이름
BUNDLED_SCENES = ("flat", "conformal", "spin-rescaled")
