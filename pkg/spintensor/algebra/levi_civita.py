"""4차원 레비-치비타 기호"""
from functools import lru_cache
from itertools import permutations

import numpy as np
from sympy.combinatorics.permutations import Permutation

from spintensor.config.constants import SPATIAL_RANGE
from spintensor.errors import IndexRangeError


@lru_cache(maxsize=1)
def levi_civita_table() -> np.ndarray:
    """4×4×4×4 정수 배열 (위/아래 인덱스 구분 없음)"""
    epsilon = np.zeros((SPATIAL_RANGE,) * SPATIAL_RANGE, dtype=np.int64)
    for perm in permutations(range(SPATIAL_RANGE)):
        epsilon[perm] = Permutation(list(perm)).signature()
    epsilon.flags.writeable = False
    return epsilon


def levi_civita(a: int, m: int, b: int, n: int) -> int:
    """레비-치비타 기호 ε_{ambn}

    Args:
        a, m, b, n: 공간 인덱스 (0..3)

    Returns:
        짝치환 +1, 홀치환 -1, 반복 인덱스 0

    Raises:
        IndexRangeError: 인덱스가 0..3 범위를 벗어난 경우
    """
    for value in (a, m, b, n):
        if not isinstance(value, (int, np.integer)) or not 0 <= value < SPATIAL_RANGE:
            raise IndexRangeError(f"spatial index out of range: {value}")
    return int(levi_civita_table()[a, m, b, n])
