"""스칼라 체: 가우스 유리수 (정확 산술) 와 복소 부동소수점 두 가지 실현"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

import numpy as np

from spintensor.errors import RealizationError


class ScalarRealm(str, Enum):
    """스칼라 실현 방식"""

    EXACT = "exact"  # 가우스 유리수
    FLOAT = "float"  # complex128


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """실수부와 허수부가 모두 유리수인 복소수

    Fraction 이 항상 기약분수와 양의 분모로 정규화하므로 동등 비교는 정확하다.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: "ScalarLike") -> "GaussianRational":
        """정수, Fraction, GaussianRational 만 가우스 유리수로 변환

        Args:
            value: 변환할 값

        Returns:
            GaussianRational

        Raises:
            RealizationError: float, complex 등 정확하지 않은 값
        """
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction, numbers.Rational)):
            return cls(Fraction(value), Fraction(0))
        raise RealizationError(f"cannot use {type(value).__name__} value {value!r} as an exact scalar")

    @classmethod
    def i(cls) -> "GaussianRational":
        return cls(Fraction(0), Fraction(1))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm_squared()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GaussianRational(Fraction(1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            o = GaussianRational.coerce(other)
        except RealizationError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


ScalarLike = Union[GaussianRational, Fraction, int, complex, float]

ZERO = GaussianRational(Fraction(0))
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))


def realm_of(value) -> ScalarRealm:
    """단일 스칼라 값의 실현 방식 판정"""
    if isinstance(value, (GaussianRational, int, Fraction)):
        return ScalarRealm.EXACT
    return ScalarRealm.FLOAT


def scalars_close(a: complex, b: complex, tol: float) -> bool:
    """부동소수점 실현의 동등 비교 (허용 오차는 항상 명시)

    Args:
        a: 왼쪽 값
        b: 오른쪽 값
        tol: 절대 허용 오차

    Returns:
        |a - b| <= tol 여부
    """
    return bool(abs(complex(a) - complex(b)) <= tol)


def to_complex(value) -> complex:
    """가우스 유리수 또는 숫자를 complex 로 변환 (가장 가까운 부동소수점)"""
    return complex(value)


exact_conjugate = np.frompyfunc(lambda x: x.conjugate(), 1, 1)
exact_to_complex = np.frompyfunc(complex, 1, 1)
