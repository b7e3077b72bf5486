"""타입이 지정된 인덱스 시그니처를 갖는 밀집 스핀 텐서와 축약, 인덱스 올림/내림, 켤레"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Iterator, Sequence, Tuple

import numpy as np

from spintensor.algebra.scalars import (
    GaussianRational,
    ScalarRealm,
    exact_conjugate,
    exact_to_complex,
)
from spintensor.config.constants import SPATIAL_RANGE, SPINOR_RANGE
from spintensor.errors import IndexRangeError, RealizationError, SignatureError

logger = logging.getLogger(__name__)


class IndexFamily(str, Enum):
    """인덱스 족"""

    SPATIAL = "spatial"
    SPINOR = "spinor"
    CONJUGATE_SPINOR = "conjugate-spinor"

    @property
    def size(self) -> int:
        return SPATIAL_RANGE if self is IndexFamily.SPATIAL else SPINOR_RANGE

    @property
    def offset(self) -> int:
        """레이블과 저장 위치의 차이 (공간 0..3 → 0, 스피너 1..2 → 1)"""
        return 0 if self is IndexFamily.SPATIAL else 1

    def conjugated(self) -> "IndexFamily":
        if self is IndexFamily.SPINOR:
            return IndexFamily.CONJUGATE_SPINOR
        if self is IndexFamily.CONJUGATE_SPINOR:
            return IndexFamily.SPINOR
        return self


class Variance(str, Enum):
    """인덱스 위치"""

    UPPER = "upper"
    LOWER = "lower"

    def flipped(self) -> "Variance":
        return Variance.LOWER if self is Variance.UPPER else Variance.UPPER


@dataclass(frozen=True)
class IndexKind:
    """인덱스 종류 (족 + 위치)"""

    family: IndexFamily
    variance: Variance

    @property
    def size(self) -> int:
        return self.family.size

    def flipped(self) -> "IndexKind":
        return IndexKind(self.family, self.variance.flipped())

    def conjugated(self) -> "IndexKind":
        return IndexKind(self.family.conjugated(), self.variance)

    def __str__(self) -> str:
        mark = "^" if self.variance is Variance.UPPER else "_"
        return f"{self.family.value}{mark}"


# 자주 쓰는 인덱스 종류
SPATIAL_UP = IndexKind(IndexFamily.SPATIAL, Variance.UPPER)
SPATIAL_DOWN = IndexKind(IndexFamily.SPATIAL, Variance.LOWER)
SPINOR_UP = IndexKind(IndexFamily.SPINOR, Variance.UPPER)
SPINOR_DOWN = IndexKind(IndexFamily.SPINOR, Variance.LOWER)
CONJ_UP = IndexKind(IndexFamily.CONJUGATE_SPINOR, Variance.UPPER)
CONJ_DOWN = IndexKind(IndexFamily.CONJUGATE_SPINOR, Variance.LOWER)

Signature = Tuple[IndexKind, ...]


def _as_exact_array(values: Any, shape: Tuple[int, ...]) -> np.ndarray:
    flat = np.asarray(values, dtype=object).reshape(-1)
    out = np.empty(flat.shape, dtype=object)
    for k, v in enumerate(flat):
        out[k] = GaussianRational.coerce(v)
    return out.reshape(shape)


class SpinTensor:
    """밀집 스핀 텐서

    entries 는 시그니처 순서의 행 우선 배열이다. 스피너 레이블 1..2 는 저장 인덱스 0..1 에 놓인다.
    정확 실현은 GaussianRational 객체 배열, 부동소수점 실현은 complex128 배열을 쓴다.
    생성 후 변경 불가.
    """

    __slots__ = ("_signature", "_entries", "_realm")

    def __init__(self, signature: Sequence[IndexKind], entries: Any, realm: ScalarRealm | None = None):
        """
        Args:
            signature: 인덱스 종류 목록
            entries: 중첩 리스트 또는 numpy 배열 (모든 성분이 채워져 있어야 함)
            realm: 스칼라 실현 (생략 시 entries 의 dtype 으로 판정)
        """
        signature = tuple(signature)
        shape = tuple(kind.size for kind in signature)
        if realm is None:
            arr = np.asarray(entries)
            realm = ScalarRealm.EXACT if arr.dtype == object else ScalarRealm.FLOAT
        if realm is ScalarRealm.EXACT:
            arr = np.asarray(entries, dtype=object)
            if arr.shape != shape:
                raise SignatureError(f"entry shape {arr.shape} does not match signature shape {shape}")
            arr = _as_exact_array(arr, shape)
        else:
            try:
                arr = np.array(entries, dtype=np.complex128)
            except TypeError:
                arr = np.array(exact_to_complex(np.asarray(entries, dtype=object)), dtype=np.complex128)
            if arr.shape != shape:
                raise SignatureError(f"entry shape {arr.shape} does not match signature shape {shape}")
        arr.flags.writeable = False
        self._signature: Signature = signature
        self._entries = arr
        self._realm = realm

    @classmethod
    def zeros(cls, signature: Sequence[IndexKind], realm: ScalarRealm = ScalarRealm.EXACT) -> "SpinTensor":
        shape = tuple(kind.size for kind in signature)
        if realm is ScalarRealm.EXACT:
            return cls(signature, np.full(shape, GaussianRational(0), dtype=object), realm)
        return cls(signature, np.zeros(shape, dtype=np.complex128), realm)

    @property
    def signature(self) -> Signature:
        return self._signature

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def realm(self) -> ScalarRealm:
        return self._realm

    @property
    def rank(self) -> int:
        return len(self._signature)

    @property
    def shape(self) -> Tuple[int, ...]:
        return self._entries.shape

    def __getitem__(self, index):
        """저장 인덱스 (0 기반) 로 성분 조회"""
        return self._entries[index]

    def at(self, *labels: int):
        """레이블 (공간 0..3, 스피너 1..2) 로 성분 조회

        Raises:
            IndexRangeError: 레이블이 범위를 벗어난 경우
        """
        if len(labels) != self.rank:
            raise IndexRangeError(f"expected {self.rank} labels, got {len(labels)}")
        index = []
        for label, kind in zip(labels, self._signature):
            pos = label - kind.family.offset
            if not 0 <= pos < kind.size:
                raise IndexRangeError(f"label {label} out of range for {kind}")
            index.append(pos)
        return self._entries[tuple(index)]

    def indices(self) -> Iterator[Tuple[int, ...]]:
        """모든 저장 인덱스 튜플 (행 우선)"""
        return product(*(range(kind.size) for kind in self._signature))

    def to_float(self) -> "SpinTensor":
        if self._realm is ScalarRealm.FLOAT:
            return self
        return SpinTensor(self._signature, np.array(exact_to_complex(self._entries), dtype=np.complex128), ScalarRealm.FLOAT)

    def scale(self, factor) -> "SpinTensor":
        if self._realm is ScalarRealm.EXACT:
            f = GaussianRational.coerce(factor)
            return SpinTensor(self._signature, self._entries * f, self._realm)
        return SpinTensor(self._signature, self._entries * complex(factor), self._realm)

    def __add__(self, other: "SpinTensor") -> "SpinTensor":
        _require_same_signature(self, other)
        return SpinTensor(self._signature, self._entries + other._entries, self._realm)

    def __sub__(self, other: "SpinTensor") -> "SpinTensor":
        _require_same_signature(self, other)
        return SpinTensor(self._signature, self._entries - other._entries, self._realm)

    def __neg__(self) -> "SpinTensor":
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpinTensor):
            return NotImplemented
        if self._signature != other._signature or self._realm != other._realm:
            return False
        return bool(np.all(self._entries == other._entries))

    __hash__ = None

    def allclose(self, other: "SpinTensor", tol: float) -> bool:
        """부동소수점 비교 (허용 오차 명시 필수)"""
        if self._signature != other._signature:
            return False
        a = self.to_float().entries
        b = other.to_float().entries
        return bool(np.max(np.abs(a - b), initial=0.0) <= tol)

    def __repr__(self) -> str:
        sig = ", ".join(str(k) for k in self._signature)
        return f"SpinTensor([{sig}], realm={self._realm.value})"


def _require_same_signature(a: SpinTensor, b: SpinTensor) -> None:
    if a.signature != b.signature:
        raise SignatureError(f"signature mismatch: {a.signature} vs {b.signature}")
    if a.realm != b.realm:
        raise RealizationError(f"realm mismatch: {a.realm.value} vs {b.realm.value}")


def contract(a: SpinTensor, b: SpinTensor, pairs: Sequence[Tuple[int, int]]) -> SpinTensor:
    """두 텐서의 슬롯 쌍을 축약

    Args:
        a: 첫 번째 텐서
        b: 두 번째 텐서
        pairs: (a 의 슬롯, b 의 슬롯) 목록. 각 쌍은 같은 족의 위/아래 인덱스여야 함

    Returns:
        a 의 남은 슬롯, b 의 남은 슬롯 순서의 시그니처를 갖는 텐서

    Raises:
        SignatureError: 족 또는 위치 불일치
        RealizationError: 두 텐서의 실현 방식이 다른 경우
    """
    if a.realm != b.realm:
        raise RealizationError(f"cannot contract {a.realm.value} with {b.realm.value} tensor")
    slots_a = [p[0] for p in pairs]
    slots_b = [p[1] for p in pairs]
    if len(set(slots_a)) != len(slots_a) or len(set(slots_b)) != len(slots_b):
        raise SignatureError(f"repeated slot in contraction pairs {list(pairs)}")
    for sa, sb in pairs:
        if not (0 <= sa < a.rank and 0 <= sb < b.rank):
            raise IndexRangeError(f"contraction slot out of range: ({sa}, {sb})")
        ka, kb = a.signature[sa], b.signature[sb]
        if ka.family != kb.family:
            raise SignatureError(f"family mismatch in pair ({sa}, {sb}): {ka} vs {kb}")
        if ka.variance == kb.variance:
            raise SignatureError(f"variance mismatch in pair ({sa}, {sb}): both {ka.variance.value}")
    entries = np.tensordot(a.entries, b.entries, axes=(slots_a, slots_b))
    signature = [k for s, k in enumerate(a.signature) if s not in slots_a]
    signature += [k for s, k in enumerate(b.signature) if s not in slots_b]
    if not signature:
        entries = np.asarray(entries, dtype=object if a.realm is ScalarRealm.EXACT else np.complex128).reshape(())
    return SpinTensor(signature, entries, a.realm)


def raise_lower(t: SpinTensor, slot: int, metric: SpinTensor) -> SpinTensor:
    """계량으로 슬롯 하나의 위치를 바꿈

    슬롯은 계량의 첫 번째 슬롯과 축약되고, 새 인덱스는 계량의 두 번째 슬롯이 된다.
    서로 역인 계량으로 내린 뒤 올리면 원래 텐서가 된다.

    Args:
        t: 입력 텐서
        slot: 위치를 바꿀 슬롯
        metric: 해당 족의 2-인덱스 계량 (위치가 슬롯과 반대)

    Returns:
        슬롯 위치가 바뀐 텐서

    Raises:
        SignatureError: 족이 다른 계량, 또는 위치가 맞지 않는 계량
    """
    if not 0 <= slot < t.rank:
        raise IndexRangeError(f"slot {slot} out of range for rank {t.rank}")
    kind = t.signature[slot]
    if metric.rank != 2 or metric.signature[0] != metric.signature[1]:
        raise SignatureError(f"metric must have two slots of one kind, got {metric.signature}")
    if metric.signature[0].family != kind.family:
        raise SignatureError(
            f"metric family {metric.signature[0].family.value} does not match slot family {kind.family.value}"
        )
    if metric.signature[0].variance == kind.variance:
        raise SignatureError(f"metric variance must be opposite to slot variance ({kind})")
    if metric.realm != t.realm:
        raise RealizationError(f"cannot raise/lower {t.realm.value} tensor with {metric.realm.value} metric")
    moved = np.tensordot(t.entries, metric.entries, axes=([slot], [0]))
    moved = np.moveaxis(moved, -1, slot)
    signature = list(t.signature)
    signature[slot] = kind.flipped()
    return SpinTensor(signature, moved, t.realm)


def conjugate(t: SpinTensor) -> SpinTensor:
    """복소 켤레: 성분을 켤레하고 스피너/켤레 스피너 슬롯을 교환 (공간 슬롯 유지)"""
    if t.realm is ScalarRealm.EXACT:
        entries = exact_conjugate(t.entries) if t.rank else np.asarray(t.entries.item().conjugate(), dtype=object)
    else:
        entries = np.conj(t.entries)
    return SpinTensor([k.conjugated() for k in t.signature], entries, t.realm)


def swap_slots(t: SpinTensor, i: int, j: int) -> SpinTensor:
    """두 슬롯의 순서를 교환 (성분 전치)"""
    signature = list(t.signature)
    signature[i], signature[j] = signature[j], signature[i]
    return SpinTensor(signature, np.swapaxes(t.entries, i, j), t.realm)


def tensor_from_function(signature: Sequence[IndexKind], fn, realm: ScalarRealm = ScalarRealm.EXACT) -> SpinTensor:
    """저장 인덱스 튜플을 받는 함수로 텐서 생성"""
    signature = tuple(signature)
    shape = tuple(k.size for k in signature)
    dtype = object if realm is ScalarRealm.EXACT else np.complex128
    entries = np.empty(shape, dtype=dtype)
    for index in product(*(range(n) for n in shape)):
        entries[index] = fn(*index)
    return SpinTensor(signature, entries, realm)
