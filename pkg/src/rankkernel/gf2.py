"""Linear algebra over GF(2) with int-backed bit vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Protocol

from .errors import PreconditionError


class _Vector(Protocol):
    length: int
    bits: int


@dataclass(frozen=True)
class BitVec:
    """A vector in GF(2)^length; coordinate ``i`` is bit ``i`` of ``bits``."""

    length: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise PreconditionError("bits exceed the vector length")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVec":
        values = list(values)
        bits = 0
        for i, b in enumerate(values):
            if b:
                bits |= 1 << i
        return cls(len(values), bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVec":
        """``"101"`` has ones at coordinates 0 and 2."""
        return cls.from_bits(1 if ch == "1" else 0 for ch in text if ch in "01")

    @classmethod
    def zero(cls, length: int) -> "BitVec":
        return cls(length, 0)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if other.length != self.length:
            raise PreconditionError("dimension mismatch")
        return BitVec(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def to_string(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))


class Gf2Basis:
    """Incrementally built basis that can certify span membership.

    Each stored row is kept reduced with pivot equal to its lowest set bit,
    and carries a history mask naming the accepted vectors it is the XOR of.
    """

    def __init__(self, dim: int | None = None):
        self.dim = dim
        self._rows: list[int] = []
        self._pivots: list[int] = []
        self._history: list[int] = []
        self._by_pivot: dict[int, int] = {}
        self._indices: list[Hashable] = []
        self._originals: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> list[tuple[Hashable, int, int]]:
        """(original index, reduced row, pivot column) per accepted vector."""
        return list(zip(self._indices, self._rows, self._pivots))

    @property
    def accepted(self) -> list[Hashable]:
        return list(self._indices)

    def _check_dim(self, v: _Vector) -> None:
        if self.dim is None:
            self.dim = v.length
        elif v.length != self.dim:
            raise PreconditionError(
                f"dimension mismatch: basis has {self.dim}, vector has {v.length}"
            )

    def _reduce(self, bits: int) -> tuple[int, int]:
        # Lowest-bit elimination is complete: a span member's lowest set bit
        # is always the pivot of one of the rows it is built from.
        history = 0
        by_pivot = self._by_pivot
        while bits:
            low = (bits & -bits).bit_length() - 1
            slot = by_pivot.get(low)
            if slot is None:
                break
            bits ^= self._rows[slot]
            history ^= self._history[slot]
        return bits, history

    def insert(self, index: Hashable, v: _Vector) -> bool:
        """Add ``v`` under ``index``; return whether it was independent."""
        self._check_dim(v)
        residual, history = self._reduce(v.bits)
        if residual == 0:
            return False
        slot = len(self._rows)
        pivot = (residual & -residual).bit_length() - 1
        self._rows.append(residual)
        self._pivots.append(pivot)
        self._history.append(history ^ (1 << slot))
        self._by_pivot[pivot] = slot
        self._indices.append(index)
        self._originals.append(v.bits)
        return True

    def represent(self, w: _Vector) -> frozenset | None:
        """Indices of accepted vectors XOR-ing to ``w``, or None if outside the span."""
        if self.dim is not None and w.length != self.dim:
            raise PreconditionError(
                f"dimension mismatch: basis has {self.dim}, vector has {w.length}"
            )
        residual, history = self._reduce(w.bits)
        if residual:
            return None
        chosen = []
        total = 0
        slot = 0
        while history:
            if history & 1:
                chosen.append(self._indices[slot])
                total ^= self._originals[slot]
            history >>= 1
            slot += 1
        if total != w.bits:
            raise AssertionError("GF(2) representation failed its self-check")
        return frozenset(chosen)

    def contains(self, w: _Vector) -> bool:
        return self.represent(w) is not None
