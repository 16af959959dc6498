"""Finite Boolean groups Z_2^n, their characters and the evaluation pairing.

A :class:`ClopenVector` is an ``n``-bit word.  It is read three ways: as an
element of Z_2^n, as a subset of an ``n``-point Stone space (point ``i`` is
bit ``i``), and as a character ``x -> parity(x & f)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from .errors import DimensionError, EnumerationLimitError, InputError

MAX_DIM = 63
MAX_ENUM_DIM = 20
MAX_SEPARATION_DIM = 12

Pairing = Callable[["ClopenVector", "ClopenVector"], int]


@dataclass(frozen=True, order=True)
class ClopenVector:
    bits: int
    n: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_DIM:
            raise InputError(f"dimension {self.n} outside 0..{MAX_DIM}")
        if self.bits < 0 or self.bits >> self.n:
            raise InputError(f"bits {self.bits:#x} do not fit in dimension {self.n}")

    @classmethod
    def zero(cls, n: int) -> "ClopenVector":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "ClopenVector":
        return cls((1 << n) - 1, n)

    @classmethod
    def from_points(cls, points: Iterable[int], n: int) -> "ClopenVector":
        bits = 0
        for i in points:
            if not 0 <= i < n:
                raise InputError(f"point {i} outside 0..{n - 1}")
            bits |= 1 << i
        return cls(bits, n)

    @classmethod
    def parse(cls, text: str) -> "ClopenVector":
        """Inverse of ``str()``: a binary numeral whose rightmost digit is point 0."""
        if text and set(text) - {"0", "1"}:
            raise InputError(f"not a bit string: {text!r}")
        return cls(int(text, 2) if text else 0, len(text))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b") if self.n else ""

    def points(self) -> list[int]:
        return [i for i in range(self.n) if self.bits >> i & 1]

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and bool(self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def _check(self, other: "ClopenVector") -> None:
        if self.n != other.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "ClopenVector") -> "ClopenVector":
        self._check(other)
        return ClopenVector(self.bits ^ other.bits, self.n)

    __add__ = __xor__

    def __and__(self, other: "ClopenVector") -> "ClopenVector":
        self._check(other)
        return ClopenVector(self.bits & other.bits, self.n)

    def __or__(self, other: "ClopenVector") -> "ClopenVector":
        self._check(other)
        return ClopenVector(self.bits | other.bits, self.n)

    def __invert__(self) -> "ClopenVector":
        return ClopenVector(~self.bits & ((1 << self.n) - 1), self.n)

    def issubset(self, other: "ClopenVector") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0


def _parity(v: int) -> int:
    return v.bit_count() & 1


def xor_add(u: ClopenVector, v: ClopenVector) -> ClopenVector:
    return u ^ v


def pairing_w(x: ClopenVector, f: ClopenVector) -> int:
    """Evaluate the character ``f`` at ``x``: the parity of their common bits."""
    x._check(f)
    return _parity(x.bits & f.bits)


def all_vectors(n: int) -> Iterator[ClopenVector]:
    for bits in range(1 << n):
        yield ClopenVector(bits, n)


def enumerate_characters(n: int) -> list[ClopenVector]:
    """Every character of Z_2^n, as bit vectors in increasing order."""
    if not 0 <= n <= MAX_ENUM_DIM:
        raise EnumerationLimitError(f"character enumeration needs 0 <= n <= {MAX_ENUM_DIM}, got {n}")
    return list(all_vectors(n))


def delta(i: int, n: int) -> ClopenVector:
    """The point-evaluation character of point ``i``: the unit vector e_i."""
    if not 0 <= i < n:
        raise InputError(f"point index {i} outside 0..{n - 1}")
    return ClopenVector(1 << i, n)


@dataclass(frozen=True)
class SeparationResult:
    separated: bool
    # a nonzero (x0, f0) with no witnessing (x, f); None when separated
    counterexample: Optional[tuple[ClopenVector, ClopenVector]] = None

    def __bool__(self) -> bool:
        return self.separated


def is_separated(n: int, pairing: Optional[Pairing] = None) -> SeparationResult:
    """Check that every pair of nonzero ``(x0, f0)`` is witnessed by some ``(x, f)``
    with ``w(x0, f) != 0`` and ``w(x, f0) != 0``.

    The two conditions are independent, so it suffices that each nonzero x0 is
    detected by some character and each nonzero f0 detects some vector.
    """
    if not 0 <= n <= MAX_SEPARATION_DIM:
        raise EnumerationLimitError(f"separation check needs 0 <= n <= {MAX_SEPARATION_DIM}, got {n}")
    w = pairing or pairing_w
    vectors = list(all_vectors(n))
    nonzero = vectors[1:]
    undetected_x = next((x0 for x0 in nonzero if not any(w(x0, f) for f in vectors)), None)
    blind_f = next((f0 for f0 in nonzero if not any(w(x, f0) for x in vectors)), None)
    if undetected_x is None and blind_f is None:
        return SeparationResult(True)
    x0 = undetected_x if undetected_x is not None else nonzero[0]
    f0 = blind_f if blind_f is not None else nonzero[0]
    return SeparationResult(False, (x0, f0))


def is_homomorphism(values: dict[ClopenVector, int], n: int) -> bool:
    """Brute-force additivity test for a map Z_2^n -> Z_2 given by its value table."""
    vectors = list(all_vectors(n))
    return all(values[u ^ v] == (values[u] ^ values[v]) for u, v in product(vectors, repeat=2))
