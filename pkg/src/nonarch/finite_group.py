"""Exhaustive checks on explicitly enumerated finite groups.

Elements are indexed once; the Cayley table is an ``int`` numpy array so the
cubic associativity check runs as row-wise fancy indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterable, Optional, Sequence, TypeVar

import numpy as np

from .errors import InputError

T = TypeVar("T", bound=Hashable)


@dataclass
class CayleyTable(Generic[T]):
    elements: list[T]
    table: np.ndarray
    index: dict[T, int] = field(repr=False)

    @classmethod
    def build(cls, elements: Iterable[T], mul: Callable[[T, T], T]) -> "CayleyTable[T]":
        elems = list(elements)
        index = {e: i for i, e in enumerate(elems)}
        if len(index) != len(elems):
            raise InputError("duplicate group elements")
        size = len(elems)
        table = np.empty((size, size), dtype=np.int32)
        for i, a in enumerate(elems):
            row = table[i]
            for j, b in enumerate(elems):
                prod = mul(a, b)
                try:
                    row[j] = index[prod]
                except KeyError:
                    raise InputError(f"product {prod!r} escapes the element set") from None
        return cls(elems, table, index)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> "CayleyTable[int]":
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise InputError("multiplication table must be square")
        if not all(isinstance(v, int) and not isinstance(v, bool) for r in rows for v in r):
            raise InputError("multiplication table entries must be integers")
        table = np.asarray(rows, dtype=np.int32).reshape(size, size)
        if size and (table.min() < 0 or table.max() >= size):
            raise InputError("multiplication table entries out of range")
        return cls(list(range(size)), table, {i: i for i in range(size)})

    def __len__(self) -> int:
        return len(self.elements)

    def identity(self) -> Optional[int]:
        n = len(self)
        ar = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], ar) and np.array_equal(self.table[:, e], ar):
                return e
        return None

    def is_associative(self) -> bool:
        t = self.table
        for a in range(len(self)):
            # (a*b)*c for all b,c  vs  a*(b*c)
            if not np.array_equal(t[t[a]], t[a][t]):
                return False
        return True

    def inverses(self) -> Optional[np.ndarray]:
        e = self.identity()
        if e is None:
            return None
        inv = np.full(len(self), -1, dtype=np.int64)
        for a in range(len(self)):
            hits = np.nonzero(self.table[a] == e)[0]
            if len(hits) != 1 or self.table[hits[0], a] != e:
                return None
            inv[a] = hits[0]
        return inv

    def is_group(self) -> bool:
        return len(self) > 0 and self.is_associative() and self.inverses() is not None

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(len(self)) if np.array_equal(t[a], t[:, a])]

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        members = sorted(set(subset))
        if not members:
            return False
        mask = np.zeros(len(self), dtype=bool)
        mask[members] = True
        # finite nonempty subset closed under products is a subgroup
        return bool(mask[self.table[np.ix_(members, members)]].all())


def is_homomorphism(
    source: CayleyTable, target_mul: Callable, phi: Callable, target_eq: Callable = lambda a, b: a == b
) -> bool:
    """Check ``phi(ab) == phi(a) phi(b)`` over every pair of ``source``."""
    images = [phi(a) for a in source.elements]
    for i in range(len(source)):
        for j in range(len(source)):
            if not target_eq(images[source.table[i, j]], target_mul(images[i], images[j])):
                return False
    return True
