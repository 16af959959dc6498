"""The Heisenberg group (Z_2 + V) x| V* of an n-point Stone space, and its
semidirect product with a permutation group acting on both V and V*."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .boolean_core import ClopenVector, all_vectors, pairing_w
from .errors import DimensionError, EnumerationLimitError, InputError
from .finite_group import CayleyTable
from .stone_actions import Permutation, PermGroup, act_character, act_clopen

MAX_CENTER_DIM = 4
MAX_TABLE_DIM = 2


@dataclass(frozen=True, order=True)
class HeisenbergElement:
    a: int
    x: ClopenVector
    f: ClopenVector

    def __post_init__(self) -> None:
        if self.a not in (0, 1):
            raise InputError(f"central coordinate must be 0 or 1, got {self.a!r}")
        if self.x.n != self.f.n:
            raise DimensionError(f"x has dimension {self.x.n}, f has {self.f.n}")

    @property
    def n(self) -> int:
        return self.x.n

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        z = ClopenVector.zero(n)
        return cls(0, z, z)

    @classmethod
    def parse(cls, a: int, x: str, f: str) -> "HeisenbergElement":
        return cls(a, ClopenVector.parse(x), ClopenVector.parse(f))

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return h_mul(self, other)

    def is_identity(self) -> bool:
        return self.a == 0 and not self.x.bits and not self.f.bits

    def to_json(self) -> dict:
        return {"a": self.a, "x": str(self.x), "f": str(self.f)}

    def __str__(self) -> str:
        return f"({self.a},{self.x},{self.f})"


def h_mul(u1: HeisenbergElement, u2: HeisenbergElement) -> HeisenbergElement:
    """``(a1, x1, f1)(a2, x2, f2) = (a1 + a2 + f1(x2), x1 + x2, f1 + f2)``."""
    if u1.n != u2.n:
        raise DimensionError(f"dimension mismatch: {u1.n} vs {u2.n}")
    return HeisenbergElement(u1.a ^ u2.a ^ pairing_w(u2.x, u1.f), u1.x ^ u2.x, u1.f ^ u2.f)


def h_inv(u: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(u.a ^ pairing_w(u.x, u.f), u.x, u.f)


def commutator(u: HeisenbergElement, v: HeisenbergElement) -> HeisenbergElement:
    """``u v u^-1 v^-1``."""
    return h_mul(h_mul(h_mul(u, v), h_inv(u)), h_inv(v))


def heisenberg_order(n: int) -> int:
    return 1 << (2 * n + 1)


def elements(n: int) -> Iterator[HeisenbergElement]:
    vecs = list(all_vectors(n))
    for f, x, a in product(vecs, vecs, (0, 1)):
        yield HeisenbergElement(a, x, f)


def cayley_table(n: int) -> CayleyTable:
    if n > MAX_CENTER_DIM:
        raise EnumerationLimitError(f"Heisenberg enumeration limited to n <= {MAX_CENTER_DIM}")
    return CayleyTable.build(elements(n), h_mul)


def center(n: int) -> list[HeisenbergElement]:
    """Elements commuting with everything, found by exhaustive comparison."""
    if not 0 <= n <= MAX_CENTER_DIM:
        raise EnumerationLimitError(f"center enumeration needs 0 <= n <= {MAX_CENTER_DIM}")
    T = cayley_table(n)
    return [T.elements[i] for i in T.center()]


def multiplication_csv(n: int) -> str:
    """Cayley table as CSV; cells are ``(a,x,f)`` strings."""
    if not 0 <= n <= MAX_TABLE_DIM:
        raise EnumerationLimitError(f"multiplication tables are emitted only for n <= {MAX_TABLE_DIM}")
    elems = list(elements(n))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["*"] + [str(e) for e in elems])
    for u in elems:
        writer.writerow([str(u)] + [str(h_mul(u, v)) for v in elems])
    return buf.getvalue()


def pi(g: Permutation, h: HeisenbergElement) -> HeisenbergElement:
    """``(a, x, f) -> (a, g x, g f)``."""
    return HeisenbergElement(h.a, act_clopen(g, h.x), act_character(g, h.f))


@dataclass(frozen=True, order=True)
class SemidirectElement:
    h: HeisenbergElement
    g: Permutation

    def __post_init__(self) -> None:
        if self.g.n != self.h.n:
            raise DimensionError(f"permutation on {self.g.n} points, Heisenberg dimension {self.h.n}")

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return m_mul(self, other)


def m_mul(m1: SemidirectElement, m2: SemidirectElement) -> SemidirectElement:
    """``(h1, g1)(h2, g2) = (h1 . g1(h2), g1 g2)``."""
    if m1.h.n != m2.h.n:
        raise DimensionError(f"dimension mismatch: {m1.h.n} vs {m2.h.n}")
    return SemidirectElement(h_mul(m1.h, pi(m1.g, m2.h)), m1.g * m2.g)


def semidirect_elements(n: int, G: PermGroup) -> list[SemidirectElement]:
    if G.n != n:
        raise DimensionError(f"group on {G.n} points, dimension {n}")
    hs = list(elements(n))
    return [SemidirectElement(h, g) for g in G for h in hs]


def semidirect_order(n: int, G: PermGroup) -> int:
    if G.n != n:
        raise DimensionError(f"group on {G.n} points, dimension {n}")
    return heisenberg_order(n) * len(G)


def retraction(m: SemidirectElement) -> Permutation:
    return m.g


def section(g: Permutation) -> SemidirectElement:
    return SemidirectElement(HeisenbergElement.identity(g.n), g)


MAX_RETRACT_ORDER = 4096


def retraction_check(n: int, G: PermGroup, table: Optional[CayleyTable] = None) -> dict[str, bool]:
    """Exhaustively verify that ``(h, g) -> g`` retracts the semidirect product
    onto ``G`` with homomorphic section ``g -> (1, g)``."""
    if semidirect_order(n, G) > MAX_RETRACT_ORDER:
        raise EnumerationLimitError(f"semidirect product larger than {MAX_RETRACT_ORDER}")
    M = table or CayleyTable.build(semidirect_elements(n, G), m_mul)
    elems = M.elements
    r_hom = all(
        retraction(elems[M.table[i, j]]) == retraction(a) * retraction(b)
        for i, a in enumerate(elems)
        for j, b in enumerate(elems)
    )
    s_hom = all(section(g1) * section(g2) == section(g1 * g2) for g1 in G for g2 in G)
    return {
        "retraction_homomorphism": r_hom,
        "section_homomorphism": s_hom,
        "retraction_of_section_is_identity": all(retraction(section(g)) == g for g in G),
    }
