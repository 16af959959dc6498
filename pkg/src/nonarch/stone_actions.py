"""Finite Stone duality and permutation actions on clopen sets and characters.

On a finite discrete space every subset is clopen, Homeo(X) is the symmetric
group, and a finite Boolean algebra is recovered from its atoms.  This module
also carries the finite group constructions that witness the
non-archimedean property: setwise stabilizers of partitions, action kernels,
the Z_2-wreath retraction, coordinate embeddings into Aut(Z_2^n) and the
orbit ultra-semimetric on an isometry group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import TYPE_CHECKING, Callable, Iterable, Optional, Sequence

from .boolean_core import ClopenVector, all_vectors
from .errors import DimensionError, EnumerationLimitError, InputError
from .finite_group import CayleyTable

if TYPE_CHECKING:
    from .ultrametric import RationalUltraSpace


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0..n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise InputError(f"not a permutation: {list(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def cycle(cls, n: int, *points: int) -> "Permutation":
        images = list(range(n))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, right factor first: ``(g * h)(i) == g(h(i))``."""
        if self.n != other.n:
            raise DimensionError(f"permutations on {self.n} and {other.n} points")
        img = self.images
        return Permutation(tuple(img[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self) -> str:
        return str(list(self.images))


def _compose_raw(g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g[j] for j in h)


class PermGroup:
    """A finite permutation group held as an explicit, sorted element list."""

    def __init__(self, elements: Iterable[Permutation], check: bool = True):
        elems = sorted(set(elements))
        if not elems:
            raise InputError("a group needs at least the identity")
        degrees = {g.n for g in elems}
        if len(degrees) != 1:
            raise DimensionError(f"mixed degrees {sorted(degrees)}")
        self.n = degrees.pop()
        self.elements: tuple[Permutation, ...] = tuple(elems)
        self._set = frozenset(elems)
        if check:
            self._validate()

    def _validate(self) -> None:
        if Permutation.identity(self.n) not in self._set:
            raise InputError("group does not contain the identity")
        raw = {g.images for g in self.elements}
        for g in raw:
            for h in raw:
                if _compose_raw(g, h) not in raw:
                    raise InputError(f"not closed: {list(g)} * {list(h)}")
        # closure under products already implies closure under inverses for a finite set

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n > 8:
            raise EnumerationLimitError(f"S_{n} is too large to enumerate")
        return cls((Permutation(p) for p in permutations(range(n))), check=False)

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls([Permutation.identity(n)], check=False)

    @classmethod
    def generated_by(cls, generators: Iterable[Permutation], n: Optional[int] = None) -> "PermGroup":
        gens = list(generators)
        if n is None:
            if not gens:
                raise InputError("degree needed for an empty generating set")
            n = gens[0].n
        seen = {Permutation.identity(n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = s * g
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return cls(seen, check=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PermGroup) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"PermGroup(n={self.n}, order={len(self)})"

    def intersection(self, other: "PermGroup") -> "PermGroup":
        return PermGroup(self._set & other._set, check=False)

    def is_subgroup_set(self, subset: Iterable[Permutation]) -> bool:
        """True when ``subset`` is a subgroup of this group."""
        members = set(subset)
        if not members or not members <= self._set:
            return False
        raw = {g.images for g in members}
        return all(_compose_raw(g, h) in raw for g in raw for h in raw)

    def cayley(self) -> CayleyTable:
        return CayleyTable.build(self.elements, Permutation.__mul__)


@dataclass(frozen=True)
class ClopenPartition:
    blocks: tuple[ClopenVector, ...]

    def __post_init__(self) -> None:
        blocks = tuple(sorted(self.blocks, key=lambda b: (min(b.points()) if b.bits else -1)))
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            return
        n = blocks[0].n
        seen = 0
        for b in blocks:
            if b.n != n:
                raise DimensionError("blocks of different dimension")
            if not b.bits:
                raise InputError("empty block in partition")
            if seen & b.bits:
                raise InputError("blocks overlap")
            seen |= b.bits
        if seen != (1 << n) - 1:
            raise InputError("blocks do not cover the point set")

    @property
    def n(self) -> int:
        return self.blocks[0].n if self.blocks else 0

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "ClopenPartition":
        """Partition whose blocks are the fibres of ``labels`` (point i -> labels[i])."""
        n = len(labels)
        groups: dict[int, int] = {}
        for i, lab in enumerate(labels):
            groups[lab] = groups.get(lab, 0) | 1 << i
        return cls(tuple(ClopenVector(b, n) for b in groups.values()))

    def join(self, other: "ClopenPartition") -> "ClopenPartition":
        """Common refinement: nonempty pairwise intersections of blocks."""
        if self.n != other.n:
            raise DimensionError("partitions of different point sets")
        return ClopenPartition(
            tuple(a & b for a in self.blocks for b in other.blocks if (a & b).bits)
        )

    def block_of(self, i: int) -> ClopenVector:
        return next(b for b in self.blocks if i in b)


class BooleanSubalgebra:
    """A family of subsets containing the empty and full set, closed under
    meet, join and complement.  Closure is checked on construction."""

    def __init__(self, members: Iterable[ClopenVector], n: Optional[int] = None):
        mem = set(members)
        if n is None:
            if not mem:
                raise InputError("dimension needed for an empty family")
            n = next(iter(mem)).n
        if any(m.n != n for m in mem):
            raise DimensionError("members of different dimension")
        self.n = n
        self.members = frozenset(mem)
        zero, full = ClopenVector.zero(n), ClopenVector.full(n)
        if zero not in self.members or full not in self.members:
            raise InputError("a Boolean subalgebra must contain the empty and the full set")
        for a in self.members:
            if ~a not in self.members:
                raise InputError(f"not closed under complement: {a}")
            for b in self.members:
                if a & b not in self.members or a | b not in self.members:
                    raise InputError(f"not closed under meet/join: {a}, {b}")

    @classmethod
    def power_set(cls, n: int) -> "BooleanSubalgebra":
        return cls(all_vectors(n), n)

    @classmethod
    def generated_by(cls, generators: Iterable[ClopenVector], n: int) -> "BooleanSubalgebra":
        """Smallest subalgebra containing ``generators``, built from the atoms
        of the partition the generators induce."""
        gens = list(generators)
        if any(g.n != n for g in gens):
            raise DimensionError("generators of different dimension")
        signature: dict[tuple[int, ...], int] = {}
        for i in range(n):
            key = tuple(g.bits >> i & 1 for g in gens)
            signature[key] = signature.get(key, 0) | 1 << i
        cells = list(signature.values())
        members = set()
        for choice in range(1 << len(cells)):
            bits = 0
            for k, c in enumerate(cells):
                if choice >> k & 1:
                    bits |= c
            members.add(ClopenVector(bits, n))
        return cls(members, n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BooleanSubalgebra) and (self.n, self.members) == (other.n, other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __len__(self) -> int:
        return len(self.members)


def atoms(algebra: BooleanSubalgebra) -> list[ClopenVector]:
    """Minimal nonzero members of a finite Boolean algebra, i.e. its dual points."""
    nonzero = [m for m in algebra.members if m.bits]
    found = [a for a in nonzero if not any(b != a and b.issubset(a) for b in nonzero)]
    return sorted(found, key=lambda a: min(a.points()))


def act_clopen(g: Permutation, A: ClopenVector) -> ClopenVector:
    """The image set ``g(A)``."""
    if g.n != A.n:
        raise DimensionError(f"permutation on {g.n} points, set in dimension {A.n}")
    bits = 0
    for i in range(A.n):
        if A.bits >> i & 1:
            bits |= 1 << g.images[i]
    return ClopenVector(bits, A.n)


def act_character(g: Permutation, f: ClopenVector) -> ClopenVector:
    """The character ``A -> f(g^-1 A)``.  With characters encoded as bit
    vectors this is the same bit permutation as :func:`act_clopen`."""
    return act_clopen(g, f)


def stabilizer_MP(G: PermGroup, P: ClopenPartition) -> PermGroup:
    """Elements of ``G`` mapping every block of ``P`` onto itself."""
    if P.n != G.n:
        raise DimensionError(f"group on {G.n} points, partition of {P.n}")
    return PermGroup((g for g in G if all(act_clopen(g, A) == A for A in P.blocks)), check=False)


PointAction = Callable[[Permutation, int], int]


def action_kernel(G: PermGroup, action: Optional[PointAction] = None, points: Optional[Iterable[int]] = None) -> PermGroup:
    """Elements acting trivially on ``points``.  Defaults to the natural action.

    The action is algebraically exact exactly when the kernel is trivial.
    """
    act = action or (lambda g, x: g(x))
    pts = list(range(G.n) if points is None else points)
    return PermGroup((g for g in G if all(act(g, x) == x for x in pts)), check=False)


def is_exact(G: PermGroup, action: Optional[PointAction] = None, points: Optional[Iterable[int]] = None) -> bool:
    return len(action_kernel(G, action, points)) == 1


@dataclass
class WreathRetract:
    """``Z_2^H`` semidirect ``H`` for a finite group ``H`` given by its table.

    An element is ``(x, k)`` with ``x`` a bitmask over the elements of ``H``;
    ``(x, k)(x', k') = (x ^ shift_k(x'), k k')`` where ``shift_k(x)_h = x_{hk}``.
    """

    H: CayleyTable
    identity: int
    _shift: list[list[int]] = field(repr=False, default_factory=list)

    def __post_init__(self) -> None:
        size = len(self.H)
        t = self.H.table
        # _shift[k][x] = sigma(k)(x) as a bitmask
        self._shift = []
        for k in range(size):
            row = []
            for x in range(1 << size):
                y = 0
                for h in range(size):
                    if x >> int(t[h, k]) & 1:
                        y |= 1 << h
                row.append(y)
            self._shift.append(row)

    def sigma(self, k: int, x: int) -> int:
        return self._shift[k][x]

    def elements(self) -> list[tuple[int, int]]:
        return [(x, k) for k in range(len(self.H)) for x in range(1 << len(self.H))]

    def mul(self, m1: tuple[int, int], m2: tuple[int, int]) -> tuple[int, int]:
        (x1, k1), (x2, k2) = m1, m2
        return (x1 ^ self._shift[k1][x2], int(self.H.table[k1, k2]))

    def retraction(self, m: tuple[int, int]) -> int:
        return m[1]

    def section(self, k: int) -> tuple[int, int]:
        return (0, k)

    def order(self) -> int:
        return (1 << len(self.H)) * len(self.H)

    def verify(self) -> dict[str, bool]:
        M = CayleyTable.build(self.elements(), self.mul)
        t = self.H.table
        r_hom = all(
            self.retraction(M.elements[M.table[i, j]]) == t[self.retraction(a), self.retraction(b)]
            for i, a in enumerate(M.elements)
            for j, b in enumerate(M.elements)
        )
        ks = range(len(self.H))
        s_hom = all(self.mul(self.section(k), self.section(l)) == self.section(int(t[k, l])) for k in ks for l in ks)
        return {
            "group": M.is_group(),
            "sigma_homomorphism": all(
                self.sigma(k, self.sigma(l, x)) == self.sigma(int(t[k, l]), x)
                for k in ks for l in ks for x in range(1 << len(self.H))
            ),
            "retraction_homomorphism": r_hom,
            "section_homomorphism": s_hom,
            "retraction_of_section_is_identity": all(self.retraction(self.section(k)) == k for k in ks),
        }


MAX_WREATH_BASE = 8


def wreath_retract(table: Sequence[Sequence[int]]) -> WreathRetract:
    """Build the wreath product retracting onto the group with multiplication ``table``."""
    H = CayleyTable.from_table(table)
    if len(H) > MAX_WREATH_BASE:
        raise EnumerationLimitError(f"|H| = {len(H)} exceeds {MAX_WREATH_BASE}")
    if len(H) == 0:
        raise InputError("empty multiplication table")
    e = H.identity()
    if e is None or not H.is_associative() or H.inverses() is None:
        raise InputError("multiplication table is not a group")
    return WreathRetract(H, e)


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def coordinate_embedding(g: Permutation, n: Optional[int] = None) -> tuple[int, ...]:
    """The automorphism of Z_2^n permuting coordinates by ``g``, as the tuple
    of images of ``0 .. 2^n - 1``."""
    n = g.n if n is None else n
    if n != g.n:
        raise DimensionError(f"permutation on {g.n} points, dimension {n}")
    if n > 16:
        raise EnumerationLimitError("coordinate embedding tabulated only for n <= 16")
    return tuple(act_clopen(g, v).bits for v in all_vectors(n))


def is_automorphism(images: Sequence[int], n: int) -> bool:
    size = 1 << n
    if sorted(images) != list(range(size)):
        return False
    return all(images[u ^ v] == images[u] ^ images[v] for u in range(size) for v in range(size))


@dataclass
class InvariantSemimetric:
    """The orbit semimetric ``rho(s, t) = d(s z, t z)`` on a group of isometries."""

    group: PermGroup
    z: int
    space: "RationalUltraSpace"

    def rho(self, s: Permutation, t: Permutation) -> Fraction:
        return self.space.d(s(self.z), t(self.z))

    def as_space(self) -> "RationalUltraSpace":
        from .ultrametric import RationalUltraSpace

        elems = self.group.elements
        return RationalUltraSpace(
            [str(g) for g in elems],
            [[self.rho(s, t) for t in elems] for s in elems],
        )

    def sublevel(self, radius: Fraction) -> list[Permutation]:
        e = Permutation.identity(self.group.n)
        return [g for g in self.group if self.rho(g, e) < radius]

    def is_left_invariant(self) -> bool:
        elems = self.group.elements
        return all(
            self.rho(u * s, u * t) == self.rho(s, t) for u in elems for s in elems for t in elems
        )


def invariant_ultrasemimetric(G: PermGroup, z: int, space: "RationalUltraSpace") -> InvariantSemimetric:
    if G.n != len(space):
        raise DimensionError(f"group on {G.n} points, space with {len(space)}")
    if not 0 <= z < G.n:
        raise InputError(f"point index {z} out of range")
    for g in G:
        if not space.is_isometry(g):
            raise InputError(f"{g} is not an isometry")
    return InvariantSemimetric(G, z, space)
