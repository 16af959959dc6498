"""Ultra-seminorms on the even part of the free Boolean group over a pointed
ultra-metric space.

A chain is a finite set of points under symmetric difference.  The norm of an
even chain is the least, over all perfect pairings of its support, of the
longest pair: a bottleneck perfect matching value.  Two independent routes
compute it: exhaustive pairing enumeration and threshold search with a
bitmask perfect-matching test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import DimensionError, EnumerationLimitError, InputError, OddChainError
from .stone_actions import Permutation
from .ultrametric import RationalUltraSpace, max_combine, verify_ultrametric

MAX_BRUTE_SUPPORT = 12
MAX_BOTTLENECK_SUPPORT = 26

Pair = tuple[int, int]


@dataclass(frozen=True, order=True)
class Chain:
    """Element of the free Boolean group: a bitmask of point indices."""

    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise InputError("negative chain mask")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Chain":
        """Sum of the given points; repeated points cancel."""
        mask = 0
        for i in indices:
            mask ^= 1 << i
        return cls(mask)

    @classmethod
    def from_labels(cls, labels: Iterable[object], space: RationalUltraSpace) -> "Chain":
        return cls.of(space.index(lab) for lab in labels)

    def __xor__(self, other: "Chain") -> "Chain":
        return Chain(self.mask ^ other.mask)

    __add__ = __xor__
    __sub__ = __xor__

    def __neg__(self) -> "Chain":
        return self

    def __bool__(self) -> bool:
        return bool(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def support(self) -> list[int]:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    def is_even(self) -> bool:
        return len(self) % 2 == 0

    def labels(self, space: RationalUltraSpace) -> list[str]:
        return [space.points[i] for i in self.support()]


ZERO = Chain(0)


def sgn(u: Chain) -> int:
    return len(u) & 1


def all_chains(n: int) -> Iterator[Chain]:
    for m in range(1 << n):
        yield Chain(m)


def even_chains(n: int, max_support: Optional[int] = None) -> Iterator[Chain]:
    for m in range(1 << n):
        k = m.bit_count()
        if k % 2 == 0 and (max_support is None or k <= max_support):
            yield Chain(m)


@dataclass(frozen=True)
class Configuration:
    """Finite list of unordered point pairs; represents the sum of all entries."""

    pairs: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        norm = []
        for p in self.pairs:
            if len(p) != 2:
                raise InputError(f"configuration entries must be pairs, got {p!r}")
            a, b = p
            norm.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "pairs", tuple(norm))

    def __len__(self) -> int:
        return len(self.pairs)

    def chain(self) -> Chain:
        mask = 0
        for a, b in self.pairs:
            mask ^= (1 << a) ^ (1 << b)
        return Chain(mask)

    def entries(self) -> list[int]:
        return [x for p in self.pairs for x in p]

    def is_normal(self) -> bool:
        ent = self.entries()
        return len(set(ent)) == len(ent)

    def canonical(self) -> "Configuration":
        return Configuration(tuple(sorted(self.pairs)))

    def to_labels(self, space: RationalUltraSpace) -> list[list[str]]:
        return [[space.points[a], space.points[b]] for a, b in self.pairs]


def phi_length(omega: Configuration, space: RationalUltraSpace) -> Fraction:
    """Longest pair distance; 0 for the empty configuration."""
    return max((space.d(a, b) for a, b in omega.pairs), default=Fraction(0))


def reduce(omega: Configuration) -> Configuration:
    """Normalize by deleting trivial pairs ``{t, t}`` and merging pairs that
    share an entry, ``{x, y}, {y, z} -> {x, z}``, until all entries differ.

    Each step keeps the represented chain and, by the strong triangle
    inequality, never lengthens the configuration under any ultra-semimetric.
    """
    pairs = [p for p in omega.pairs if p[0] != p[1]]
    while True:
        hit = _first_shared(pairs)
        if hit is None:
            return Configuration(tuple(pairs))
        i, k, shared = hit
        (a, b), (c, d) = pairs[i], pairs[k]
        x = b if a == shared else a
        z = d if c == shared else c
        del pairs[k]
        if x == z:
            del pairs[i]
        else:
            pairs[i] = (x, z) if x <= z else (z, x)


def _first_shared(pairs: list[Pair]) -> Optional[tuple[int, int, int]]:
    seen: dict[int, int] = {}
    for k, (a, b) in enumerate(pairs):
        for y in (a, b):
            if y in seen:
                return seen[y], k, y
        seen.setdefault(a, k)
        seen.setdefault(b, k)
    return None


def _check_even(u: Chain, space: RationalUltraSpace) -> list[int]:
    if u.mask >> len(space):
        raise InputError("chain mentions points outside the space")
    if not u.is_even():
        raise OddChainError(f"chain of odd size {len(u)} is not in the even subgroup")
    return u.support()


def perfect_pairings(points: Sequence[int]) -> Iterator[list[Pair]]:
    """All perfect pairings, lowest point paired first, partners ascending."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in perfect_pairings(remaining):
            yield [(first, partner)] + tail


@dataclass(frozen=True)
class NormResult:
    value: Fraction
    witness: Configuration


def norm_bruteforce_witness(u: Chain, space: RationalUltraSpace) -> NormResult:
    """Minimum over every perfect pairing of the support of the longest pair,
    with the first optimal pairing in enumeration order."""
    support = _check_even(u, space)
    if len(support) > MAX_BRUTE_SUPPORT:
        raise EnumerationLimitError(f"brute force limited to supports of size {MAX_BRUTE_SUPPORT}")
    values, rank = space.ranked()
    best, best_pairs = None, []
    for pairing in perfect_pairings(support):
        worst = max((rank[a][b] for a, b in pairing), default=0)
        if best is None or worst < best:
            best, best_pairs = worst, pairing
    return NormResult(values[best or 0], Configuration(tuple(best_pairs)))


def norm_bruteforce(u: Chain, space: RationalUltraSpace) -> Fraction:
    return norm_bruteforce_witness(u, space).value


class _Matcher:
    """Perfect matching on a small vertex set under a rank threshold, by
    memoized search over the bitmask of unmatched vertices (the lowest
    unmatched vertex is always matched next)."""

    def __init__(self, support: list[int], rank: list[list[int]], threshold: int):
        k = len(support)
        self.adj = [
            [j for j in range(k) if j != i and rank[support[i]][support[j]] <= threshold] for i in range(k)
        ]
        self.dead: set[int] = set()

    def solve(self, mask: int) -> Optional[list[Pair]]:
        if not mask:
            return []
        if mask in self.dead:
            return None
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        for j in self.adj[i]:
            if rest >> j & 1:
                tail = self.solve(rest & ~(1 << j))
                if tail is not None:
                    return [(i, j)] + tail
        self.dead.add(mask)
        return None


def norm_bottleneck(u: Chain, space: RationalUltraSpace) -> NormResult:
    """Smallest threshold admitting a perfect pairing of the support, found by
    binary search over the distinct pair distances.

    The witness is the lexicographically least optimal pairing: the search
    pairs the lowest free point with the smallest feasible partner first.
    """
    support = _check_even(u, space)
    k = len(support)
    if k > MAX_BOTTLENECK_SUPPORT:
        raise EnumerationLimitError(f"bottleneck search limited to supports of size {MAX_BOTTLENECK_SUPPORT}")
    values, rank = space.ranked()
    if k == 0:
        return NormResult(Fraction(0), Configuration())
    candidates = sorted({rank[support[i]][support[j]] for i, j in combinations(range(k), 2)})
    full = (1 << k) - 1
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _Matcher(support, rank, candidates[mid]).solve(full) is not None:
            hi = mid
        else:
            lo = mid + 1
    pairs = _Matcher(support, rank, candidates[lo]).solve(full)
    assert pairs is not None
    witness = Configuration(tuple((support[i], support[j]) for i, j in pairs))
    return NormResult(values[candidates[lo]], witness)


def norm(u: Chain, space: RationalUltraSpace) -> Fraction:
    return norm_bottleneck(u, space).value


def _basepoint(space: RationalUltraSpace) -> int:
    if space.basepoint is None:
        raise InputError("space has no basepoint")
    return space.basepoint


def embed_alpha(x: int, space: RationalUltraSpace) -> Chain:
    """``x - theta``; the empty chain for the basepoint itself."""
    theta = _basepoint(space)
    if not 0 <= x < len(space):
        raise InputError(f"point index {x} out of range")
    return Chain.of([x, theta])


def in_image(u: Chain, space: RationalUltraSpace) -> bool:
    theta = _basepoint(space)
    return not u or (len(u) == 2 and theta in u.support())


def distance_to_image(u: Chain, space: RationalUltraSpace, norm_fn: Callable[[Chain, RationalUltraSpace], Fraction] = norm) -> Fraction:
    """``min_x ||u - alpha(x)||``."""
    _check_even(u, space)
    return min(norm_fn(u ^ embed_alpha(x, space), space) for x in range(len(space)))


def closedness_bound(u: Chain, space: RationalUltraSpace) -> Optional[Fraction]:
    """The separation radius ``min(eps1, eps2)``: eps1 is the least positive
    distance inside the support, eps2 the least positive distance from a
    non-basepoint support point to the basepoint.  None if both sets of
    candidates are empty."""
    theta = _basepoint(space)
    support = u.support()
    inner = [space.d(a, b) for a, b in combinations(support, 2) if space.d(a, b) > 0]
    to_theta = [space.d(a, theta) for a in support if a != theta and space.d(a, theta) > 0]
    candidates = [min(c) for c in (inner, to_theta) if c]
    return min(candidates) if candidates else None


def act_on_chain(g: Permutation, u: Chain, space: RationalUltraSpace) -> Chain:
    """Image of ``u`` under a permutation fixing the basepoint."""
    if g.n != len(space):
        raise DimensionError(f"permutation on {g.n} points, space with {len(space)}")
    theta = _basepoint(space)
    if g(theta) != theta:
        raise InputError(f"{g} moves the basepoint")
    return Chain.of(g(i) for i in u.support())


MAX_FAMILY_GENERATORS = 10


class UltraSeminormFamily:
    """Ultra-semimetrics on one point set, closed under finite maxima."""

    def __init__(self, generators: Sequence[RationalUltraSpace]):
        if not generators:
            raise InputError("empty family")
        if len(generators) > MAX_FAMILY_GENERATORS:
            raise EnumerationLimitError(f"at most {MAX_FAMILY_GENERATORS} generators")
        points = generators[0].points
        for s in generators:
            if s.points != points:
                raise DimensionError("family members over different point sets")
            if not verify_ultrametric(s):
                raise InputError("family member violates the strong triangle inequality")
        members: dict[tuple, RationalUltraSpace] = {}
        for size in range(1, len(generators) + 1):
            for combo in combinations(generators, size):
                m = max_combine(list(combo))
                members.setdefault(m.dist, m)
        self.members: list[RationalUltraSpace] = list(members.values())
        self.points = points

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def separating_member(self, indices: Iterable[int]) -> Optional[RationalUltraSpace]:
        """A member positive on all distinct pairs of ``indices``, if any."""
        idx = list(indices)
        for m in sorted(self.members, key=lambda s: -sum(v > 0 for row in s.dist for v in row)):
            if all(m.d(a, b) > 0 for a, b in combinations(idx, 2)):
                return m
        return None


def seminorm_vector(u: Chain, family: UltraSeminormFamily) -> list[Fraction]:
    return [norm(u, d) for d in family]
