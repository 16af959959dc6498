"""Finite ultra-(semi)metric spaces with exact rational distances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .boolean_core import ClopenVector
from .errors import DimensionError, EnumerationLimitError, InputError
from .stone_actions import ClopenPartition, Permutation, PermGroup

Rational = Union[int, str, Fraction]

BASEPOINT_LABEL = "theta"
MAX_ISOMETRY_POINTS = 8


def to_fraction(value: Rational) -> Fraction:
    """Read an integer or a ``"p/q"`` string in lowest terms."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {value!r}") from None
        if "/" in text and format_fraction(q) != text.lstrip("+"):
            raise InputError(f"rational {value!r} not in lowest terms")
        if "." in text or "e" in text.lower():
            raise InputError(f"decimal notation not allowed: {value!r}")
        return q
    raise InputError(f"not a rational: {value!r}")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fraction_to_json(q: Fraction) -> Union[int, str]:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RationalUltraSpace:
    """Finitely many labelled points with a symmetric, zero-diagonal,
    nonnegative rational distance matrix.  Optionally pointed.

    Construction only checks the matrix shape; the strong triangle
    inequality is checked by :func:`verify_ultrametric`.
    """

    def __init__(
        self,
        points: Sequence[object],
        dist: Sequence[Sequence[Rational]],
        basepoint: Optional[object] = None,
    ):
        self.points: tuple[str, ...] = tuple(str(p) for p in points)
        n = len(self.points)
        if len(set(self.points)) != n:
            raise InputError("duplicate point labels")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise InputError(f"distance matrix must be {n}x{n}")
        self.dist: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(to_fraction(v) for v in row) for row in dist
        )
        for i in range(n):
            if self.dist[i][i] != 0:
                raise InputError(f"nonzero diagonal at {self.points[i]}")
            for j in range(i + 1, n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise InputError(f"asymmetric distance between {self.points[i]} and {self.points[j]}")
                if self.dist[i][j] < 0:
                    raise InputError(f"negative distance between {self.points[i]} and {self.points[j]}")
        self._index = {p: i for i, p in enumerate(self.points)}
        self.basepoint: Optional[int] = None if basepoint is None else self.index(basepoint)
        self._ranks: Optional[tuple[list[Fraction], list[list[int]]]] = None

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        bp = "" if self.basepoint is None else f", basepoint={self.points[self.basepoint]!r}"
        return f"RationalUltraSpace({list(self.points)}{bp})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalUltraSpace)
            and (self.points, self.dist, self.basepoint) == (other.points, other.dist, other.basepoint)
        )

    def index(self, label: object) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputError(f"unknown point {label!r}") from None

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @property
    def is_metric(self) -> bool:
        n = len(self)
        return all(self.dist[i][j] > 0 for i in range(n) for j in range(i + 1, n))

    def diameter(self) -> Fraction:
        return max((v for row in self.dist for v in row), default=Fraction(0))

    def distance_values(self) -> list[Fraction]:
        """Sorted distinct off-diagonal distances (with 0 always present)."""
        return self.ranked()[0]

    def ranked(self) -> tuple[list[Fraction], list[list[int]]]:
        """Distinct distance values and the matrix of their ranks.

        Every algorithm here only compares distances, so working on ranks is
        exact and avoids Fraction arithmetic in inner loops.
        """
        if self._ranks is None:
            values = sorted({v for row in self.dist for v in row} | {Fraction(0)})
            rank = {v: k for k, v in enumerate(values)}
            self._ranks = (values, [[rank[v] for v in row] for row in self.dist])
        return self._ranks

    def is_isometry(self, g: Permutation) -> bool:
        n = len(self)
        if g.n != n:
            return False
        return all(self.dist[g(i)][g(j)] == self.dist[i][j] for i in range(n) for j in range(i + 1, n))

    def with_basepoint(self, label: Optional[object]) -> "RationalUltraSpace":
        return RationalUltraSpace(self.points, self.dist, label)

    def to_json(self) -> dict:
        doc: dict = {"points": list(self.points)}
        if self.basepoint is not None:
            doc["basepoint"] = self.points[self.basepoint]
        doc["dist"] = [[fraction_to_json(v) for v in row] for row in self.dist]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "RationalUltraSpace":
        if not isinstance(doc, dict) or "points" not in doc or "dist" not in doc:
            raise InputError('space JSON needs "points" and "dist"')
        if not isinstance(doc["points"], list) or not isinstance(doc["dist"], list):
            raise InputError('"points" and "dist" must be arrays')
        if any(not isinstance(row, list) for row in doc["dist"]):
            raise InputError('"dist" must be an array of arrays')
        return cls(doc["points"], doc["dist"], doc.get("basepoint"))

    def subset_mask(self, labels: Iterable[object]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [p for i, p in enumerate(self.points) if mask >> i & 1]


@dataclass(frozen=True)
class UltraCheck:
    ok: bool
    witness: Optional[tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_ultrametric(space: RationalUltraSpace) -> UltraCheck:
    """Check ``d(x, z) <= max(d(x, y), d(y, z))`` on all ordered triples; on
    failure report the lexicographically first violating ``(x, y, z)``."""
    d = space.ranked()[1]
    n = len(space)
    for x in range(n):
        dx = d[x]
        for y in range(n):
            dxy = dx[y]
            dy = d[y]
            for z in range(n):
                if dx[z] > dxy and dx[z] > dy[z]:
                    return UltraCheck(False, (x, y, z))
    return UltraCheck(True)


def _require_ultra(space: RationalUltraSpace) -> None:
    check = verify_ultrametric(space)
    if not check:
        x, y, z = check.witness  # type: ignore[misc]
        p = space.points
        raise InputError(f"strong triangle inequality fails at ({p[x]}, {p[y]}, {p[z]})")


def ball_partition(space: RationalUltraSpace, eps: Rational, closed: bool = False) -> ClopenPartition:
    """The distinct balls of radius ``eps`` (open by default)."""
    radius = to_fraction(eps)
    if radius <= 0:
        raise InputError("radius must be positive")
    _require_ultra(space)
    n = len(space)
    blocks = {}
    for x in range(n):
        bits = 0
        for y in range(n):
            dv = space.d(x, y)
            if dv < radius or (closed and dv == radius):
                bits |= 1 << y
        blocks[bits] = ClopenVector(bits, n)
    return ClopenPartition(tuple(blocks.values()))


def max_combine(spaces: Sequence[RationalUltraSpace]) -> RationalUltraSpace:
    """Pointwise maximum of ultra-semimetrics on the same labelled points."""
    if not spaces:
        raise InputError("nothing to combine")
    first = spaces[0]
    for s in spaces[1:]:
        if s.points != first.points:
            raise DimensionError("spaces over different point sets")
    n = len(first)
    out = RationalUltraSpace(
        first.points,
        [[max(s.d(i, j) for s in spaces) for j in range(n)] for i in range(n)],
        None if first.basepoint is None else first.points[first.basepoint],
    )
    _require_ultra(out)
    return out


def partition_semimetric(points: Sequence[object], partition: ClopenPartition) -> RationalUltraSpace:
    """The 0/1 ultra-semimetric of a partition: 0 inside blocks, 1 across."""
    n = len(points)
    if partition.n != n:
        raise DimensionError("partition and points disagree")
    label = {}
    for k, b in enumerate(partition.blocks):
        for i in b.points():
            label[i] = k
    return RationalUltraSpace(points, [[0 if label[i] == label[j] else 1 for j in range(n)] for i in range(n)])


def _point_to_set(space: RationalUltraSpace, i: int, mask: int) -> Fraction:
    return min(space.d(i, j) for j in range(len(space)) if mask >> j & 1)


def hausdorff_distance(A: int, B: int, space: RationalUltraSpace) -> Fraction:
    """Hausdorff distance between nonempty subsets given as point bitmasks."""
    if not A or not B:
        raise InputError("Hausdorff distance needs nonempty subsets")
    n = len(space)
    if A >> n or B >> n:
        raise InputError("subset mentions points outside the space")
    forward = max(_point_to_set(space, a, B) for a in range(n) if A >> a & 1)
    backward = max(_point_to_set(space, b, A) for b in range(n) if B >> b & 1)
    return max(forward, backward)


def hausdorff_space(space: RationalUltraSpace, subsets: Optional[Sequence[int]] = None) -> tuple[list[int], RationalUltraSpace]:
    """The Hausdorff (semi)metric on a family of nonempty subsets (all of
    them by default), returned as a space labelled by the subsets."""
    n = len(space)
    family = list(range(1, 1 << n)) if subsets is None else list(subsets)
    if subsets is None and n > 10:
        raise EnumerationLimitError("all-subset Hausdorff space needs n <= 10")
    labels = ["{" + ",".join(space.labels_of(m)) + "}" for m in family]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate subsets in family")
    dist = [[hausdorff_distance(a, b, space) for b in family] for a in family]
    return family, RationalUltraSpace(labels, dist)


def _fresh_label(points: Sequence[str]) -> str:
    label = BASEPOINT_LABEL
    while label in points:
        label += "'"
    return label


def adjoin_basepoint(space: RationalUltraSpace) -> RationalUltraSpace:
    """Truncate distances at 1 and append a point at distance 1 from all others."""
    _require_ultra(space)
    n = len(space)
    one = Fraction(1)
    dist = [[min(space.d(i, j), one) for j in range(n)] + [one] for i in range(n)]
    dist.append([one] * n + [Fraction(0)])
    label = _fresh_label(space.points)
    out = RationalUltraSpace(list(space.points) + [label], dist, label)
    _require_ultra(out)
    return out


def extend_permutation(g: Permutation) -> Permutation:
    """Extend ``g`` by a fixed last point (the adjoined basepoint)."""
    return Permutation(g.images + (g.n,))


@dataclass
class OrbitBasepoint:
    space: RationalUltraSpace
    orbit: list[int]
    # True when the orbit is a single fixed point, used as the basepoint itself
    fixed_point: bool

    @property
    def message(self) -> str:
        if self.fixed_point:
            return f"use {self.space.points[self.orbit[0]]} itself as basepoint"
        return f"adjoined {self.space.points[self.space.basepoint]} for an orbit of size {len(self.orbit)}"


def orbit(G: PermGroup, x0: int) -> list[int]:
    return sorted({g(x0) for g in G})


def orbit_basepoint(G: PermGroup, x0: int, space: RationalUltraSpace) -> OrbitBasepoint:
    """Point the space by the orbit of ``x0``, placed at Hausdorff distance
    ``d_H({x}, G x0)`` from each point ``x``."""
    if G.n != len(space):
        raise DimensionError(f"group on {G.n} points, space with {len(space)}")
    for g in G:
        if not space.is_isometry(g):
            raise InputError(f"{g} is not an isometry")
    _require_ultra(space)
    orb = orbit(G, x0)
    if len(orb) == 1:
        return OrbitBasepoint(space.with_basepoint(space.points[x0]), orb, True)
    mask = sum(1 << i for i in orb)
    n = len(space)
    to_theta = [hausdorff_distance(1 << x, mask, space) for x in range(n)]
    dist = [list(space.dist[i]) + [to_theta[i]] for i in range(n)]
    dist.append(to_theta + [Fraction(0)])
    label = _fresh_label(space.points)
    out = RationalUltraSpace(list(space.points) + [label], dist, label)
    _require_ultra(out)
    return OrbitBasepoint(out, orb, False)


def isometry_group(space: RationalUltraSpace) -> PermGroup:
    """All distance-preserving permutations, by backtracking over S_n."""
    n = len(space)
    if n > MAX_ISOMETRY_POINTS:
        raise EnumerationLimitError(f"isometry search limited to {MAX_ISOMETRY_POINTS} points")
    d = space.dist
    found: list[Permutation] = []
    images: list[int] = []
    used = [False] * n

    def extend(i: int) -> None:
        if i == n:
            found.append(Permutation(tuple(images)))
            return
        for c in range(n):
            if used[c]:
                continue
            if all(d[c][images[j]] == d[i][j] for j in range(i)):
                used[c] = True
                images.append(c)
                extend(i + 1)
                images.pop()
                used[c] = False

    extend(0)
    return PermGroup(found, check=False)


def two_adic_space(n: int = 4) -> RationalUltraSpace:
    """Points ``0..n-1`` with ``d(i, j) = 2^-v`` where ``2^v`` exactly divides ``i - j``."""

    def v2(k: int) -> int:
        return (k & -k).bit_length() - 1

    return RationalUltraSpace(
        [str(i) for i in range(n)],
        [[Fraction(0) if i == j else Fraction(1, 2 ** v2(abs(i - j))) for j in range(n)] for i in range(n)],
    )


def two_valued_space(n: int, value: Rational = 1) -> RationalUltraSpace:
    v = to_fraction(value)
    return RationalUltraSpace([str(i) for i in range(n)], [[0 if i == j else v for j in range(n)] for i in range(n)])


def random_ultrametric(
    rng: random.Random, n: int, metric: bool = True, max_step: int = 3, denominator: int = 4
) -> RationalUltraSpace:
    """A random ultra(-semi)metric from a random dendrogram.

    Clusters are merged pairwise at nondecreasing rational heights; the
    distance of two points is the height at which they first share a
    cluster.  With ``metric=False`` early merges may happen at height 0.
    """
    clusters = [[i] for i in range(n)]
    dist = [[Fraction(0)] * n for _ in range(n)]
    height = Fraction(0)
    first = True
    while len(clusters) > 1:
        step = Fraction(rng.randint(0, max_step), rng.randint(1, denominator))
        if metric and first and step == 0:
            step = Fraction(1, denominator)
        if not metric and first and rng.random() < 0.5:
            step = Fraction(0)
        height += step
        first = False
        a, b = rng.sample(range(len(clusters)), 2)
        for i in clusters[a]:
            for j in clusters[b]:
                dist[i][j] = dist[j][i] = height
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
    return RationalUltraSpace([str(i) for i in range(n)], dist)
