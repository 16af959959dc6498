"""Named example spaces shared by the self-test and the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from .ultrametric import (
    RationalUltraSpace,
    adjoin_basepoint,
    isometry_group,
    orbit_basepoint,
    random_ultrametric,
    two_adic_space,
    two_valued_space,
)


def bad_triangle() -> RationalUltraSpace:
    """Three points with sides 1, 1, 19/10: violates the strong triangle inequality."""
    return RationalUltraSpace(
        ["0", "1", "2"],
        [[0, 1, Fraction(19, 10)], [1, 0, 1], [Fraction(19, 10), 1, 0]],
    )


def fixture_spaces() -> dict[str, RationalUltraSpace]:
    """Verified ultra-metric spaces, pointed ones marked by a basepoint."""
    two_adic = two_adic_space(4)
    rng = random.Random(2011)
    dendro5 = random_ultrametric(rng, 5)
    dendro4 = random_ultrametric(rng, 4)
    dendro7 = random_ultrametric(rng, 7)
    spaces = {
        "two_adic_4": two_adic,
        "two_adic_4_pointed": adjoin_basepoint(two_adic),
        "two_adic_4_orbit": orbit_basepoint(isometry_group(two_adic), 0, two_adic).space,
        "two_adic_8": two_adic_space(8),
        "two_valued_3": two_valued_space(3),
        "two_valued_4_pointed": adjoin_basepoint(two_valued_space(4)),
        "all_two_3_pointed": adjoin_basepoint(two_valued_space(3, 2)),
        "dendrogram_5": dendro5,
        "dendrogram_5_pointed": adjoin_basepoint(dendro5),
        "dendrogram_4_pointed": adjoin_basepoint(dendro4),
        "dendrogram_7_pointed": adjoin_basepoint(dendro7),
    }
    return spaces


def pointed_fixture_spaces() -> dict[str, RationalUltraSpace]:
    return {k: s for k, s in fixture_spaces().items() if s.basepoint is not None}
