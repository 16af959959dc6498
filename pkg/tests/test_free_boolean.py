import random
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonarch.errors import EnumerationLimitError, InputError, OddChainError
from nonarch.free_boolean import (
    ZERO,
    Chain,
    Configuration,
    UltraSeminormFamily,
    act_on_chain,
    all_chains,
    closedness_bound,
    distance_to_image,
    embed_alpha,
    even_chains,
    in_image,
    norm,
    norm_bottleneck,
    norm_bruteforce,
    norm_bruteforce_witness,
    perfect_pairings,
    phi_length,
    reduce,
    seminorm_vector,
    sgn,
)
from nonarch.stone_actions import ClopenPartition, Permutation, PermGroup
from nonarch.ultrametric import (
    isometry_group,
    partition_semimetric,
    random_ultrametric,
    two_adic_space,
    two_valued_space,
)

F = Fraction


def test_sgn():
    assert sgn(ZERO) == 0
    assert sgn(Chain.of([3])) == 1
    for u, v in product(all_chains(4), repeat=2):
        assert sgn(u ^ v) == sgn(u) ^ sgn(v)


def test_chain_arithmetic():
    u = Chain.of([0, 2])
    assert u ^ u == ZERO and -u == u
    assert Chain.of([1, 1, 2]) == Chain.of([2])


def test_phi_length_examples(two_adic):
    assert phi_length(Configuration(), two_adic) == 0
    assert phi_length(Configuration(((1, 3),)), two_adic) == F(1, 2)
    assert phi_length(Configuration(((0, 1), (2, 3))), two_adic) == 1


def test_reduce_examples(two_adic):
    normal = Configuration(((0, 2), (1, 3)))
    assert reduce(normal) == normal
    assert reduce(Configuration(((2, 2),))) == Configuration()
    omega = Configuration(((0, 1), (1, 2)))
    nu = reduce(omega)
    assert nu == Configuration(((0, 2),))
    assert phi_length(nu, two_adic) == F(1, 2) <= phi_length(omega, two_adic)


@settings(max_examples=300)
@given(
    st.integers(2, 7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=7),
            st.integers(0, 10_000),
        )
    )
)
def test_reduce_sound(args):
    n, pairs, seed = args
    omega = Configuration(tuple(pairs))
    nu = reduce(omega)
    assert nu.is_normal()
    assert nu.chain() == omega.chain()
    rng = random.Random(seed)
    for d in (random_ultrametric(rng, n, metric=False), random_ultrametric(rng, n)):
        assert phi_length(nu, d) <= phi_length(omega, d)


def test_perfect_pairings_count():
    # (2k-1)!! pairings
    assert [len(list(perfect_pairings(list(range(2 * k))))) for k in range(6)] == [1, 1, 3, 15, 105, 945]


def test_norm_examples(two_adic):
    assert norm_bruteforce(ZERO, two_adic) == 0
    assert norm_bruteforce(Chain.of([1, 2]), two_adic) == 1
    res = norm_bruteforce_witness(Chain.of([0, 1, 2, 3]), two_adic)
    assert res.value == F(1, 2)
    assert res.witness == Configuration(((0, 2), (1, 3)))
    fast = norm_bottleneck(Chain.of([0, 1, 2, 3]), two_adic)
    assert fast.value == F(1, 2) and fast.witness == res.witness
    assert norm_bottleneck(ZERO, two_adic).value == 0
    assert norm_bottleneck(ZERO, two_adic).witness == Configuration()
    two = norm_bottleneck(Chain.of([1, 3]), two_adic)
    assert two.value == F(1, 2) and two.witness == Configuration(((1, 3),))


def test_norm_rejects_odd_and_oversized(two_adic):
    with pytest.raises(OddChainError):
        norm_bottleneck(Chain.of([0]), two_adic)
    with pytest.raises(OddChainError):
        norm_bruteforce(Chain.of([0, 1, 2]), two_adic)
    big = two_valued_space(28)
    with pytest.raises(EnumerationLimitError):
        norm_bottleneck(Chain.of(range(28)), big)
    with pytest.raises(EnumerationLimitError):
        norm_bruteforce(Chain.of(range(14)), big)


def test_norm_is_infimum_over_all_configurations():
    # general configurations (repeated points, trivial pairs) never beat the normal minimum
    rng = random.Random(4)
    for _ in range(10):
        space = random_ultrametric(rng, 5)
        pairs = list(combinations_with_replacement(range(5), 2))
        best = {}
        for k in range(0, 4):
            for combo in combinations_with_replacement(pairs, k):
                omega = Configuration(combo)
                u = omega.chain()
                length = phi_length(omega, space)
                if u not in best or length < best[u]:
                    best[u] = length
        for u, value in best.items():
            assert norm_bruteforce(u, space) <= value
            if len(u) <= 6:
                assert norm_bruteforce(u, space) == value


@pytest.mark.parametrize("seed", range(40))
def test_oracle_equivalence(seed):
    rng = random.Random(seed)
    space = random_ultrametric(rng, rng.randint(2, 10), metric=seed % 3 != 0)
    for u in even_chains(len(space), max_support=8):
        fast = norm_bottleneck(u, space)
        slow = norm_bruteforce_witness(u, space)
        assert fast.value == slow.value
        assert fast.witness == slow.witness
        assert fast.witness.is_normal() and fast.witness.chain() == u
        assert phi_length(fast.witness, space) == fast.value


def test_large_support_bottleneck():
    rng = random.Random(0)
    space = random_ultrametric(rng, 26)
    u = Chain.of(range(26))
    res = norm_bottleneck(u, space)
    assert res.witness.chain() == u and phi_length(res.witness, space) == res.value


def test_embed_alpha(two_adic_pointed):
    s = two_adic_pointed
    theta = s.basepoint
    assert embed_alpha(theta, s) == ZERO
    for x in range(len(s)):
        assert sgn(embed_alpha(x, s)) == 0
        for y in range(len(s)):
            assert norm_bruteforce(embed_alpha(x, s) ^ embed_alpha(y, s), s) == s.d(x, y)
    with pytest.raises(InputError):
        embed_alpha(0, two_adic_space(4))


def test_distance_to_image_examples(two_adic_pointed):
    s = two_adic_pointed
    assert distance_to_image(embed_alpha(2, s), s) == 0
    u = Chain.of([0, 1, 2, 3])
    brute = min(norm_bruteforce(u ^ embed_alpha(x, s), s) for x in range(len(s)))
    assert distance_to_image(u, s) == brute == F(1, 2)
    assert closedness_bound(u, s) == F(1, 2)
    v = Chain.of([0, 2])
    brute_v = min(norm_bruteforce(v ^ embed_alpha(x, s), s) for x in range(len(s)))
    assert distance_to_image(v, s) == brute_v == F(1, 2)
    assert closedness_bound(v, s) == F(1, 2)


def test_image_membership(two_adic_pointed):
    s = two_adic_pointed
    image = {embed_alpha(x, s) for x in range(len(s))}
    for u in even_chains(len(s)):
        assert in_image(u, s) == (u in image)
        if not in_image(u, s):
            assert sum(1 for i in u.support() if i != s.basepoint) >= 2


def test_act_on_chain(two_adic_pointed):
    s = two_adic_pointed
    e = Permutation.identity(5)
    u = Chain.of([0, 3])
    assert act_on_chain(e, u, s) == u
    G = PermGroup([Permutation(g.images + (4,)) for g in isometry_group(two_adic_space(4))])
    for g in G:
        for x in range(5):
            assert act_on_chain(g, embed_alpha(x, s), s) == embed_alpha(g(x), s)
        for u in even_chains(5):
            assert norm(act_on_chain(g, u, s), s) == norm_bruteforce(u, s)
        for u, v in product(list(all_chains(5))[:8], repeat=2):
            assert act_on_chain(g, u ^ v, s) == act_on_chain(g, u, s) ^ act_on_chain(g, v, s)
    with pytest.raises(InputError):
        act_on_chain(Permutation((4, 1, 2, 3, 0)), u, s)


def test_seminorm_vector():
    labels = [str(i) for i in range(4)]
    P = ClopenPartition.from_labels([0, 0, 1, 1])
    Q = ClopenPartition.from_labels([0, 1, 0, 1])
    family = UltraSeminormFamily([partition_semimetric(labels, P), partition_semimetric(labels, Q)])
    assert len(family) == 3
    u = Chain.of([0, 1, 2, 3])
    vec = seminorm_vector(u, family)
    # each partition alone pairs inside its blocks; only the max separates the support
    assert sorted(vec) == [0, 0, 1]
    assert family.separating_member(u.support()) is not None
    assert seminorm_vector(ZERO, family) == [0, 0, 0]
    single = UltraSeminormFamily([two_adic_space(4)])
    assert seminorm_vector(u, single)[0] >= min(single.members[0].d(a, b) for a, b in combinations(range(4), 2))
