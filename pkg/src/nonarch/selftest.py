"""Seeded property checks reported claim by claim.

Library functions are looked up through their modules at call time so that a
patched (mutated) implementation is what gets checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional

from . import free_boolean as fb
from . import heisenberg as hb
from . import stone_actions as sa
from . import ultrametric as um
from . import fixtures
from .boolean_core import all_vectors, pairing_w


@dataclass
class ClaimResult:
    name: str
    description: str
    passed: bool
    detail: str = ""


Check = Callable[[random.Random, int, dict], Optional[str]]
CHECKS: list[tuple[str, str, Check]] = []


def claim(name: str, description: str):
    def register(fn: Check) -> Check:
        CHECKS.append((name, description, fn))
        return fn

    return register


def _random_spaces(rng: random.Random, count: int, lo: int = 2, hi: int = 8) -> list[um.RationalUltraSpace]:
    return [um.random_ultrametric(rng, rng.randint(lo, hi)) for _ in range(count)]


def _random_even_chain(rng: random.Random, n: int, max_support: int = 8) -> fb.Chain:
    k = rng.randrange(0, min(n, max_support) // 2 + 1) * 2
    return fb.Chain.of(rng.sample(range(n), k))


@claim("reduction", "elementary reductions give a normal configuration of the same chain, never longer")
def _reduction(rng, trials, spaces):
    for _ in range(trials):
        n = rng.randint(2, 7)
        family = [um.random_ultrametric(rng, n, metric=rng.random() < 0.5) for _ in range(2)]
        omega = fb.Configuration(tuple((rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 6))))
        nu = fb.reduce(omega)
        if not nu.is_normal() or nu.chain() != omega.chain():
            return f"reduce({omega.pairs}) = {nu.pairs}"
        for d in family:
            if fb.phi_length(nu, d) > fb.phi_length(omega, d):
                return f"reduce lengthened {omega.pairs}"
    return None


@claim("norm-oracle", "bottleneck norm equals the brute-force minimum over perfect pairings")
def _oracle(rng, trials, spaces):
    for space in list(spaces.values()) + _random_spaces(rng, max(1, trials // 10)):
        for u in fb.even_chains(len(space), max_support=8):
            fast = fb.norm_bottleneck(u, space)
            slow = fb.norm_bruteforce_witness(u, space)
            if fast.value != slow.value or fast.witness != slow.witness:
                return f"{space!r} chain {u.labels(space)}: {fast.value} vs {slow.value}"
    return None


@claim("ultra-seminorm", "||u+v|| <= max(||u||, ||v||) and ||0|| = 0")
def _ultra(rng, trials, spaces):
    for space in spaces.values():
        if fb.norm(fb.ZERO, space) != 0:
            return f"nonzero norm of 0 on {space!r}"
    for space in _random_spaces(rng, max(1, trials // 20)):
        n = len(space)
        for _ in range(20):
            u, v = _random_even_chain(rng, n), _random_even_chain(rng, n)
            w = u ^ v
            if len(w) > fb.MAX_BOTTLENECK_SUPPORT:
                continue
            if fb.norm(w, space) > max(fb.norm(u, space), fb.norm(v, space)):
                return f"{space!r}: {u.labels(space)} + {v.labels(space)}"
    return None


@claim("isometric-embedding", "||alpha(x) + alpha(y)|| = d(x, y)")
def _isometry(rng, trials, spaces):
    for name, space in spaces.items():
        s = space if space.basepoint is not None else um.adjoin_basepoint(space)
        for x in range(len(s)):
            for y in range(len(s)):
                if fb.norm(fb.embed_alpha(x, s) ^ fb.embed_alpha(y, s), s) != s.d(x, y):
                    return f"{name}: ({s.points[x]}, {s.points[y]})"
    return None


def _min_inner(u: fb.Chain, space: um.RationalUltraSpace):
    return min(space.d(a, b) for a, b in combinations(u.support(), 2))


@claim("lower-bound", "||u|| >= least distance inside supp(u) for u != 0")
def _lower(rng, trials, spaces):
    for name, space in spaces.items():
        for u in fb.even_chains(len(space), max_support=8):
            if u and fb.norm(u, space) < _min_inner(u, space):
                return f"{name}: {u.labels(space)}"
    return None


@claim("positivity", "||u|| > 0 for u != 0 under a separating metric")
def _positive(rng, trials, spaces):
    for name, space in spaces.items():
        if not space.is_metric:
            continue
        for u in fb.even_chains(len(space), max_support=8):
            if u and fb.norm(u, space) <= 0:
                return f"{name}: {u.labels(space)}"
    return None


@claim("closedness", "distance from u outside alpha(X) to alpha(X) is at least eps0(u)")
def _closed(rng, trials, spaces):
    for name, space in spaces.items():
        if space.basepoint is None or len(space) > 6:
            continue
        for u in fb.even_chains(len(space)):
            if fb.in_image(u, space):
                if fb.distance_to_image(u, space) != 0:
                    return f"{name}: image chain {u.labels(space)} at positive distance"
                continue
            bound = fb.closedness_bound(u, space)
            if bound is None or fb.distance_to_image(u, space) < bound:
                return f"{name}: {u.labels(space)}"
    return None


@claim("hausdorff-ultra", "Hausdorff distance on nonempty subsets satisfies the strong triangle inequality")
def _hausdorff(rng, trials, spaces):
    for name, space in spaces.items():
        if len(space) > 5:
            continue
        _, hs = um.hausdorff_space(space)
        if not um.verify_ultrametric(hs):
            return name
    return None


@claim("invariance", "w(gA, gf) = w(A, f) for every permutation g")
def _invariance(rng, trials, spaces):
    for n in range(0, 5):
        vecs = list(all_vectors(n))
        for g in sa.PermGroup.symmetric(n):
            for A in vecs:
                gA = sa.act_clopen(g, A)
                for f in vecs:
                    if pairing_w(gA, sa.act_character(g, f)) != pairing_w(A, f):
                        return f"n={n} g={g} A={A} f={f}"
    return None


@claim("nilpotency", "commutators are central of the form (c, 0, 0); the center has order 2")
def _nilpotent(rng, trials, spaces):
    for n in (1, 2, 3):
        elems = list(hb.elements(n))
        for u in elems:
            for v in elems:
                c = hb.commutator(u, v)
                if c.x.bits or c.f.bits:
                    return f"[{u}, {v}] = {c}"
        if len(hb.center(n)) != 2:
            return f"center of order {len(hb.center(n))} for n={n}"
    return None


@claim("retraction", "(h, g) -> g retracts the semidirect product onto G with section g -> (1, g)")
def _retract(rng, trials, spaces):
    for n, G in ((1, sa.PermGroup.symmetric(1)), (2, sa.PermGroup.symmetric(2)), (2, sa.PermGroup.trivial(2))):
        report = hb.retraction_check(n, G)
        bad = [k for k, ok in report.items() if not ok]
        if bad:
            return f"n={n}, |G|={len(G)}: {', '.join(bad)}"
    wreath = sa.wreath_retract(sa.cyclic_table(3)).verify()
    bad = [k for k, ok in wreath.items() if not ok]
    return f"wreath over Z_3: {', '.join(bad)}" if bad else None


def run_selftest(seed: int = 0, trials: int = 100, spaces: Optional[dict] = None) -> list[ClaimResult]:
    spaces = fixtures.fixture_spaces() if spaces is None else spaces
    results = []
    for name, description, fn in CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            failure = fn(rng, trials, spaces)
        except Exception as exc:  # a crash counts as a failed claim
            failure = f"{type(exc).__name__}: {exc}"
        results.append(ClaimResult(name, description, failure is None, failure or ""))
    return results
