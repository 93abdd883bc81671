"""Seeded generators for random cardinal specs, used by the test and
acceptance suites.  The seed comes from REVERSA_SEED (default 0)."""

from __future__ import annotations

import os
import random

from .semigroup import contains, gcd_of, is_independent
from .sequence import AP, CardinalSpec, INF, NonRevCase, Single, aleph, fin, normalize, spec


def rng_from_env() -> random.Random:
    return random.Random(int(os.environ.get("REVERSA_SEED", "0")))


# Small independent generating sets, precomputed by hand.  Pairs of
# coprime numbers are always independent; the others were checked with
# is_independent at module import below.
_INDEPENDENT_POOL = [
    frozenset({2, 5}),
    frozenset({3, 5}),
    frozenset({3, 7}),
    frozenset({4, 10}),
    frozenset({5, 7}),
    frozenset({4, 6, 9}),
    frozenset({6}),
    frozenset({6, 10, 15}),
]
assert all(is_independent(k) for k in _INDEPENDENT_POOL)


def _dependent_set(rng: random.Random) -> frozenset[int]:
    base = sorted(rng.choice(_INDEPENDENT_POOL))
    coeffs = [rng.randint(0, 2) for _ in base]
    if sum(coeffs) < 2:
        coeffs[rng.randrange(len(base))] += 2
    extra = sum(c * m for c, m in zip(coeffs, base))
    return frozenset(base) | {extra}


def _finite_extras(rng: random.Random, avoid_multiples_of: int | None):
    """Singleton entries with finite multiplicity; if avoid_multiples_of
    is given, keep values off that residue class so the divisibility
    count stays finite."""
    entries = []
    for _ in range(rng.randint(0, 3)):
        v = rng.randint(1, 40)
        if avoid_multiples_of is not None and v % avoid_multiples_of == 0:
            v += 1
        entries.append((Single(fin(v)), rng.randint(1, 4)))
    return entries


def reversible_spec(rng: random.Random) -> CardinalSpec:
    if rng.random() < 0.5:
        # finite-to-one: everything has finite multiplicity
        entries = _finite_extras(rng, None) or [(Single(fin(1)), 1)]
        if rng.random() < 0.5:
            entries.append((Single(aleph(rng.randint(0, 2))), rng.randint(1, 3)))
        if rng.random() < 0.4:
            entries.append((AP(rng.randint(1, 9), rng.randint(1, 6)), 1))
        return normalize(CardinalSpec(tuple(entries)))
    # independent K with only finitely many gcd(K)-divisible values
    k = rng.choice(_INDEPENDENT_POOL)
    d = gcd_of(k)
    entries = [(Single(fin(m)), INF) for m in k]
    entries += _finite_extras(rng, d if d > 1 else None)
    if d > 1:
        # an AP avoiding multiples of d entirely keeps the verdict
        first = rng.randint(1, 20)
        if first % d == 0:
            first += 1
        entries.append((AP(first, d), rng.randint(1, 2)))
    s = normalize(CardinalSpec(tuple(entries)))
    from .sequence import decide  # circular at module load

    assert decide(s).reversible, s
    return s


def nonreversible_spec(rng: random.Random, case: NonRevCase) -> CardinalSpec:
    if case is NonRevCase.INF_CARD_LEQ:
        k0 = rng.randint(1, 10)
        star = rng.randint(0, 3)
        entries = [(Single(fin(k0)), INF), (Single(aleph(star)), rng.randint(1, 3))]
        entries += _finite_extras(rng, None)
        if rng.random() < 0.5:
            entries.append((Single(aleph(star)), INF))
        return normalize(CardinalSpec(tuple(entries)))
    if case is NonRevCase.INF_CARD_GT:
        big = rng.randint(1, 4)
        small = rng.randint(0, big - 1)
        entries = [(Single(aleph(big)), INF), (Single(aleph(small)), rng.randint(1, 3))]
        for _ in range(rng.randint(0, 3)):
            entries.append((Single(fin(rng.randint(1, 30))), rng.randint(1, 4)))
        return normalize(CardinalSpec(tuple(entries)))
    if case is NonRevCase.DEPENDENT_K:
        k = _dependent_set(rng)
        entries = [(Single(fin(m)), INF) for m in k]
        entries += _finite_extras(rng, None)
        return normalize(CardinalSpec(tuple(entries)))
    # DIVISIBLE_TAIL: independent K plus an AP hitting multiples of d forever
    k = rng.choice(_INDEPENDENT_POOL)
    d = gcd_of(k)
    first = d * rng.randint(1, 8)
    step = d * rng.randint(1, 5)
    entries = [(Single(fin(m)), INF) for m in k]
    entries.append((AP(first, step), rng.randint(1, 2)))
    entries += _finite_extras(rng, None)
    return normalize(CardinalSpec(tuple(entries)))


def random_spec(rng: random.Random) -> CardinalSpec:
    roll = rng.random()
    if roll < 0.4:
        return reversible_spec(rng)
    case = rng.choice(list(NonRevCase))
    return nonreversible_spec(rng, case)
