"""Acceptance gate: one pass/fail line per criterion, time bounds pinned."""

import itertools
import json
import random
import time
from contextlib import contextmanager

from reversa import INF, NonRevCase, aleph, decide, fin, normalize, spec
from reversa.baire import compile_to_spec, compose, extend_to_reversible, composition_counterexample
from reversa.corpus import nonreversible_spec, random_spec, reversible_spec
from reversa.semigroup import conductor, is_independent, members_oracle
from reversa.sequence import AP, CardinalSpec, Single
from reversa.serde import witness_from_json, witness_to_json
from reversa.structures import (
    ComponentKind,
    FiniteBinaryStructure,
    UnionSpec,
    brute_reversible,
    decide_union,
)
from reversa.witness import search_bounded, verify_witness


@contextmanager
def criterion(number, label, budget_s):
    from conftest import acceptance_results

    start = time.monotonic()
    try:
        yield
    except BaseException:
        acceptance_results.append(f"criterion {number:2} ({label}): FAIL")
        raise
    elapsed = time.monotonic() - start
    status = "PASS" if elapsed < budget_s else f"FAIL (took {elapsed:.1f}s > {budget_s}s)"
    acceptance_results.append(
        f"criterion {number:2} ({label}): {status} [{elapsed:.2f}s]"
    )
    assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s ({elapsed:.1f}s)"


def test_criterion_1_footnote_reproduction():
    with criterion(1, "footnote verdicts", 1.0):
        assert decide(spec((Single(fin(2)), INF), (Single(fin(5)), INF))).reversible
        v = decide(spec((Single(fin(2)), INF), (Single(fin(5)), INF), (AP(7, 3), 1)))
        assert not v.reversible
        assert decide(
            spec((Single(fin(4)), INF), (Single(fin(10)), INF), (AP(7, 2), 1))
        ).reversible
        v = decide(spec((Single(fin(4)), INF), (Single(fin(10)), INF), (AP(8, 2), 1)))
        assert not v.reversible


def _independent_oracle(k):
    return all(
        n not in members_oracle(k - {n}, n) for n in k
    )


def test_criterion_2_independence_oracle_equivalence():
    with criterion(2, "independence oracle, 1940 sets", 10.0):
        checked = 0
        for size in (1, 2, 3, 4):
            for combo in itertools.combinations(range(1, 16), size):
                k = frozenset(combo)
                assert is_independent(k) == _independent_oracle(k), k
                checked += 1
        assert checked == 1940


def test_criterion_3_witness_soundness():
    with criterion(3, "200 certified non-reversible specs", 60.0):
        rng = random.Random(int(__import__("os").environ.get("REVERSA_SEED", "0")))
        total = 0
        for case in NonRevCase:
            for _ in range(50):
                s = nonreversible_spec(rng, case)
                v = decide(s)
                assert not v.reversible and v.case is case
                assert verify_witness(s, v.witness, depth=1000).accepted, s
                round_tripped = witness_from_json(
                    json.loads(json.dumps(witness_to_json(v.witness)))
                )
                assert verify_witness(s, round_tripped, depth=1000).accepted, s
                total += 1
        assert total >= 200


def test_criterion_4_no_witness_for_reversible():
    with criterion(4, "bounded search finds nothing for 100 reversible specs", 120.0):
        rng = random.Random(1)
        for _ in range(100):
            s = reversible_spec(rng)
            assert search_bounded(s, max_tracks=3, max_param=5) is None, s


def test_criterion_5_conductor_law():
    import math

    with criterion(5, "two-generator conductor law", 5.0):
        for a in range(2, 31):
            for b in range(a + 1, 31):
                if math.gcd(a, b) == 1:
                    assert conductor(frozenset({a, b})) == a * b - a - b + 1, (a, b)


def test_criterion_6_small_digraphs_reversible():
    with criterion(6, "500 random digraphs on <= 6 vertices", 30.0):
        rng = random.Random(2)
        for _ in range(500):
            n = rng.randint(1, 6)
            verts = frozenset(range(n))
            edges = frozenset(
                (a, b) for a in verts for b in verts if rng.random() < 0.35
            )
            ok, counterexample = brute_reversible(FiniteBinaryStructure(verts, edges))
            assert ok and counterexample is None


def test_criterion_7_union_fixtures():
    with criterion(7, "union fixture verdicts", 5.0):
        u = UnionSpec(
            (
                (ComponentKind("kgraph", Single(fin(3))), INF),
                (ComponentKind("kgraph", Single(fin(5))), INF),
                (ComponentKind("kgraph", Single(fin(6))), 1),
                (ComponentKind("kgraph", Single(fin(8))), 1),
            )
        )
        assert decide_union(u).verdict == "reversible"

        u = UnionSpec(((ComponentKind("ordinal", Single(aleph(0))), INF),))
        v = decide_union(u)
        assert v.verdict == "not-reversible" and v.witness is not None

        u = UnionSpec(
            (
                (ComponentKind("chain", Single(fin(1)), "one"), 1),
                (ComponentKind("chain", Single(aleph(0)), "omega"), 2),
            )
        )
        v = decide_union(u)
        assert v.verdict == "reversible" and v.path == "tb047-sufficient"

        u = UnionSpec(((ComponentKind("chain", Single(aleph(0)), "omega_n"), INF),))
        v = decide_union(u)
        assert v.verdict == "unknown" and v.reason


def test_criterion_8_composition_counterexample():
    with criterion(8, "composition counterexample", 1.0):
        phi, psi = composition_counterexample()
        assert decide(compile_to_spec(phi)).reversible
        assert decide(compile_to_spec(psi)).reversible
        v = decide(compile_to_spec(compose(phi, psi)))
        assert not v.reversible
        assert {2, 3, 5} <= set(v.k.singles)


def test_criterion_9_density_extension():
    with criterion(9, "100 prefix extensions", 5.0):
        rng = random.Random(4)
        for _ in range(100):
            domain = rng.sample(range(10), rng.randint(0, 10))
            prefix = {i: rng.randint(1, 20) for i in domain}
            g = extend_to_reversible(prefix)
            assert all(g(i) == v for i, v in prefix.items())
            assert decide(compile_to_spec(g)).reversible


def _scramble(s, rng):
    entries = []
    for family, mult in s.entries:
        if isinstance(mult, int) and mult > 1 and rng.random() < 0.5:
            cut = rng.randint(1, mult - 1)
            entries.append((family, cut))
            entries.append((family, mult - cut))
        else:
            entries.append((family, mult))
    rng.shuffle(entries)
    return CardinalSpec(tuple(entries))


def test_criterion_10_normalization_invariance():
    with criterion(10, "verdicts invariant under permutation/split", 10.0):
        rng = random.Random(6)
        for _ in range(200):
            s = random_spec(rng)
            base = decide(s)
            for _ in range(5):
                v = decide(normalize(_scramble(s, rng)))
                assert v.reversible == base.reversible and v.case == base.case
