import random

import pytest

from reversa import INF, aleph, fin
from reversa.errors import NotIncreasing, TooLarge
from reversa.sequence import AP, Single
from reversa.structures import (
    ComponentKind,
    FiniteBinaryStructure,
    UnionSpec,
    brute_reversible,
    components,
    decide_union,
    gen_rb001,
    parse_edge_list,
)


def test_components_basic():
    s = FiniteBinaryStructure(frozenset(range(5)), frozenset({(0, 1), (1, 2), (3, 3)}))
    comps = {frozenset(c) for c in components(s)}
    assert comps == {frozenset({0, 1, 2}), frozenset({3}), frozenset({4})}


def test_components_direction_ignored():
    s = FiniteBinaryStructure(frozenset(range(3)), frozenset({(2, 0)}))
    comps = {frozenset(c) for c in components(s)}
    assert comps == {frozenset({0, 2}), frozenset({1})}


def test_parse_edge_list():
    s = parse_edge_list("# comment\n1 2\n2 3\n\n7\n")
    assert s.vertices == frozenset({1, 2, 3, 7})
    assert s.edges == frozenset({(1, 2), (2, 3)})


def test_every_small_digraph_is_brute_reversible():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 6)
        verts = frozenset(range(n))
        edges = frozenset(
            (a, b) for a in verts for b in verts if rng.random() < 0.3
        )
        ok, counterexample = brute_reversible(FiniteBinaryStructure(verts, edges))
        assert ok and counterexample is None


def test_brute_respects_vertex_cap():
    s = FiniteBinaryStructure(frozenset(range(9)), frozenset())
    with pytest.raises(TooLarge):
        brute_reversible(s, max_vertices=8)


def _union(*entries):
    return UnionSpec(tuple(entries))


def test_kgraph_union_reversible():
    # complete graphs on 3,5 (infinitely many) and 6,8 (once each)
    u = _union(
        (ComponentKind("kgraph", Single(fin(3))), INF),
        (ComponentKind("kgraph", Single(fin(5))), INF),
        (ComponentKind("kgraph", Single(fin(6))), 1),
        (ComponentKind("kgraph", Single(fin(8))), 1),
    )
    v = decide_union(u)
    assert v.verdict == "reversible" and v.path == "tb048"


def test_omega_copies_not_reversible():
    u = _union((ComponentKind("ordinal", Single(aleph(0))), INF))
    v = decide_union(u)
    assert v.verdict == "not-reversible" and v.path == "tb048"
    assert v.witness is not None


def test_linear_order_union_sufficient_only():
    u = _union((ComponentKind("chain", Single(fin(1)), "eta"), 1),
               (ComponentKind("chain", Single(aleph(0)), "omega"), 1))
    v = decide_union(u)
    assert v.verdict == "reversible" and v.path == "tb047-sufficient"


def test_omega_times_n_chains_unknown():
    u = _union((ComponentKind("chain", Single(aleph(0)), "omega_n"), INF))
    v = decide_union(u)
    assert v.verdict == "unknown" and v.reason


def test_mixed_kinds_unknown():
    u = _union(
        (ComponentKind("kgraph", Single(fin(3))), 1),
        (ComponentKind("full", Single(fin(3))), 1),
    )
    assert decide_union(u).verdict == "unknown"


def test_a2chain_adds_two_endpoints():
    kind = ComponentKind("a2chain", Single(fin(3)))
    assert kind.cardinality() == Single(fin(5))


def test_gen_rb001_is_reversible():
    u = gen_rb001([3, 5], 7, 3)
    sizes = [k.size for k, _ in u.components]
    assert sizes == [Single(fin(3)), Single(fin(5)), AP(7, 3)]
    assert decide_union(u).verdict == "reversible"


def test_gen_rb001_rejects_non_increasing():
    with pytest.raises(NotIncreasing):
        gen_rb001([5, 3], 7, 3)
    with pytest.raises(NotIncreasing):
        gen_rb001([3, 5], 5, 3)
