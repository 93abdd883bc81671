import dataclasses
import json
import random

import pytest

from reversa import INF, NonRevCase, aleph, decide, fin, spec
from reversa.corpus import nonreversible_spec, reversible_spec
from reversa.errors import NotApplicable
from reversa.sequence import AP, Single
from reversa.serde import json_dumps, witness_from_json, witness_to_json
from reversa.witness import (
    CollapseShift,
    ConstValue,
    EvenOddFold,
    HeadToExternal,
    Identity,
    Periodicity,
    SuccessorShift,
    Track,
    WitnessMap,
    apply,
    build_witness,
    preimage,
    search_bounded,
    verify_witness,
)


def _nonrev_fixtures():
    rng = random.Random(11)
    out = []
    for case in NonRevCase:
        for _ in range(8):
            out.append(nonreversible_spec(rng, case))
    return out


def test_build_then_verify_accepts():
    for s in _nonrev_fixtures():
        v = decide(s)
        assert not v.reversible
        report = verify_witness(s, v.witness, depth=1000)
        assert report.accepted, (s, report)


def test_preimage_inverts_apply():
    for s in _nonrev_fixtures():
        w = decide(s).witness
        for t in w.tracks:
            bound = t.length if t.length is not None else 40
            for pos in range(min(bound, 40)):
                image = apply(w, (t.id, pos))
                assert (t.id, pos) in preimage(w, image)


def test_identity_map_rejected_as_injective():
    s = spec((Single(fin(1)), INF), (Single(fin(2)), INF))
    w = WitnessMap(
        (
            Track("a", None, ConstValue(fin(1)), Identity()),
            Track("b", None, ConstValue(fin(2)), Identity()),
        )
    )
    r = verify_witness(s, w)
    assert not r.accepted and r.reason == "Injective"


def test_forged_decomposition_fails_equation():
    # each 2-anchor should receive two 1-points; feed it only one
    s = spec((Single(fin(1)), INF), (Single(fin(2)), INF))
    w = WitnessMap(
        (
            Track("j", None, ConstValue(fin(2)), SuccessorShift()),
            Track("g", None, ConstValue(fin(1)), HeadToExternal(1, ("j", 0))),
        )
    )
    r = verify_witness(s, w)
    assert not r.accepted and r.reason == "EquationFails"


def test_wrong_spec_fails_structure():
    s1 = spec((Single(fin(1)), INF), (Single(fin(2)), INF))
    s2 = spec((Single(fin(1)), INF), (Single(fin(3)), INF))
    w = decide(s1).witness
    r = verify_witness(s2, w)
    assert not r.accepted and r.reason in ("EquationFails", "StructureMismatch")


def test_broken_periodicity_rejected():
    s = spec((Single(fin(2)), INF), (Single(fin(5)), INF), (AP(7, 3), 1))
    w = decide(s).witness
    assert w.periodicity is not None
    stage = tuple((v, c + 1) for v, c in w.periodicity.stage)
    forged = dataclasses.replace(
        w, periodicity=Periodicity(w.periodicity.start, w.periodicity.period, stage)
    )
    r = verify_witness(s, forged)
    assert not r.accepted
    assert r.reason in ("PeriodicityBroken", "EquationFails")


def _mutants(w: WitnessMap):
    for i, t in enumerate(w.tracks):
        rule = t.rule
        fields = [f.name for f in dataclasses.fields(rule) if f.type == "int"]
        for name in fields:
            for delta in (-1, 1):
                value = getattr(rule, name) + delta
                if value < 1:
                    continue
                mutated = dataclasses.replace(rule, **{name: value})
                tracks = list(w.tracks)
                tracks[i] = dataclasses.replace(t, rule=mutated)
                yield dataclasses.replace(w, tracks=tuple(tracks))


def test_parameter_mutation_rejected_on_finite_value_witnesses():
    # scoped to the finite-value constructions: for infinite cardinals a
    # nudged parameter can still satisfy the absorption law κ+λ=max(κ,λ)
    rng = random.Random(23)
    checked = 0
    for case in (NonRevCase.DEPENDENT_K, NonRevCase.DIVISIBLE_TAIL):
        for _ in range(12):
            s = nonreversible_spec(rng, case)
            w = decide(s).witness
            assert verify_witness(s, w, depth=300).accepted
            for mutant in _mutants(w):
                r = verify_witness(s, mutant, depth=300)
                assert not r.accepted, (s, mutant)
                checked += 1
    assert checked > 50


def test_json_round_trip_preserves_acceptance():
    for s in _nonrev_fixtures():
        w = decide(s).witness
        doc = json.loads(json_dumps(witness_to_json(w)))
        assert witness_from_json(doc) == w
        assert verify_witness(s, witness_from_json(doc), depth=1000).accepted


def test_build_witness_rejects_mismatched_case():
    s = spec((Single(fin(1)), INF), (Single(fin(2)), INF))
    with pytest.raises(NotApplicable):
        build_witness(s, NonRevCase.INF_CARD_GT)


def test_infinite_collapse_witness_shape():
    s = spec((Single(aleph(1)), INF), (Single(aleph(0)), 2))
    v = decide(s)
    assert v.case is NonRevCase.INF_CARD_GT
    assert any(isinstance(t.rule, CollapseShift) for t in v.witness.tracks)


def test_search_bounded_finds_nothing_for_reversible():
    rng = random.Random(5)
    for _ in range(12):
        s = reversible_spec(rng)
        assert search_bounded(s) is None, s


def test_search_bounded_can_find_simple_witness():
    s = spec((Single(fin(1)), INF), (Single(fin(2)), INF))
    found = search_bounded(s)
    assert found is not None
    assert verify_witness(s, found, depth=200).accepted
