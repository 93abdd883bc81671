"""Canonical JSON encoding for specs, witnesses and certificates.

Certificates carry a hash of the printed normalized spec so a witness
can only be checked against the spec it was issued for."""

from __future__ import annotations

import hashlib
import json

from .errors import ParseError
from .sequence import AP, CardinalSpec, Cardinal, INF, Single, Verdict, aleph, fin, normalize
from .witness import (
    AffineValue,
    ChainAdvance,
    CollapseShift,
    ConstValue,
    EvenOddFold,
    HeadToExternal,
    Identity,
    Periodicity,
    SuccessorShift,
    Track,
    WitnessMap,
)


def json_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def cardinal_to_json(c: Cardinal):
    return {"aleph": c.n} if c.aleph else {"fin": c.n}


def cardinal_from_json(doc) -> Cardinal:
    if "aleph" in doc:
        return aleph(doc["aleph"])
    return fin(doc["fin"])


def _mult_to_json(m):
    return "inf" if m is INF else m


def spec_to_json(s: CardinalSpec):
    entries = []
    for family, mult in s.entries:
        if isinstance(family, Single):
            fam = {"single": cardinal_to_json(family.value)}
        else:
            fam = {"ap": {"first": family.first, "step": family.step}}
        entries.append({"family": fam, "count": _mult_to_json(mult)})
    return {"entries": entries}


def spec_from_json(doc) -> CardinalSpec:
    entries = []
    for e in doc["entries"]:
        fam = e["family"]
        if "single" in fam:
            family = Single(cardinal_from_json(fam["single"]))
        else:
            family = AP(fam["ap"]["first"], fam["ap"]["step"])
        mult = INF if e["count"] == "inf" else e["count"]
        entries.append((family, mult))
    return normalize(CardinalSpec(tuple(entries)))


def spec_hash(s: CardinalSpec) -> str:
    from .dsl import print_seq

    return hashlib.sha256(print_seq(normalize(s)).encode()).hexdigest()


def _values_to_json(v):
    if isinstance(v, ConstValue):
        return {"kind": "const", "value": cardinal_to_json(v.value)}
    return {"kind": "affine", "first": v.first, "step": v.step}


def _values_from_json(doc):
    if doc["kind"] == "const":
        return ConstValue(cardinal_from_json(doc["value"]))
    return AffineValue(doc["first"], doc["step"])


def _rule_to_json(r):
    if isinstance(r, Identity):
        return {"kind": "identity"}
    if isinstance(r, SuccessorShift):
        return {"kind": "successor-shift"}
    if isinstance(r, CollapseShift):
        return {"kind": "collapse-shift", "head": r.head, "shift": r.shift}
    if isinstance(r, HeadToExternal):
        return {
            "kind": "head-to-external",
            "head": r.head,
            "target": [r.target[0], r.target[1]],
        }
    if isinstance(r, ChainAdvance):
        return {"kind": "chain-advance"}
    return {"kind": "even-odd-fold", "head": r.head, "rate": r.rate, "chain": r.chain}


def _rule_from_json(doc):
    kind = doc["kind"]
    if kind == "identity":
        return Identity()
    if kind == "successor-shift":
        return SuccessorShift()
    if kind == "collapse-shift":
        return CollapseShift(doc["head"], doc["shift"])
    if kind == "head-to-external":
        return HeadToExternal(doc["head"], (doc["target"][0], doc["target"][1]))
    if kind == "chain-advance":
        return ChainAdvance()
    if kind == "even-odd-fold":
        return EvenOddFold(doc["head"], doc["rate"], doc["chain"])
    raise ParseError(f"unknown rule kind {kind!r}")


def witness_to_json(w: WitnessMap):
    doc = {
        "tracks": [
            {
                "id": t.id,
                "length": "omega" if t.length is None else t.length,
                "values": _values_to_json(t.values),
                "rule": _rule_to_json(t.rule),
            }
            for t in w.tracks
        ]
    }
    if w.periodicity is not None:
        doc["periodicity"] = {
            "start": w.periodicity.start,
            "period": w.periodicity.period,
            "stage": [[v, c] for v, c in w.periodicity.stage],
        }
    return doc


def witness_from_json(doc) -> WitnessMap:
    tracks = tuple(
        Track(
            id=t["id"],
            length=None if t["length"] == "omega" else t["length"],
            values=_values_from_json(t["values"]),
            rule=_rule_from_json(t["rule"]),
        )
        for t in doc["tracks"]
    )
    periodicity = None
    if "periodicity" in doc:
        p = doc["periodicity"]
        periodicity = Periodicity(
            p["start"], p["period"], tuple((v, c) for v, c in p["stage"])
        )
    return WitnessMap(tracks, periodicity)


def certificate_to_json(s: CardinalSpec, w: WitnessMap):
    return {"spec_hash": spec_hash(s), "witness": witness_to_json(w)}


def verdict_to_json(s: CardinalSpec, v: Verdict):
    doc = {
        "reversible": v.reversible,
        "reason": v.reason,
        "spec_hash": spec_hash(s),
    }
    if v.case is not None:
        doc["case"] = v.case.value
    if v.k is not None:
        doc["k"] = {
            "singles": sorted(v.k.singles),
            "aps": sorted([a, b] for a, b in v.k.aps),
        }
    if v.gcd is not None:
        doc["gcd"] = v.gcd
    if v.witness is not None:
        doc["witness"] = witness_to_json(v.witness)
    return doc
