"""Construction and exact verification of certificate surjections.

A witness is a finitely-described non-injective surjection of the index
set of a cardinal spec, satisfying the preservation identity: the value
at every point equals the cardinal sum of the values over its preimage.
The index set is realized as a disjoint union of tracks (omega-indexed
or finite position ranges carrying a value rule), with an implicit
identity Rest covering the remainder of the spec.

Verification is exact: pointwise checks up to a depth bound, plus
algebraic tail arguments per rule kind and a periodicity certificate for
chain consumption, so acceptance covers all infinitely many points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import semigroup
from .errors import NotApplicable, UnknownTrack
from .sequence import (
    INF,
    AP,
    Cardinal,
    CardinalSpec,
    NonRevCase,
    Single,
    cardinal_sum,
    classify,
    fin,
    normalize,
    value_set,
)

# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class ConstValue:
    value: Cardinal


@dataclass(frozen=True)
class AffineValue:
    """Position t carries the finite value first + step*t."""

    first: int
    step: int


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class SuccessorShift:
    """Position l maps to l+1 on the same track."""


@dataclass(frozen=True)
class CollapseShift:
    """Positions below head map to the anchor position 0; position
    l >= head maps to l - shift."""

    head: int
    shift: int


@dataclass(frozen=True)
class HeadToExternal:
    """Positions below head map to a point on another track; position
    l >= head maps to l - head."""

    head: int
    target: tuple[str, int]


@dataclass(frozen=True)
class ChainAdvance:
    """Chain position r maps to r+1."""


@dataclass(frozen=True)
class EvenOddFold:
    """Odd position 2t+1 maps to position t; even position 2u feeds the
    chain track: stage 0 takes the first `head` evens, every later stage
    takes the next `rate` evens."""

    head: int
    rate: int
    chain: str


@dataclass(frozen=True)
class Track:
    id: str
    length: int | None  # None = omega
    values: object  # ConstValue | AffineValue
    rule: object


@dataclass(frozen=True)
class Periodicity:
    """Certifies that from stage `start` on, every `period` stages the
    chain consumes the same multiset of values."""

    start: int
    period: int
    stage: tuple[tuple[int, int], ...]  # sorted (value, count) pairs


@dataclass(frozen=True)
class WitnessMap:
    tracks: tuple[Track, ...]
    periodicity: Periodicity | None = None


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    reason: str | None = None
    detail: str = ""
    noninjective_point: tuple[str, int] | None = None
    checked_points: int = 0


def _reject(reason, detail=""):
    return VerificationReport(False, reason=reason, detail=detail)


# ---------------------------------------------------------------------------
# forward map, preimages, values


def _track_map(w: WitnessMap) -> dict[str, Track]:
    return {t.id: t for t in w.tracks}


def _check_point(tracks, point):
    tid, pos = point
    if tid not in tracks:
        raise UnknownTrack(f"no track {tid!r}")
    track = tracks[tid]
    if pos < 0 or (track.length is not None and pos >= track.length):
        raise UnknownTrack(f"position {pos} outside track {tid!r}")
    return track


def value_at(w: WitnessMap, point) -> Cardinal:
    track = _check_point(_track_map(w), point)
    if isinstance(track.values, ConstValue):
        return track.values.value
    return fin(track.values.first + track.values.step * point[1])


def apply(w: WitnessMap, point) -> tuple[str, int]:
    """The forward map at an index point (track id, position)."""
    tracks = _track_map(w)
    track = _check_point(tracks, point)
    tid, p = point
    r = track.rule
    if isinstance(r, Identity):
        return point
    if isinstance(r, (SuccessorShift, ChainAdvance)):
        return (tid, p + 1)
    if isinstance(r, CollapseShift):
        return (tid, 0) if p < r.head else (tid, p - r.shift)
    if isinstance(r, HeadToExternal):
        return r.target if p < r.head else (tid, p - r.head)
    if isinstance(r, EvenOddFold):
        if p % 2 == 1:
            return (tid, p // 2)
        u = p // 2
        stage = 0 if u < r.head else 1 + (u - r.head) // r.rate
        return (r.chain, stage)
    raise TypeError(f"unknown rule {r!r}")


def preimage(w: WitnessMap, point) -> list[tuple[str, int]]:
    """The exact preimage of a point, collected across all track rules."""
    tracks = _track_map(w)
    track = _check_point(tracks, point)
    tid, p = point
    result: list[tuple[str, int]] = []
    r = track.rule
    if isinstance(r, Identity):
        result.append(point)
    elif isinstance(r, (SuccessorShift, ChainAdvance)):
        if p >= 1:
            result.append((tid, p - 1))
    elif isinstance(r, CollapseShift):
        if p == 0:
            result.extend((tid, l) for l in range(r.head))
        else:
            result.append((tid, p + r.shift))
    elif isinstance(r, HeadToExternal):
        result.append((tid, p + r.head))
    elif isinstance(r, EvenOddFold):
        result.append((tid, 2 * p + 1))
    for other in w.tracks:
        ro = other.rule
        if isinstance(ro, HeadToExternal) and ro.target == point and other.id != tid:
            result.extend((other.id, l) for l in range(ro.head))
        elif isinstance(ro, EvenOddFold) and ro.chain == tid and other.id != tid:
            if p == 0:
                result.extend((other.id, 2 * u) for u in range(ro.head))
            else:
                base = ro.head + (p - 1) * ro.rate
                result.extend((other.id, 2 * (base + u)) for u in range(ro.rate))
    return result


# ---------------------------------------------------------------------------
# structural accounting (track value multiset against the spec multiset)


@lru_cache(maxsize=512)
def _supply(s: CardinalSpec):
    singles: dict[Cardinal, object] = {}
    aps = []
    for family, mult in s.entries:
        if isinstance(family, Single):
            prev = singles.get(family.value, 0)
            singles[family.value] = INF if (prev is INF or mult is INF) else prev + mult
        else:
            aps.append((family.first, family.step, mult))
    return singles, tuple(aps)


def _demand(w: WitnessMap):
    singles: dict[Cardinal, object] = {}
    aps: dict[tuple[int, int], int] = {}

    def add(c, count):
        prev = singles.get(c, 0)
        singles[c] = INF if (prev is INF or count is INF) else prev + count

    for t in w.tracks:
        if isinstance(t.values, ConstValue):
            add(t.values.value, INF if t.length is None else t.length)
        else:
            a, b = t.values.first, t.values.step
            if t.length is None:
                aps[(a, b)] = aps.get((a, b), 0) + 1
            else:
                for p in range(t.length):
                    add(fin(a + b * p), 1)
    return singles, aps


def _mult_at(v: int, singles, aps):
    total = singles.get(fin(v), 0)
    for a, b, mult in aps:
        if v >= a and (v - a) % b == 0:
            total = INF if (total is INF or mult is INF) else total + mult
    return total


def _structure_ok(s: CardinalSpec, w: WitnessMap):
    """Is the track value multiset a sub-multiset of the spec's?  Checked
    algebraically: explicit values up to a bound, then per residue class
    tail rates modulo the lcm of all steps."""
    sup_singles, sup_aps = _supply(s)
    dem_singles, dem_aps = _demand(w)
    for c, count in dem_singles.items():
        if c.aleph:
            available = sup_singles.get(c, 0)
            if (count is INF and available is not INF) or (
                count is not INF and available is not INF and count > available
            ):
                return f"needs {count} of {c}, spec provides {available}"
    steps = [b for _, b, _ in sup_aps] + [b for _, b in dem_aps]
    lcm = math.lcm(*steps) if steps else 1
    starts = [a for a, _, _ in sup_aps] + [a for a, _ in dem_aps]
    heads = [c.n for c in dem_singles if not c.aleph] + [
        c.n for c in sup_singles if not c.aleph
    ]
    bound = max(starts + heads, default=1) + 2 * lcm
    candidates = {c.n for c in dem_singles if not c.aleph}
    for (a, b), _count in dem_aps.items():
        candidates.update(range(a, bound + 1, b))
    for v in sorted(candidates):
        need = _mult_at(v, {k: m for k, m in dem_singles.items()}, [
            (a, b, c) for (a, b), c in dem_aps.items()
        ])
        have = _mult_at(v, sup_singles, sup_aps)
        if need is INF and have is not INF:
            return f"needs infinitely many of value {v}, spec provides {have}"
        if need is not INF and have is not INF and need > have:
            return f"needs {need} of value {v}, spec provides {have}"
    for cls in {a % lcm for (a, _b) in dem_aps}:
        need = sum(c for (a, b), c in dem_aps.items() if cls % b == a % b)
        have = 0
        for a, b, mult in sup_aps:
            if cls % b == a % b:
                have = INF if (have is INF or mult is INF) else have + mult
        if have is not INF and need > have:
            return f"tail of residue class {cls} mod {lcm} over-consumed"
    return None


# ---------------------------------------------------------------------------
# verification


_OMEGA_ONLY = (SuccessorShift, ChainAdvance, CollapseShift, HeadToExternal, EvenOddFold)


def _well_formed(tracks_by_id, w: WitnessMap):
    if len(tracks_by_id) != len(w.tracks):
        return "duplicate track ids"
    for t in w.tracks:
        if t.length is not None and t.length < 1:
            return f"track {t.id!r} has empty position range"
        if isinstance(t.values, AffineValue):
            if t.values.first < 1 or t.values.step < 1:
                return f"track {t.id!r} has a bad affine value rule"
        elif not isinstance(t.values, ConstValue):
            return f"track {t.id!r} has an unknown value rule"
        r = t.rule
        if t.length is not None and isinstance(r, _OMEGA_ONLY):
            return f"rule on finite track {t.id!r} cannot be inverted exactly"
        if isinstance(r, CollapseShift):
            if r.head < 2 or r.shift < 1 or r.head - r.shift != 1:
                return f"collapse parameters ({r.head},{r.shift}) do not tile the track"
        elif isinstance(r, HeadToExternal):
            if r.head < 1:
                return f"head count on {t.id!r} must be >= 1"
            tgt_id, tgt_pos = r.target
            if tgt_id == t.id or tgt_id not in tracks_by_id:
                return f"bad external target {r.target!r}"
            tgt = tracks_by_id[tgt_id]
            if tgt_pos < 0 or (tgt.length is not None and tgt_pos >= tgt.length):
                return f"external target {r.target!r} out of range"
        elif isinstance(r, EvenOddFold):
            if r.rate < 1 or r.head < 0:
                return f"fold parameters on {t.id!r} invalid"
            if r.chain == t.id or r.chain not in tracks_by_id:
                return f"bad chain target {r.chain!r}"
            if tracks_by_id[r.chain].length is not None:
                return f"chain {r.chain!r} must be omega-indexed"
        elif not isinstance(r, (Identity, SuccessorShift, ChainAdvance)):
            return f"unknown rule on track {t.id!r}"
    return None


def _feed_targets(w: WitnessMap) -> dict[tuple[str, int], int]:
    feeds: dict[tuple[str, int], int] = {}
    for t in w.tracks:
        if isinstance(t.rule, HeadToExternal):
            feeds[t.rule.target] = feeds.get(t.rule.target, 0) + t.rule.head
        elif isinstance(t.rule, EvenOddFold) and t.rule.head:
            pt = (t.rule.chain, 0)
            feeds[pt] = feeds.get(pt, 0) + t.rule.head
    return feeds


def _fold_sources(w: WitnessMap, chain_id: str):
    return [t for t in w.tracks if isinstance(t.rule, EvenOddFold) and t.rule.chain == chain_id]


def verify_witness(spec: CardinalSpec, w: WitnessMap, depth: int = 1000) -> VerificationReport:
    """Exact acceptance check of a witness against a spec.

    Checks structure, surjectivity, non-injectivity and the cardinal
    preservation identity at every point: explicitly up to `depth`
    positions per track, algebraically beyond.
    """
    s = normalize(spec)
    tracks = _track_map(w)
    problem = _well_formed(tracks, w)
    if problem:
        return _reject("StructureMismatch", problem)

    # Surjectivity: boundary positions not covered by a track's own rule
    # must be fed externally.
    feeds = _feed_targets(w)
    for t in w.tracks:
        r = t.rule
        if isinstance(r, (SuccessorShift, ChainAdvance)):
            fed = feeds.get((t.id, 0), 0)
            if not fed:
                return _reject("NotSurjective", f"position 0 of track {t.id!r} has no preimage")
            if isinstance(r, SuccessorShift) and _fold_sources(w, t.id):
                # folds feed every later stage; a plain shift already
                # covers those stages internally, so the map would not be
                # value-preserving there unless treated as a chain
                return _reject("StructureMismatch", f"fold feeds non-chain track {t.id!r}")

    # Tail closure: beyond the explicitly checked positions every rule
    # must preserve values generically.
    for t in w.tracks:
        r = t.rule
        if isinstance(r, (SuccessorShift, CollapseShift, HeadToExternal, EvenOddFold)):
            if isinstance(t.values, AffineValue):
                return _reject(
                    "EquationFails",
                    f"track {t.id!r}: shifted positions change an affine value",
                )
        if isinstance(r, ChainAdvance):
            folds = _fold_sources(w, t.id)
            stage_sum = 0
            for src in folds:
                if not isinstance(src.values, ConstValue) or src.values.value.aleph:
                    if isinstance(t.values, ConstValue) and t.values.value.aleph:
                        continue  # infinite absorption, checked pointwise
                    return _reject(
                        "EquationFails",
                        f"fold track {src.id!r} must carry a constant finite value",
                    )
                stage_sum += src.rule.rate * src.values.value.n
            if isinstance(t.values, AffineValue):
                if stage_sum != t.values.step:
                    return _reject(
                        "EquationFails",
                        f"chain {t.id!r}: per-stage consumption {stage_sum} "
                        f"!= chain increment {t.values.step}",
                    )
            elif not t.values.value.aleph:
                return _reject(
                    "EquationFails",
                    f"finite constant chain {t.id!r} cannot absorb consumption",
                )
            if folds:
                report = _check_periodicity(w, t, folds)
                if report:
                    return report

    if w.periodicity is not None and not any(
        isinstance(t.rule, ChainAdvance) and _fold_sources(w, t.id) for t in w.tracks
    ):
        return _reject("PeriodicityBroken", "certificate present but no consuming chain")

    # Pointwise identity up to depth, plus all feed targets.
    checkpoints = set(feeds)
    for t in w.tracks:
        top = depth if t.length is None else min(depth, t.length - 1)
        checkpoints.update((t.id, p) for p in range(top + 1))
    checked = 0
    for pt in checkpoints:
        pre = preimage(w, pt)
        checked += 1
        if pre == [pt]:
            continue
        if not pre:
            return _reject("NotSurjective", f"point {pt} has empty preimage")
        total = cardinal_sum(value_at(w, q) for q in pre)
        expected = value_at(w, pt)
        if total != expected:
            return _reject(
                "EquationFails",
                f"at {pt}: value {expected} != preimage sum {total}",
            )

    # Non-injectivity: inspect anchors, feed targets and early positions.
    candidates = set(feeds)
    for t in w.tracks:
        candidates.add((t.id, 0))
        if t.length is None or t.length > 1:
            candidates.add((t.id, 1))
    witness_point = None
    for pt in sorted(candidates):
        if len(preimage(w, pt)) >= 2:
            witness_point = pt
            break
    if witness_point is None:
        return _reject("Injective", "no point with two preimages")

    problem = _structure_ok(s, w)
    if problem:
        return _reject("StructureMismatch", problem)

    return VerificationReport(
        True, noninjective_point=witness_point, checked_points=checked
    )


def _check_periodicity(w: WitnessMap, chain: Track, folds):
    """The certificate must reproduce the folds' constant per-stage
    consumption multiset."""
    if w.periodicity is None:
        return _reject("PeriodicityBroken", f"chain {chain.id!r} has no periodicity certificate")
    cert = w.periodicity
    if cert.start < 1 or cert.period < 1:
        return _reject("PeriodicityBroken", "bad certificate bounds")
    actual: dict[int, int] = {}
    for src in folds:
        if isinstance(src.values, ConstValue) and not src.values.value.aleph:
            v = src.values.value.n
            actual[v] = actual.get(v, 0) + src.rule.rate
    if dict(cert.stage) != actual:
        return _reject(
            "PeriodicityBroken",
            f"certified stage multiset {dict(cert.stage)} != recomputed {actual}",
        )
    return None


# ---------------------------------------------------------------------------
# witness construction


def _inf_mult_values(s: CardinalSpec) -> list[Cardinal]:
    out = set()
    for family, mult in s.entries:
        if mult is not INF:
            continue
        if isinstance(family, Single):
            out.add(family.value)
        else:
            out.add(fin(family.first))
    return sorted(out)


def build_witness(s: CardinalSpec, case: NonRevCase) -> WitnessMap:
    """Build the certificate for a spec classified non-reversible with
    the given case."""
    s = normalize(s)
    verdict = classify(s)
    if verdict.reversible or verdict.case != case:
        raise NotApplicable(
            f"spec classifies as {verdict.case or 'reversible'}, not {case}"
        )
    if case is NonRevCase.INF_CARD_LEQ:
        return _build_inf_leq(s)
    if case is NonRevCase.INF_CARD_GT:
        return _build_inf_gt(s)
    if case is NonRevCase.DEPENDENT_K:
        return _build_dependent(s)
    return _build_divisible_tail(s)


def _build_inf_leq(s: CardinalSpec) -> WitnessMap:
    infs = sorted(
        f.value for f, _m in s.entries if isinstance(f, Single) and f.value.aleph
    )
    k0 = _inf_mult_values(s)[0]
    star = next(c for c in infs if k0 <= c)
    return WitnessMap(
        tracks=(
            Track("star", 1, ConstValue(star), Identity()),
            Track("feeder", None, ConstValue(k0), HeadToExternal(1, ("star", 0))),
        )
    )


def _build_inf_gt(s: CardinalSpec) -> WitnessMap:
    k0 = min(c for c in _inf_mult_values(s) if c.aleph)
    return WitnessMap(
        tracks=(Track("collapse", None, ConstValue(k0), CollapseShift(2, 1)),)
    )


def _build_dependent(s: CardinalSpec) -> WitnessMap:
    from .sequence import k_of

    m, dec = semigroup.find_dependent(k_of(s))
    tracks = [Track(f"val-{m}", None, ConstValue(fin(m)), SuccessorShift())]
    for g in sorted(dec):
        tracks.append(
            Track(
                f"val-{g}",
                None,
                ConstValue(fin(g)),
                HeadToExternal(dec[g], (f"val-{m}", 0)),
            )
        )
    return WitnessMap(tracks=tuple(tracks))


def _build_divisible_tail(s: CardinalSpec) -> WitnessMap:
    from .sequence import k_of

    k = sorted(k_of(s).singles)
    d = math.gcd(*k)
    cond = semigroup.conductor(k)
    values = value_set(s)
    chosen = min(
        (a, b) for a, b in values.aps if a % math.gcd(b, d) == 0
    )
    a, b = chosen
    # Sub-progression of d-divisible values of the family.
    g = math.gcd(b, d)
    t0 = next(t for t in range(d // g) if (a + b * t) % d == 0)
    v0 = a + b * t0
    step = b * (d // g)  # = lcm(b, d), a multiple of d
    low = max(d * cond, max(k) + 1, v0)
    q0 = v0 + step * -(-(low - v0) // step)
    delta = step * max(1, -(-(d * cond) // step))
    dec0 = semigroup.decompose(k, q0)
    dec_step = semigroup.decompose(k, delta)
    tracks = [Track("chain", None, AffineValue(q0, delta), ChainAdvance())]
    for m in k:
        head = dec0.get(m, 0)
        rate = dec_step.get(m, 0)
        if rate:
            tracks.append(
                Track(f"k-{m}", None, ConstValue(fin(m)), EvenOddFold(head, rate, "chain"))
            )
        elif head:
            tracks.append(
                Track(f"k-{m}", None, ConstValue(fin(m)), HeadToExternal(head, ("chain", 0)))
            )
    cert = Periodicity(1, 1, tuple(sorted(dec_step.items())))
    return WitnessMap(tracks=tuple(tracks), periodicity=cert)


# ---------------------------------------------------------------------------
# bounded template search (no-witness-for-reversible checks)


def search_bounded(
    s: CardinalSpec, max_tracks: int = 3, max_param: int = 5, depth: int = 25
) -> WitnessMap | None:
    """Exhaustive search over small witness templates; returns the first
    accepted witness, or None.

    For reversible specs no accepted witness can exist; the
    search cross-checks the verifier against that promise.
    """
    s = normalize(s)
    templates: list[tuple[object, int | None]] = []
    for family, mult in s.entries:
        if isinstance(family, Single):
            if mult is INF:
                templates.append((ConstValue(family.value), None))
            templates.append((ConstValue(family.value), 1))
        else:
            templates.append((AffineValue(family.first, family.step), None))
            if mult is INF:
                templates.append((ConstValue(fin(family.first)), None))
    for count in range(1, max_tracks + 1):
        for combo in itertools.combinations_with_replacement(templates, count):
            for w in _instantiate(combo, max_param):
                if verify_witness(s, w, depth=depth).accepted:
                    return w
    return None


def _rule_choices(slot, combo, max_param):
    values, length = combo[slot]
    others = [i for i in range(len(combo)) if i != slot]
    if length is not None:
        return [Identity()]
    if isinstance(values, AffineValue):
        # any shifting rule changes an affine value and is always rejected
        return [Identity(), ChainAdvance()]
    choices = [Identity(), SuccessorShift(), ChainAdvance()]
    c = values.value
    if c.aleph:
        choices.extend(
            CollapseShift(h, k) for h in range(2, max_param + 1) for k in range(1, h)
        )
    for other in others:
        tvals, _ = combo[other]
        # finite bound on what the target position 0 can absorb
        if isinstance(tvals, ConstValue):
            cap = None if tvals.value.aleph else tvals.value.n
        else:
            cap = tvals.first
        if c.aleph:
            if isinstance(tvals, ConstValue) and tvals.value.aleph:
                choices.extend(
                    HeadToExternal(k, (f"t{other}", 0)) for k in range(1, max_param + 1)
                )
            continue
        for k in range(1, max_param + 1):
            if cap is not None and k * c.n > cap:
                break
            choices.append(HeadToExternal(k, (f"t{other}", 0)))
        if isinstance(tvals, AffineValue) or (
            isinstance(tvals, ConstValue) and tvals.value.aleph
        ):
            step_cap = tvals.step if isinstance(tvals, AffineValue) else None
            for head in range(0, max_param + 1):
                if cap is not None and head * c.n > cap:
                    break
                for rate in range(1, max_param + 1):
                    if step_cap is not None and rate * c.n > step_cap:
                        break
                    choices.append(EvenOddFold(head, rate, f"t{other}"))
    return choices


def _instantiate(combo, max_param):
    slot_choices = [_rule_choices(i, combo, max_param) for i in range(len(combo))]
    for rules in itertools.product(*slot_choices):
        if not any(
            isinstance(r, (CollapseShift, HeadToExternal, EvenOddFold)) for r in rules
        ):
            continue  # cannot be non-injective
        fed = {r.target[0] for r in rules if isinstance(r, HeadToExternal)}
        fed.update(r.chain for r in rules if isinstance(r, EvenOddFold))
        ok = True
        for i, r in enumerate(rules):
            if isinstance(r, (SuccessorShift, ChainAdvance)) and f"t{i}" not in fed:
                ok = False  # boundary position would have no preimage
                break
            if isinstance(r, EvenOddFold):
                target_rule = rules[int(r.chain[1:])]
                if not isinstance(target_rule, ChainAdvance):
                    ok = False  # consumption needs an advancing chain
                    break
        if not ok:
            continue
        tracks = tuple(
            Track(f"t{i}", length, values, rule)
            for i, ((values, length), rule) in enumerate(zip(combo, rules))
        )
        folds: dict[int, int] = {}
        for t in tracks:
            if isinstance(t.rule, EvenOddFold) and isinstance(t.values, ConstValue):
                if not t.values.value.aleph:
                    v = t.values.value.n
                    folds[v] = folds.get(v, 0) + t.rule.rate
        cert = Periodicity(1, 1, tuple(sorted(folds.items()))) if folds else None
        yield WitnessMap(tracks=tracks, periodicity=cert)
