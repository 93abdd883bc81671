"""Finite descriptions of indexed cardinal sequences and the top-level
reversibility decision.

A spec is a finite list of (value family, multiplicity) entries.  A
family is either a single cardinal or an arithmetic progression of
finite values; a multiplicity is a positive integer or countably
infinite (math.inf).  The described sequence contains each value with
the total multiplicity accumulated over all entries covering it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from . import semigroup
from .errors import ZeroValue
from .semigroup import ValueSetDescriptor

INF = math.inf


@total_ordering
@dataclass(frozen=True)
class Cardinal:
    """Fin(n >= 1) or Aleph(k); aleph 0 is omega.  Ordered with all
    finite cardinals below all alephs."""

    aleph: bool
    n: int

    def __post_init__(self):
        if self.aleph:
            if self.n < 0:
                raise ZeroValue(f"aleph index must be >= 0, got {self.n}")
        elif self.n < 1:
            raise ZeroValue(f"finite cardinals must be >= 1, got {self.n}")

    @property
    def is_infinite(self) -> bool:
        return self.aleph

    def _key(self):
        return (1 if self.aleph else 0, self.n)

    def __lt__(self, other: "Cardinal") -> bool:
        return self._key() < other._key()

    def __repr__(self):
        return f"aleph({self.n})" if self.aleph else f"fin({self.n})"


def fin(n: int) -> Cardinal:
    return Cardinal(False, n)


def aleph(k: int) -> Cardinal:
    return Cardinal(True, k)


OMEGA = aleph(0)


def cardinal_sum(values) -> Cardinal:
    """Sum of a finite multiset of cardinals; any infinite summand makes
    the sum the maximum of the summands."""
    values = list(values)
    if not values:
        raise ValueError("empty cardinal sum")
    if any(v.is_infinite for v in values):
        return max(values)
    return fin(sum(v.n for v in values))


@dataclass(frozen=True)
class Single:
    value: Cardinal


@dataclass(frozen=True)
class AP:
    """The infinite family of finite values {first + step*t : t >= 0}."""

    first: int
    step: int

    def __post_init__(self):
        if self.first < 1 or self.step < 1:
            raise ZeroValue(f"bad AP ({self.first},{self.step})")

    def covers(self, v: int) -> bool:
        return v >= self.first and (v - self.first) % self.step == 0


def _check_mult(mult):
    if mult is INF:
        return
    if not isinstance(mult, int) or mult < 1:
        raise ZeroValue(f"multiplicity must be >= 1 or inf, got {mult!r}")


@dataclass(frozen=True)
class CardinalSpec:
    entries: tuple[tuple[object, object], ...]  # (Single|AP, int|INF)

    def __post_init__(self):
        if not self.entries:
            raise ZeroValue("a spec needs at least one entry")
        for family, mult in self.entries:
            if not isinstance(family, (Single, AP)):
                raise TypeError(f"bad family {family!r}")
            _check_mult(mult)


def spec(*entries) -> CardinalSpec:
    """Convenience constructor: spec((Single(fin(2)), INF), (AP(1,2), 1))."""
    return CardinalSpec(tuple(entries))


def _entry_sort_key(item):
    family, mult = item
    if isinstance(family, Single):
        return (0, family.value._key(), 0)
    return (1, (0, family.first), family.step)


def normalize(s: CardinalSpec) -> CardinalSpec:
    """Canonical form: duplicate singles merged, single/AP overlaps split
    out of the AP, overlapping APs rewritten to a common modulus with a
    finite head of singles, entries sorted."""
    singles: dict[Cardinal, object] = {}
    aps: list[tuple[int, int, object]] = []

    def add_single(c, mult):
        prev = singles.get(c, 0)
        singles[c] = INF if (prev is INF or mult is INF) else prev + mult

    for family, mult in s.entries:
        if isinstance(family, Single):
            add_single(family.value, mult)
        else:
            aps.append((family.first, family.step, mult))

    # Rewrite overlapping APs to the lcm of their steps, so that families
    # in the same residue class can be combined with a finite head.
    def overlap(p, q):
        (a1, b1, _), (a2, b2, _) = p, q
        g = math.gcd(b1, b2)
        return (a1 - a2) % g == 0

    if len(aps) > 1 and any(
        overlap(aps[i], aps[j]) for i in range(len(aps)) for j in range(i + 1, len(aps))
    ):
        lcm = math.lcm(*[b for _, b, _ in aps])
        split = []
        for a, b, mult in aps:
            split.extend((a + b * i, lcm, mult) for i in range(lcm // b))
        classes: dict[int, list[tuple[int, object]]] = {}
        for a, b, mult in split:
            classes.setdefault(a % lcm, []).append((a, mult))
        aps = []
        for starts in classes.values():
            starts.sort()
            # Head values covered by only a prefix of the stacked families
            # become singles; the common tail is a single AP entry.
            top = starts[-1][0]
            running = 0
            for idx, (a, mult) in enumerate(starts):
                running = INF if (running is INF or mult is INF) else running + mult
                upto = starts[idx + 1][0] if idx + 1 < len(starts) else top
                for v in range(a, upto, lcm):
                    add_single(fin(v), running)
            aps.append((top, lcm, running))

    # Pull single values out of AP families they fall in (finite heads).
    changed = True
    while changed:
        changed = False
        for i, (a, b, mult) in enumerate(aps):
            hits = [c.n for c in singles if not c.aleph and AP(a, b).covers(c.n)]
            if hits:
                top = max(hits)
                for v in range(a, top + 1, b):
                    add_single(fin(v), mult)
                aps[i] = (top + b, b, mult)
                changed = True

    entries = [(Single(c), m) for c, m in singles.items()]
    entries.extend((AP(a, b), m) for a, b, m in aps)
    entries.sort(key=_entry_sort_key)
    return CardinalSpec(tuple(entries))


def multiplicity(s: CardinalSpec, value: Cardinal):
    """Total multiplicity of a value in a normalized spec."""
    total = 0
    for family, mult in s.entries:
        if isinstance(family, Single):
            if family.value == value:
                total = INF if (total is INF or mult is INF) else total + mult
        elif not value.aleph and family.covers(value.n):
            total = INF if (total is INF or mult is INF) else total + mult
    return total


def is_finite_to_one(s: CardinalSpec) -> bool:
    """True iff no value has infinite total multiplicity (the spec must be
    normalized, so per-entry multiplicities are total)."""
    return all(mult is not INF for _, mult in s.entries)


def k_of(s: CardinalSpec) -> ValueSetDescriptor:
    """The set of finite values attained infinitely often, as a descriptor."""
    singles = set()
    aps = set()
    for family, mult in s.entries:
        if mult is not INF:
            continue
        if isinstance(family, Single):
            assert not family.value.aleph, "aleph values are routed to the infinite-cardinal path"
            singles.add(family.value.n)
        else:
            aps.add((family.first, family.step))
    return ValueSetDescriptor(frozenset(singles), frozenset(aps))


def value_set(s: CardinalSpec) -> ValueSetDescriptor:
    """All distinct finite values of a normalized all-finite spec."""
    singles = set()
    aps = set()
    for family, mult in s.entries:
        if isinstance(family, Single):
            singles.add(family.value.n)
        else:
            aps.add((family.first, family.step))
    return ValueSetDescriptor(frozenset(singles), frozenset(aps))


def count_divisible(values: ValueSetDescriptor, d: int):
    """Number of distinct described values divisible by d, or math.inf.

    An AP(a, b) contains infinitely many multiples of d iff the
    congruence a + b*t = 0 (mod d) is solvable, i.e. gcd(b, d) | a.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    hit: set[int] = set()
    for a, b in values.aps:
        if a % math.gcd(b, d) == 0:
            return INF
    for v in values.singles:
        if v % d == 0:
            hit.add(v)
    return len(hit)


class NonRevCase(Enum):
    INF_CARD_LEQ = "inf-card-leq"
    INF_CARD_GT = "inf-card-gt"
    DEPENDENT_K = "dependent-k"
    DIVISIBLE_TAIL = "divisible-tail"


@dataclass(frozen=True)
class Verdict:
    reversible: bool
    reason: str | None = None  # "finite-to-one" | "independent-k-finite-divisibles"
    case: NonRevCase | None = None
    witness: object | None = None
    k: ValueSetDescriptor | None = None
    gcd: int | None = None


def _infinite_values(s: CardinalSpec) -> list[Cardinal]:
    out = set()
    for family, mult in s.entries:
        if isinstance(family, Single) and family.value.aleph:
            out.add(family.value)
    return sorted(out)


def classify(s: CardinalSpec) -> Verdict:
    """The reversibility decision, without witness construction.

    The returned Verdict carries the non-reversibility case tag but a
    None witness; decide() fills the witness in.
    """
    s = normalize(s)
    if is_finite_to_one(s):
        return Verdict(True, reason="finite-to-one")
    infs = _infinite_values(s)
    if infs:
        inf_mult = sorted(
            f.value for f, m in s.entries if m is INF and isinstance(f, Single)
        )
        ap_inf = any(m is INF and isinstance(f, AP) for f, m in s.entries)
        # Smallest infinitely-repeated value against the smallest infinite
        # value present; both infinite-cardinal constructions are reachable.
        k0 = fin(min(f.first for f, m in s.entries if m is INF and isinstance(f, AP))) if ap_inf and not inf_mult else inf_mult[0]
        if ap_inf and inf_mult:
            k0 = min(k0, fin(min(f.first for f, m in s.entries if m is INF and isinstance(f, AP))))
        star = infs[0]
        case = NonRevCase.INF_CARD_LEQ if k0 <= star else NonRevCase.INF_CARD_GT
        return Verdict(False, case=case)
    k = k_of(s)
    assert not k.is_empty, "a non-finite-to-one all-finite spec has non-empty K"
    if k.is_infinite or not semigroup.is_independent(k.singles):
        return Verdict(False, case=NonRevCase.DEPENDENT_K, k=k)
    d = semigroup.gcd_of(k.singles)
    if count_divisible(value_set(s), d) is INF:
        return Verdict(False, case=NonRevCase.DIVISIBLE_TAIL, k=k, gcd=d)
    return Verdict(True, reason="independent-k-finite-divisibles", k=k, gcd=d)


def decide(s: CardinalSpec) -> Verdict:
    """Full decision: reversible with a reason, or not reversible with a
    verified witness certificate attached."""
    s = normalize(s)
    verdict = classify(s)
    if verdict.reversible:
        return verdict
    from . import witness as witness_mod

    w = witness_mod.build_witness(s, verdict.case)
    return Verdict(False, case=verdict.case, witness=w, k=verdict.k, gcd=verdict.gcd)
