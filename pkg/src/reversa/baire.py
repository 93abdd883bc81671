"""Piecewise-described total functions on the naturals, viewed as
integer sequences: compilation to cardinal specs, composition, and the
density extension of finite prefixes to reversible functions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadPartition, ZeroValue
from .sequence import AP, CardinalSpec, INF, Single, fin, normalize, spec


@dataclass(frozen=True)
class APIndex:
    """Index domain {first + step*t : t >= 0}."""

    first: int
    step: int

    def __post_init__(self):
        if self.first < 0 or self.step < 1:
            raise ZeroValue(f"bad index progression ({self.first},{self.step})")


@dataclass(frozen=True)
class FiniteIndex:
    indices: frozenset[int]

    def __post_init__(self):
        if any(i < 0 for i in self.indices):
            raise ZeroValue("indices must be naturals")


@dataclass(frozen=True)
class ConstRule:
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ZeroValue(f"output values must be >= 1, got {self.value}")


@dataclass(frozen=True)
class AffineRule:
    """The t-th index of the piece (in increasing order) maps to
    first + step*t."""

    first: int
    step: int

    def __post_init__(self):
        if self.first < 1 or self.step < 0:
            raise ZeroValue(f"bad affine rule ({self.first},{self.step})")


@dataclass(frozen=True)
class BaireFunc:
    pieces: tuple[tuple[object, object], ...]  # (APIndex|FiniteIndex, rule)

    def __post_init__(self):
        _check_partition([dom for dom, _ in self.pieces])

    def __call__(self, i: int) -> int:
        for dom, rule in self.pieces:
            t = _position(dom, i)
            if t is not None:
                return rule.value if isinstance(rule, ConstRule) else rule.first + rule.step * t
        raise AssertionError(f"index {i} uncovered despite partition check")


def _position(dom, i: int):
    if isinstance(dom, FiniteIndex):
        if i in dom.indices:
            return sorted(dom.indices).index(i)
        return None
    if i >= dom.first and (i - dom.first) % dom.step == 0:
        return (i - dom.first) // dom.step
    return None


def _check_partition(domains):
    """Piece domains must cover every natural exactly once: explicit scan
    up to a stabilization bound, then per-residue-class tail counts."""
    aps = [d for d in domains if isinstance(d, APIndex)]
    fins = [d for d in domains if isinstance(d, FiniteIndex)]
    if len(aps) + len(fins) != len(domains):
        raise TypeError("unknown piece domain")
    if not aps:
        raise BadPartition("finitely many pieces cannot cover all naturals without a progression")
    lcm = math.lcm(*[d.step for d in aps])
    bound = max(
        [d.first for d in aps] + [max(d.indices, default=0) for d in fins], default=0
    ) + 2 * lcm
    for i in range(bound + 1):
        hits = sum(1 for d in domains if _position(d, i) is not None)
        if hits != 1:
            raise BadPartition(f"index {i} covered {hits} times")
    for cls in range(lcm):
        tail = sum(1 for d in aps if cls % d.step == d.first % d.step)
        if tail != 1:
            raise BadPartition(f"residue class {cls} mod {lcm} covered {tail} times in the tail")


def compile_to_spec(f: BaireFunc) -> CardinalSpec:
    """The cardinal spec whose multiplicity at v is the number of indices
    mapped to v."""
    entries = []
    for dom, rule in f.pieces:
        infinite = isinstance(dom, APIndex)
        size = None if infinite else len(dom.indices)
        if isinstance(rule, ConstRule) or rule.step == 0:
            v = rule.value if isinstance(rule, ConstRule) else rule.first
            if size != 0:
                entries.append((Single(fin(v)), INF if infinite else size))
        elif infinite:
            entries.append((AP(rule.first, rule.step), 1))
        else:
            entries.extend((Single(fin(rule.first + rule.step * t)), 1) for t in range(size))
    return normalize(spec(*entries))


def compose(outer: BaireFunc, inner: BaireFunc) -> BaireFunc:
    """Pointwise composition outer(inner(i)) as a piecewise function.

    Affine pieces are split along the outer partition by residue
    arithmetic; everything landing in finite outer pieces is evaluated
    pointwise."""
    pieces = []
    pointwise: dict[int, int] = {}
    for dom, rule in inner.pieces:
        if isinstance(rule, ConstRule) or rule.step == 0:
            v = rule.value if isinstance(rule, ConstRule) else rule.first
            pieces.append((dom, ConstRule(outer(v))))
            continue
        if isinstance(dom, FiniteIndex):
            for t, i in enumerate(sorted(dom.indices)):
                pointwise[i] = outer(rule.first + rule.step * t)
            continue
        a, b = rule.first, rule.step
        for odom, orule in outer.pieces:
            if isinstance(odom, FiniteIndex):
                for v in odom.indices:
                    if v >= a and (v - a) % b == 0:
                        t = (v - a) // b
                        pointwise[dom.first + dom.step * t] = outer(v)
                continue
            big_f, big_s = odom.first, odom.step
            g = math.gcd(b, big_s)
            if (big_f - a) % g != 0:
                continue
            period = big_s // g
            t0 = next(t for t in range(period) if (a + b * t - big_f) % big_s == 0)
            t_min = t0
            while a + b * t_min < big_f:
                t_min += period
            new_dom = APIndex(dom.first + dom.step * t_min, dom.step * period)
            if isinstance(orule, ConstRule):
                pieces.append((new_dom, ConstRule(orule.value)))
            else:
                u0 = (a + b * t_min - big_f) // big_s
                u_step = b * period // big_s
                pieces.append(
                    (new_dom, AffineRule(orule.first + orule.step * u0, orule.step * u_step))
                )
    for v in sorted(set(pointwise.values())):
        idx = frozenset(i for i, val in pointwise.items() if val == v)
        pieces.append((FiniteIndex(idx), ConstRule(v)))
    return BaireFunc(tuple(pieces))


def extend_to_reversible(prefix: dict[int, int]) -> BaireFunc:
    """A total function agreeing with the finite prefix, finite-to-one
    overall: every index outside the prefix gets a fresh value above the
    prefix range, strictly increasing."""
    for i, v in prefix.items():
        if i < 0 or v < 1:
            raise ZeroValue(f"bad prefix pair {i} -> {v}")
    pieces = []
    for v in sorted(set(prefix.values())):
        idx = frozenset(i for i, val in prefix.items() if val == v)
        pieces.append((FiniteIndex(idx), ConstRule(v)))
    top = max(prefix, default=-1) + 1
    base = max(prefix.values(), default=0) + 1
    gaps = [i for i in range(top) if i not in prefix]
    if gaps:
        pieces.append((FiniteIndex(frozenset(gaps)), AffineRule(base, 1)))
    pieces.append((APIndex(top, 1), AffineRule(base + len(gaps), 1)))
    return BaireFunc(tuple(pieces))


def composition_counterexample() -> tuple[BaireFunc, BaireFunc]:
    """The concrete pair whose composition leaves the reversible class.

    The first function sends 2 to 2, one cofinite set with infinitely
    many odds to 3 and the complementary set to 5; the second covers the
    odd parts of those sets bijectively from two residue classes mod 3
    and sends the third class to 2."""
    phi = BaireFunc(
        (
            (FiniteIndex(frozenset({2})), ConstRule(2)),
            (APIndex(1, 4), ConstRule(3)),  # odds 1 mod 4
            (APIndex(4, 2), ConstRule(3)),  # evens >= 4
            (FiniteIndex(frozenset({0})), ConstRule(5)),
            (APIndex(3, 4), ConstRule(5)),  # odds 3 mod 4
        )
    )
    psi = BaireFunc(
        (
            (APIndex(0, 3), ConstRule(2)),
            (APIndex(1, 3), AffineRule(1, 4)),  # bijection onto odds 1 mod 4
            (APIndex(2, 3), AffineRule(3, 4)),  # bijection onto odds 3 mod 4
        )
    )
    return phi, psi
