"""Exact arithmetic over the additive semigroup generated by a finite set
of positive naturals: membership, independence, conductor bounds and
deterministic decompositions.

The semigroup generated by K consists of all sums of one or more elements
of K with repetition allowed; in particular 0 is never a member and the
empty set generates the empty semigroup.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import EmptySet, IsIndependent, NotRepresentable


def _check_generators(k) -> frozenset[int]:
    elems = frozenset(k)
    for x in elems:
        if not isinstance(x, int) or x < 1:
            raise ValueError(f"generators must be positive naturals, got {x!r}")
    return elems


def gcd_of(k) -> int:
    """Greatest common divisor of a non-empty generator set."""
    elems = _check_generators(k)
    if not elems:
        raise EmptySet("gcd of the empty set is undefined")
    return math.gcd(*elems)


def contains(k, n: int) -> bool:
    """Membership of n >= 1 in the semigroup generated by k.

    DP over amounts 0..n; an amount is reachable iff it is a sum of one
    or more generators (all generators are >= 1, so any positive
    reachable amount uses at least one summand).
    """
    elems = _check_generators(k)
    if n < 1:
        raise ValueError(f"membership is defined for n >= 1, got {n}")
    if not elems:
        return False
    reachable = [False] * (n + 1)
    reachable[0] = True
    gens = sorted(elems)
    for amount in range(1, n + 1):
        for g in gens:
            if g > amount:
                break
            if reachable[amount - g]:
                reachable[amount] = True
                break
    return reachable[n]


def is_independent(k) -> bool:
    """True iff no element is a sum of the other elements (the empty set
    is independent)."""
    elems = _check_generators(k)
    return not any(contains(elems - {n}, n) for n in elems)


def conductor(k) -> int:
    """Minimal M such that every multiple of d = gcd(k) that is >= d*M
    lies in the semigroup generated by k."""
    elems = _check_generators(k)
    if not elems:
        raise EmptySet("conductor of the empty set is undefined")
    d = math.gcd(*elems)
    norm = sorted(x // d for x in elems)
    m1 = norm[0]
    if m1 == 1:
        return 1
    # A run of m1 consecutive representable amounts proves everything
    # beyond is representable; the two-generator Frobenius bound usually
    # suffices, but the search is self-verifying so the bound may grow.
    bound = norm[0] * norm[1] if len(norm) > 1 else norm[0] ** 2
    while True:
        reachable = [False] * (bound + m1 + 1)
        reachable[0] = True
        for amount in range(1, len(reachable)):
            for g in norm:
                if g > amount:
                    break
                if reachable[amount - g]:
                    reachable[amount] = True
                    break
        run = 0
        for amount in range(1, len(reachable)):
            run = run + 1 if reachable[amount] else 0
            if run == m1:
                return amount - m1 + 1
        bound *= 2


def decompose(k, n: int) -> dict[int, int]:
    """A decomposition of n over k as a map generator -> count.

    Deterministic: among valid decompositions the one maximizing the
    coefficient of the largest generator is chosen, ties broken towards
    the next-largest, via greedy descent with backtracking over a
    reachability table.
    """
    elems = _check_generators(k)
    if n < 1 or not contains(elems, n):
        raise NotRepresentable(f"{n} is not generated by {sorted(elems)}")
    gens = sorted(elems, reverse=True)
    # reachable_by_suffix[i][a]: a is a sum (possibly empty) of gens[i:]
    reachable = [[False] * (n + 1) for _ in range(len(gens) + 1)]
    reachable[len(gens)][0] = True
    for i in range(len(gens) - 1, -1, -1):
        g = gens[i]
        for a in range(n + 1):
            reachable[i][a] = reachable[i + 1][a] or (a >= g and reachable[i][a - g])
    coeffs: dict[int, int] = {}
    remaining = n
    for i, g in enumerate(gens):
        for count in range(remaining // g, -1, -1):
            if reachable[i + 1][remaining - count * g]:
                if count:
                    coeffs[g] = count
                remaining -= count * g
                break
    assert remaining == 0
    return coeffs


@dataclass(frozen=True)
class ValueSetDescriptor:
    """Finite description of a possibly-infinite set of positive naturals:
    an explicit finite part plus arithmetic-progression families
    {first + step*t : t >= 0}."""

    singles: frozenset[int] = field(default_factory=frozenset)
    aps: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for v in self.singles:
            if v < 1:
                raise ValueError(f"values must be >= 1, got {v}")
        for first, step in self.aps:
            if first < 1 or step < 1:
                raise ValueError(f"bad AP ({first},{step})")

    @property
    def is_infinite(self) -> bool:
        return bool(self.aps)

    @property
    def is_empty(self) -> bool:
        return not self.singles and not self.aps

    def __contains__(self, n: int) -> bool:
        if n in self.singles:
            return True
        return any(n >= a and (n - a) % b == 0 for a, b in self.aps)

    def gcd(self) -> int:
        """gcd of all described values (an AP contributes gcd(first, step))."""
        if self.is_empty:
            raise EmptySet("gcd of the empty set is undefined")
        parts = list(self.singles) + [math.gcd(a, b) for a, b in self.aps]
        return math.gcd(*parts)

    def iter_increasing(self):
        """Yield the described values in strictly increasing order."""
        heap: list[tuple[int, int, int]] = []
        for v in self.singles:
            heap.append((v, 0, 0))
        for a, b in self.aps:
            heap.append((a, b, 0))
        heapq.heapify(heap)
        last = None
        while heap:
            v, step, t = heapq.heappop(heap)
            if step:
                heapq.heappush(heap, (v + step, step, t + 1))
            if v != last:
                last = v
                yield v


def find_dependent(v: ValueSetDescriptor) -> tuple[int, dict[int, int]]:
    """An element n of the described set together with a decomposition of
    n over other elements of the set.

    For a finite set this is a direct search.  For an infinite set a
    finite subset K' with gcd(K') = gcd(V) is extracted, its conductor
    computed, and n is taken from the tail of V beyond the conductor.
    """
    if v.is_empty:
        raise IsIndependent("the empty set is independent")
    if not v.is_infinite:
        for n in sorted(v.singles):
            rest = v.singles - {n}
            if rest and contains(rest, n):
                return n, decompose(rest, n)
        raise IsIndependent(f"{sorted(v.singles)} is independent")
    d = v.gcd()
    kprime: list[int] = []
    for value in v.iter_increasing():
        kprime.append(value)
        if math.gcd(*kprime) == d:
            break
    kset = frozenset(kprime)
    m = conductor(kset)
    for n in v.iter_increasing():
        if n >= d * m and n not in kset:
            return n, decompose(kset, n)
    raise AssertionError("infinite set must contain a tail element")


def members_oracle(k, limit: int) -> set[int]:
    """Brute-force enumeration of all semigroup members up to limit, by
    exhausting bounded coefficient vectors.  Independent of the DP; used
    as a test oracle."""
    elems = sorted(_check_generators(k))
    result: set[int] = set()

    def walk(i: int, total: int, used: bool):
        if i == len(elems):
            if used:
                result.add(total)
            return
        g = elems[i]
        for count in range(0, (limit - total) // g + 1):
            walk(i + 1, total + count * g, used or count > 0)

    if elems:
        walk(0, 0, False)
        result.discard(0)
        result = {n for n in result if n <= limit}
    return result
