"""Disconnected binary structures: component extraction, finite
brute-force reversibility, and union-level decisions over a catalog of
component kinds whose reversibility reduces to the cardinal sequence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotIncreasing, OrdinalTooLarge, ParseError, TooLarge, ZeroValue
from .sequence import (
    INF,
    AP,
    Cardinal,
    CardinalSpec,
    OMEGA,
    Single,
    fin,
)


@dataclass(frozen=True)
class FiniteBinaryStructure:
    vertices: frozenset
    edges: frozenset  # ordered pairs, loops allowed

    def __post_init__(self):
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u!r},{v!r}) leaves the vertex set")


def components(s: FiniteBinaryStructure) -> list[frozenset]:
    """Connected components: classes of the minimal equivalence relation
    containing the edge relation (reflexive-symmetric-transitive closure)."""
    parent = {v: v for v in s.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in s.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    blocks: dict = {}
    for v in s.vertices:
        blocks.setdefault(find(v), set()).add(v)
    return sorted((frozenset(b) for b in blocks.values()), key=lambda b: sorted(map(repr, b)))


def brute_reversible(s: FiniteBinaryStructure, max_vertices: int = 8):
    """Exhaustive check that every vertex permutation mapping the edge set
    into itself maps it onto itself.

    Returns (True, None), or (False, violating_permutation).  Finite
    structures always satisfy this (the image of the edge set has the
    same size), so the scan doubles as a self-test.
    """
    if len(s.vertices) > max_vertices:
        raise TooLarge(f"{len(s.vertices)} vertices exceeds the bound {max_vertices}")
    verts = sorted(s.vertices, key=repr)
    for perm in itertools.permutations(verts):
        f = dict(zip(verts, perm))
        image = {(f[u], f[v]) for u, v in s.edges}
        if image <= s.edges and image != s.edges:
            return False, f
    return True, None


def parse_edge_list(text: str) -> FiniteBinaryStructure:
    """Edge-list format: one "u v" pair per line, '#' to end of line is a
    comment, bare "u" declares an isolated vertex."""
    vertices = set()
    edges = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [int(p) if p.isdigit() else p for p in line.split()]
        if len(parts) == 1:
            vertices.add(parts[0])
        elif len(parts) == 2:
            u, v = parts
            vertices.update((u, v))
            edges.add((u, v))
        else:
            raise ParseError(f"bad edge line {raw!r}")
    return FiniteBinaryStructure(frozenset(vertices), frozenset(edges))


# ---------------------------------------------------------------------------
# unions of catalog components

RFM_KINDS = ("full", "kgraph", "ordinal", "a2chain")
KINDS = RFM_KINDS + ("chain",)


@dataclass(frozen=True)
class ComponentKind:
    """A catalog component: full relation, complete graph, ordinal <= omega,
    opaque linear order, or a two-element antichain followed by a chain.

    `size` is a Single cardinal or an AP family of finite sizes, so a
    union entry can describe one component of every size along a
    progression."""

    kind: str
    size: object  # Single | AP
    tag: str | None = None  # linear-order name, "chain" kind only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}")
        if not isinstance(self.size, (Single, AP)):
            raise TypeError(f"bad size {self.size!r}")
        if self.kind == "ordinal" and isinstance(self.size, Single):
            c = self.size.value
            if c.aleph and c.n > 0:
                raise OrdinalTooLarge(f"ordinal components are bounded by omega, got {c}")
        if (self.tag is not None) != (self.kind == "chain"):
            raise ValueError("exactly the chain kind carries an order-type tag")

    def cardinality(self):
        """Size family of the component(s), as a spec value family."""
        if self.kind != "a2chain":
            return self.size
        # antichain of two points followed by the chain part
        if isinstance(self.size, AP):
            return AP(self.size.first + 2, self.size.step)
        c = self.size.value
        return Single(c if c.aleph else fin(c.n + 2))


@dataclass(frozen=True)
class UnionSpec:
    components: tuple[tuple[ComponentKind, object], ...]  # (kind, int|INF)

    def __post_init__(self):
        if not self.components:
            raise ZeroValue("a union needs at least one component entry")


@dataclass(frozen=True)
class UnionVerdict:
    verdict: str  # "reversible" | "not-reversible" | "unknown"
    path: str | None = None  # "tb048" | "tb047-sufficient"
    reason: str | None = None
    witness: object | None = None
    cardinal_verdict: object | None = None


def cardinal_spec_of(u: UnionSpec) -> CardinalSpec:
    return CardinalSpec(tuple((k.cardinality(), m) for k, m in u.components))


def decide_union(u: UnionSpec) -> UnionVerdict:
    """Union-level decision.

    Single-family catalog kinds that are rich for monomorphisms get an
    iff decision through the cardinal sequence (non-reversibility lifts
    the sequence witness).  All-linear-order unions get the sufficient
    direction only; everything else is Unknown.
    """
    from .sequence import decide

    kinds = {k.kind for k, _ in u.components}
    if len(kinds) > 1:
        return UnionVerdict("unknown", reason="mixed component kinds; no general criterion")
    kind = kinds.pop()
    seq_verdict = decide(cardinal_spec_of(u))
    if kind in RFM_KINDS:
        if seq_verdict.reversible:
            return UnionVerdict("reversible", path="tb048", cardinal_verdict=seq_verdict)
        return UnionVerdict(
            "not-reversible",
            path="tb048",
            witness=seq_verdict.witness,
            cardinal_verdict=seq_verdict,
        )
    if seq_verdict.reversible:
        return UnionVerdict("reversible", path="tb047-sufficient", cardinal_verdict=seq_verdict)
    return UnionVerdict(
        "unknown",
        reason=(
            "component size sequence is not reversible; for linear orders that "
            "is sufficient evidence in neither direction"
        ),
        cardinal_verdict=seq_verdict,
    )


def gen_rb001(a: list[int], tail_first: int, tail_step: int) -> UnionSpec:
    """Equivalence relation (full-relation blocks) with one block of each
    listed size plus one block of each size along the tail progression.
    Block sizes are pairwise distinct, so the cardinal sequence is
    one-to-one and the union is reversible."""
    if any(x < 1 for x in a):
        raise ZeroValue("block sizes must be >= 1")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise NotIncreasing(f"{a} is not strictly increasing")
    if tail_step < 1 or (a and tail_first <= a[-1]):
        raise NotIncreasing("tail must continue strictly beyond the finite part")
    entries = [(ComponentKind("full", Single(fin(n))), 1) for n in a]
    entries.append((ComponentKind("full", AP(tail_first, tail_step)), 1))
    return UnionSpec(tuple(entries))
