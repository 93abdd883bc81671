"""Text grammar for specs, unions, piecewise functions and generator
sets, with printers that round-trip through the parser.

Whitespace-insensitive; '#' starts a comment to end of line; numbers
beyond the 64-bit range are rejected."""

from __future__ import annotations

from .baire import AffineRule, APIndex, BaireFunc, ConstRule, FiniteIndex
from .errors import OrdinalTooLarge, Overflow, ParseError, ZeroValue
from .sequence import AP, CardinalSpec, INF, Single, aleph, fin, normalize
from .structures import ComponentKind, UnionSpec

MAX_NAT = 2**63

_PUNCT = ("->", "{", "}", "(", ")", ",", ";", "=")


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int, int]] = []  # kind, value, line, col
        line, col = 1, 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line, col = line + 1, 1
                i += 1
                continue
            if ch.isspace():
                i += 1
                col += 1
                continue
            if ch == "#":
                while i < len(text) and text[i] != "\n":
                    i += 1
                continue
            for p in _PUNCT:
                if text.startswith(p, i):
                    self.items.append(("punct", p, line, col))
                    i += len(p)
                    col += len(p)
                    break
            else:
                if ch.isdigit():
                    j = i
                    while j < len(text) and text[j].isdigit():
                        j += 1
                    value = text[i:j]
                    if int(value) > MAX_NAT:
                        raise Overflow(f"{value} exceeds the 64-bit range")
                    self.items.append(("nat", value, line, col))
                    col += j - i
                    i = j
                elif ch.isalpha() or ch == "_":
                    j = i
                    while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                        j += 1
                    self.items.append(("name", text[i:j], line, col))
                    col += j - i
                    i = j
                else:
                    raise ParseError(f"unexpected character {ch!r}", line, col)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.items):
            return self.items[self.pos]
        return ("eof", "", 0, 0)

    def next(self, kind=None, value=None):
        k, v, line, col = self.peek()
        if k == "eof":
            raise ParseError(f"unexpected end of input (wanted {value or kind})")
        if (kind and k != kind) or (value and v != value):
            raise ParseError(f"expected {value or kind}, got {v!r}", line, col)
        self.pos += 1
        return v

    def done(self):
        k, v, line, col = self.peek()
        if k != "eof":
            raise ParseError(f"trailing input {v!r}", line, col)


def _nat(tok, minimum=1):
    k, v, line, col = tok.peek()
    n = int(tok.next("nat"))
    if n < minimum:
        raise ZeroValue(f"expected a number >= {minimum}, got {n} at line {line}")
    return n


def _family(tok):
    kind, value, line, col = tok.peek()
    if kind == "nat":
        return Single(fin(_nat(tok)))
    if value == "aleph":
        tok.next()
        return Single(aleph(_nat(tok, minimum=0)))
    if value == "ap":
        tok.next()
        tok.next(value="(")
        first = _nat(tok)
        tok.next(value=",")
        step = _nat(tok)
        tok.next(value=")")
        return AP(first, step)
    raise ParseError(f"expected a value family, got {value!r}", line, col)


def _count(tok):
    kind, value, line, col = tok.peek()
    if value == "inf":
        tok.next()
        return INF
    if kind == "nat":
        return _nat(tok)
    raise ParseError(f"expected a count, got {value!r}", line, col)


def parse_seq(text: str) -> CardinalSpec:
    tok = _Tokens(text)
    tok.next(value="seq")
    tok.next(value="{")
    entries = []
    while True:
        family = _family(tok)
        tok.next(value="x")
        entries.append((family, _count(tok)))
        if tok.peek()[1] == ";":
            tok.next()
            continue
        break
    tok.next(value="}")
    tok.done()
    return normalize(CardinalSpec(tuple(entries)))


def print_seq(s: CardinalSpec) -> str:
    parts = []
    for family, mult in s.entries:
        if isinstance(family, Single):
            c = family.value
            fam = f"aleph {c.n}" if c.aleph else str(c.n)
        else:
            fam = f"ap({family.first},{family.step})"
        parts.append(f"{fam} x {'inf' if mult is INF else mult}")
    return "seq { " + "; ".join(parts) + " }"


def parse_union(text: str) -> UnionSpec:
    tok = _Tokens(text)
    tok.next(value="union")
    tok.next(value="{")
    entries = []
    while True:
        kind = tok.next("name")
        if kind not in ("full", "kgraph", "ordinal", "chain", "a2chain"):
            raise ParseError(f"unknown component kind {kind!r}")
        tok.next(value="(")
        tag = None
        if kind == "chain":
            tag = tok.next("name")
            tok.next(value=",")
        size = _family(tok)
        if kind == "ordinal" and isinstance(size, Single) and size.value.aleph and size.value.n > 0:
            raise OrdinalTooLarge(f"ordinal components are capped at aleph 0, got aleph {size.value.n}")
        tok.next(value=")")
        tok.next(value="x")
        entries.append((ComponentKind(kind, size, tag), _count(tok)))
        if tok.peek()[1] == ";":
            tok.next()
            continue
        break
    tok.next(value="}")
    tok.done()
    return UnionSpec(tuple(entries))


def print_union(u: UnionSpec) -> str:
    parts = []
    for comp, mult in u.components:
        if isinstance(comp.size, Single):
            c = comp.size.value
            size = f"aleph {c.n}" if c.aleph else str(c.n)
        else:
            size = f"ap({comp.size.first},{comp.size.step})"
        args = f"{comp.tag}, {size}" if comp.kind == "chain" else size
        parts.append(f"{comp.kind}({args}) x {'inf' if mult is INF else mult}")
    return "union { " + "; ".join(parts) + " }"


def parse_baire(text: str) -> BaireFunc:
    tok = _Tokens(text)
    tok.next(value="pieces")
    tok.next(value="{")
    pieces = []
    while True:
        kind, value, line, col = tok.peek()
        if value == "ap":
            tok.next()
            tok.next(value="(")
            first = _nat(tok, minimum=0)
            tok.next(value=",")
            step = _nat(tok)
            tok.next(value=")")
            dom = APIndex(first, step)
        elif value == "{":
            tok.next()
            indices = [_nat(tok, minimum=0)]
            while tok.peek()[1] == ",":
                tok.next()
                indices.append(_nat(tok, minimum=0))
            tok.next(value="}")
            dom = FiniteIndex(frozenset(indices))
        else:
            raise ParseError(f"expected a piece domain, got {value!r}", line, col)
        tok.next(value="->")
        kind, value, line, col = tok.peek()
        if value == "const":
            tok.next()
            rule = ConstRule(_nat(tok))
        elif value == "affine":
            tok.next()
            tok.next(value="(")
            first = _nat(tok)
            tok.next(value=",")
            step = _nat(tok, minimum=0)
            tok.next(value=")")
            rule = AffineRule(first, step)
        else:
            raise ParseError(f"expected a value rule, got {value!r}", line, col)
        pieces.append((dom, rule))
        if tok.peek()[1] == ";":
            tok.next()
            continue
        break
    tok.next(value="}")
    tok.done()
    return BaireFunc(tuple(pieces))


def print_baire(f: BaireFunc) -> str:
    parts = []
    for dom, rule in f.pieces:
        if isinstance(dom, APIndex):
            d = f"ap({dom.first},{dom.step})"
        else:
            d = "{" + ", ".join(str(i) for i in sorted(dom.indices)) + "}"
        if isinstance(rule, ConstRule):
            r = f"const {rule.value}"
        else:
            r = f"affine({rule.first},{rule.step})"
        parts.append(f"{d} -> {r}")
    return "pieces { " + "; ".join(parts) + " }"


def parse_genset(text: str) -> frozenset[int]:
    tok = _Tokens(text)
    tok.next(value="{")
    elems = []
    if tok.peek()[1] != "}":
        elems.append(_nat(tok))
        while tok.peek()[1] == ",":
            tok.next()
            elems.append(_nat(tok))
    tok.next(value="}")
    tok.done()
    return frozenset(elems)


def parse_prefix(text: str) -> dict[int, int]:
    """Finite partial function syntax: '0=7; 3=7' (empty allowed)."""
    tok = _Tokens(text)
    prefix: dict[int, int] = {}
    while tok.peek()[0] != "eof":
        i = _nat(tok, minimum=0)
        tok.next(value="=")
        v = _nat(tok)
        if i in prefix:
            raise ParseError(f"index {i} assigned twice")
        prefix[i] = v
        if tok.peek()[1] == ";":
            tok.next()
    return prefix
