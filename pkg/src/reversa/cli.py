"""Command-line front end.

Every verb prints a JSON document (stable key order, byte-identical for
identical input) unless --human is given.  Exit codes: 0 = decided,
2 = verdict unknown, 1 = input or processing error.  Text arguments may
be given inline or as '@path' to read from a file."""

from __future__ import annotations

import argparse
import json
import sys

from . import baire, dsl, semigroup, serde, structures
from .errors import ReversaError, StructureMismatch
from .sequence import decide
from .witness import build_witness, verify_witness


def _text_arg(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:]) as fh:
            return fh.read()
    return value


def _emit(doc, human: bool) -> None:
    if human:
        print(_humanize(doc))
    else:
        print(serde.json_dumps(doc))


def _humanize(doc, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_humanize(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(doc, list):
        return "\n".join(
            _humanize(item, indent + 1) if isinstance(item, (dict, list)) else f"{pad}- {item}"
            for item in doc
        )
    return f"{pad}{doc}"


def _cmd_decide_seq(args) -> tuple[dict, int]:
    s = dsl.parse_seq(_text_arg(args.spec))
    v = decide(s)
    doc = serde.verdict_to_json(s, v)
    doc["verdict"] = "reversible" if v.reversible else "not-reversible"
    del doc["reversible"]
    return doc, 0


def _cmd_witness(args) -> tuple[dict, int]:
    s = dsl.parse_seq(_text_arg(args.spec))
    v = decide(s)
    if v.reversible:
        return {"verdict": "reversible", "reason": v.reason, "witness": None}, 0
    return serde.certificate_to_json(s, v.witness), 0


def _cmd_verify(args) -> tuple[dict, int]:
    s = dsl.parse_seq(_text_arg(args.spec))
    cert = json.loads(_text_arg(args.certificate))
    if cert.get("spec_hash") != serde.spec_hash(s):
        raise StructureMismatch("certificate was issued for a different spec")
    w = serde.witness_from_json(cert["witness"])
    report = verify_witness(s, w, depth=args.depth)
    return {
        "report": {
            "accepted": report.accepted,
            "reason": report.reason,
            "detail": report.detail,
            "checked_points": report.checked_points,
        }
    }, 0


def _cmd_semigroup(args) -> tuple[dict, int]:
    k = dsl.parse_genset(_text_arg(args.genset))
    if args.subop == "member":
        return {"member": semigroup.contains(k, args.n)}, 0
    if args.subop == "independent":
        return {"independent": semigroup.is_independent(k)}, 0
    if args.subop == "conductor":
        return {"conductor": semigroup.conductor(k), "gcd": semigroup.gcd_of(k)}, 0
    dec = semigroup.decompose(k, args.n)
    return {"n": args.n, "decomposition": {str(m): c for m, c in sorted(dec.items())}}, 0


def _cmd_decide_union(args) -> tuple[dict, int]:
    u = dsl.parse_union(_text_arg(args.union))
    v = structures.decide_union(u)
    doc = {"verdict": v.verdict, "path": v.path, "reason": v.reason}
    if v.witness is not None:
        doc["witness"] = serde.witness_to_json(v.witness)
    return doc, 2 if v.verdict == "unknown" else 0


def _cmd_brute(args) -> tuple[dict, int]:
    s = structures.parse_edge_list(_text_arg(args.edges))
    ok, counterexample = structures.brute_reversible(s, max_vertices=args.max_brute_vertices)
    doc = {"reversible": ok, "vertices": len(s.vertices)}
    if counterexample is not None:
        doc["counterexample"] = {str(a): b for a, b in sorted(counterexample.items())}
    return doc, 0


def _cmd_gen_rb001(args) -> tuple[dict, int]:
    a = sorted(dsl.parse_genset(_text_arg(args.sizes)))
    u = structures.gen_rb001(a, args.tail_first, args.tail_step)
    v = structures.decide_union(u)
    return {"union": dsl.print_union(u), "verdict": v.verdict, "path": v.path}, 0


def _cmd_baire(args) -> tuple[dict, int]:
    f = dsl.parse_baire(_text_arg(args.func_text)) if args.func_text else None
    if args.subop == "compile":
        s = baire.compile_to_spec(f)
        v = decide(s)
        return {
            "spec": dsl.print_seq(s),
            "verdict": "reversible" if v.reversible else "not-reversible",
            "reason": v.reason,
        }, 0
    if args.subop == "compose":
        g = dsl.parse_baire(_text_arg(args.inner))
        comp = baire.compose(f, g)
        s = baire.compile_to_spec(comp)
        v = decide(s)
        return {
            "composition": dsl.print_baire(comp),
            "spec": dsl.print_seq(s),
            "verdict": "reversible" if v.reversible else "not-reversible",
        }, 0
    prefix = dsl.parse_prefix(_text_arg(args.prefix))
    g = baire.extend_to_reversible(prefix)
    s = baire.compile_to_spec(g)
    v = decide(s)
    return {
        "extension": dsl.print_baire(g),
        "spec": dsl.print_seq(s),
        "verdict": "reversible" if v.reversible else "not-reversible",
    }, 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reversa",
        description="decide reversibility of cardinal sequences and disconnected structures",
    )
    parser.add_argument("--json", action="store_true", default=True, dest="json_out")
    parser.add_argument("--human", action="store_false", dest="json_out")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide-seq", help="decide a cardinal-sequence spec")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_decide_seq)

    p = sub.add_parser("witness", help="emit a non-reversibility certificate")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("verify", help="check a certificate against a spec")
    p.add_argument("spec")
    p.add_argument("certificate")
    p.add_argument("--depth", type=int, default=1000)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("semigroup", help="semigroup arithmetic over a generating set")
    p.add_argument("subop", choices=("member", "independent", "conductor", "decompose"))
    p.add_argument("genset")
    p.add_argument("n", type=int, nargs="?")
    p.set_defaults(func=_cmd_semigroup)

    p = sub.add_parser("decide-union", help="decide a disconnected-union spec")
    p.add_argument("union")
    p.set_defaults(func=_cmd_decide_union)

    p = sub.add_parser("brute", help="brute-force check a finite edge list")
    p.add_argument("edges")
    p.add_argument("--max-brute-vertices", type=int, default=8)
    p.set_defaults(func=_cmd_brute)

    p = sub.add_parser("gen-rb001", help="generate a reversible equivalence relation")
    p.add_argument("sizes")
    p.add_argument("tail_first", type=int)
    p.add_argument("tail_step", type=int)
    p.set_defaults(func=_cmd_gen_rb001)

    p = sub.add_parser("baire", help="piecewise function operations")
    p.add_argument("subop", choices=("compile", "compose", "extend"))
    p.add_argument("func_text", nargs="?")
    p.add_argument("inner", nargs="?")
    p.add_argument("--prefix")
    p.set_defaults(func=_cmd_baire)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "semigroup" and args.subop in ("member", "decompose") and args.n is None:
            raise ReversaError(f"semigroup {args.subop} needs a target number")
        if args.command == "baire":
            if args.subop == "extend" and not args.prefix and not args.func_text:
                raise ReversaError("baire extend needs --prefix or a prefix argument")
            if args.subop == "extend" and not args.prefix:
                args.prefix, args.func_text = args.func_text, None
            if args.subop != "extend" and not args.func_text:
                raise ReversaError(f"baire {args.subop} needs a function argument")
            if args.subop == "compose" and not args.inner:
                raise ReversaError("baire compose needs an inner function argument")
        doc, code = args.func(args)
    except (ReversaError, OSError, json.JSONDecodeError, KeyError) as exc:
        _emit({"error": {"kind": type(exc).__name__, "message": str(exc)}}, not args.json_out)
        return 1
    _emit(doc, not args.json_out)
    return code


if __name__ == "__main__":
    sys.exit(main())
