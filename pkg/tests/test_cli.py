import json

import pytest

from reversa.cli import main
from reversa.dsl import (
    parse_baire,
    parse_genset,
    parse_prefix,
    parse_seq,
    parse_union,
    print_baire,
    print_seq,
    print_union,
)
from reversa.errors import OrdinalTooLarge, Overflow, ParseError, ZeroValue


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_seq_round_trip():
    for text in (
        "seq { 2 x inf; 5 x inf }",
        "seq { ap(1,1) x 1; aleph 0 x 2 }",
        "seq { 3 x 4; ap(2,2) x 1; aleph 1 x inf }",
    ):
        s = parse_seq(text)
        assert parse_seq(print_seq(s)) == s


def test_union_round_trip():
    for text in (
        "union { kgraph(3) x inf; kgraph(6) x 1 }",
        "union { ordinal(aleph 0) x inf }",
        "union { chain(eta, aleph 0) x 2; chain(omega, ap(1,1)) x 1 }",
        "union { full(ap(7,3)) x 1; a2chain(4) x inf }",
    ):
        u = parse_union(text)
        assert parse_union(print_union(u)) == u


def test_baire_round_trip():
    text = "pieces { ap(0,3) -> const 2; ap(1,3) -> affine(1,4); ap(2,3) -> affine(3,4) }"
    f = parse_baire(text)
    assert parse_baire(print_baire(f)) == f


def test_parse_errors():
    with pytest.raises(ZeroValue):
        parse_seq("seq { 3 x 0 }")
    with pytest.raises(ZeroValue):
        parse_seq("seq { 0 x 1 }")
    with pytest.raises(ParseError):
        parse_seq("seq { 3 y 1 }")
    with pytest.raises(Overflow):
        parse_seq(f"seq {{ {2**63 + 1} x 1 }}")
    with pytest.raises(OrdinalTooLarge):
        parse_union("union { ordinal(aleph 1) x 1 }")
    with pytest.raises(ParseError):
        parse_genset("{4, 10")


def test_comments_and_whitespace():
    s = parse_seq("seq {\n  2 x inf; # the twos\n  5 x inf\n}")
    assert s == parse_seq("seq { 2 x inf; 5 x inf }")
    assert parse_prefix("0=7; 3=7 # tail free") == {0: 7, 3: 7}
    assert parse_prefix("") == {}


def test_decide_seq_json_is_deterministic(capsys):
    code1, out1 = run(capsys, "decide-seq", "seq { 1 x inf; 2 x inf }")
    code2, out2 = run(capsys, "decide-seq", "seq { 1 x inf; 2 x inf }")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["verdict"] == "not-reversible"
    assert "witness" in doc


def test_verify_round_trip(capsys, tmp_path):
    spec_text = "seq { 2 x inf; 5 x inf; ap(4,2) x 1 }"
    code, out = run(capsys, "witness", spec_text)
    assert code == 0
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out = run(capsys, "verify", spec_text, f"@{cert}", "--depth", "1000")
    assert code == 0
    assert json.loads(out)["report"]["accepted"] is True


def test_verify_detects_spec_mismatch(capsys, tmp_path):
    code, out = run(capsys, "witness", "seq { 2 x inf; 5 x inf; ap(4,2) x 1 }")
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code, out = run(capsys, "verify", "seq { 1 x inf; 2 x inf }", f"@{cert}")
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "StructureMismatch"


def test_exit_codes(capsys):
    code, out = run(capsys, "decide-seq", "seq { 2 x inf; 5 x inf }")
    assert code == 0 and json.loads(out)["verdict"] == "reversible"
    code, out = run(capsys, "decide-union", "union { chain(omega_n, aleph 0) x inf }")
    assert code == 2 and json.loads(out)["verdict"] == "unknown"
    code, out = run(capsys, "decide-seq", "seq { broken")
    assert code == 1 and "error" in json.loads(out)


def test_semigroup_subcommands(capsys):
    code, out = run(capsys, "semigroup", "independent", "{4,10}")
    assert code == 0 and json.loads(out) == {"independent": True}
    code, out = run(capsys, "semigroup", "member", "{2,5}", "3")
    assert json.loads(out) == {"member": False}
    code, out = run(capsys, "semigroup", "conductor", "{2,5}")
    assert json.loads(out) == {"conductor": 4, "gcd": 1}
    code, out = run(capsys, "semigroup", "decompose", "{2,5}", "9")
    dec = json.loads(out)["decomposition"]
    assert sum(int(m) * c for m, c in dec.items()) == 9


def test_human_output(capsys):
    code, out = run(capsys, "--human", "semigroup", "conductor", "{2,5}")
    assert code == 0
    assert "conductor: 4" in out


def test_brute_cli(capsys, tmp_path):
    edges = tmp_path / "edges.txt"
    edges.write_text("1 2\n2 3\n4\n")
    code, out = run(capsys, "brute", f"@{edges}")
    assert code == 0 and json.loads(out)["reversible"] is True


def test_gen_rb001_cli(capsys):
    code, out = run(capsys, "gen-rb001", "{3,5}", "7", "3")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "reversible" and doc["path"] == "tb048"


def test_baire_cli(capsys):
    code, out = run(
        capsys,
        "baire",
        "compile",
        "pieces { ap(0,3) -> const 2; ap(1,3) -> affine(1,4); ap(2,3) -> affine(3,4) }",
    )
    assert code == 0 and json.loads(out)["verdict"] == "reversible"
    code, out = run(capsys, "baire", "extend", "--prefix", "0=7; 3=7")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "reversible"
