import json
import pathlib

import pytest

import hyperbmc

ROOT = pathlib.Path(__file__).resolve().parents[2]
INTRO = ROOT / "corpus" / "intro"
SELF_LOOP = "states: s\ninit: s\nap: a\nlabel s: a\ntrans s -> s\n"


def intro(prop, **options):
    return hyperbmc.check(INTRO / "k1.kr", INTRO / "k2.kr", INTRO / prop, **options)


def test_intro_verdicts():
    violated = intro("phi1.hp")
    assert violated["verdict"] == "violated"
    assert violated["counterexample"]["depth"] == 3
    assert intro("phi2.hp")["verdict"] == "unknown"
    holds = intro("phi2.hp", prophecy="next:a:2")
    assert holds["verdict"] == "holds"
    assert holds["bound"] == 5
    assert hyperbmc.EXIT_CODES[holds["verdict"]] == 0


def test_inline_property_and_mode():
    r = hyperbmc.check(INTRO / "k1.kr", INTRO / "k1.kr", prop_text="forall exists. G (l.a <-> r.a)", mode="ae")
    assert r["verdict"] == "holds"
    with pytest.raises(hyperbmc.FragmentError):
        intro("phi2.hp", mode="ea")


def test_parse_kripke():
    k = hyperbmc.parse_kripke(SELF_LOOP)
    assert k["states"] == ["s"]
    assert k["labels"]["s"] == ["a"]
    assert k["transitions"] == [("s", "s")]
    assert hyperbmc.parse_kripke(hyperbmc.print_kripke(SELF_LOOP)) == k
    with pytest.raises(hyperbmc.ModelError):
        hyperbmc.parse_kripke("states: s1 s2\ninit: s1\nap: a\ntrans s1 -> s2\n")
    with pytest.raises(hyperbmc.ParseError):
        hyperbmc.parse_kripke("states: s\ninit: s\nap: a\ntrans s => s\n")


def test_parse_property():
    p = hyperbmc.parse_property("exists forall. G !(l.pos <-> r.pos)")
    assert p["pattern"] == "ea"
    with pytest.raises(hyperbmc.FragmentError):
        hyperbmc.parse_property("forall forall. G l.a")
    assert issubclass(hyperbmc.FragmentError, hyperbmc.HyperbmcError)


def test_export_matches_golden():
    dimacs, var_map = hyperbmc.export_encoding(INTRO / "k1.kr", INTRO / "k2.kr", 5, INTRO / "phi2.hp")
    assert dimacs == (ROOT / "tests" / "golden" / "intro_ae_k5.cnf").read_text()
    assert [f["family"] for f in var_map["families"]][:2] == ["legal", "exhaustive"]


def test_bench_corpus_case(tmp_path):
    case = tmp_path / "one"
    case.mkdir()
    (case / "left.kr").write_text(SELF_LOOP)
    (case / "right.kr").write_text(SELF_LOOP)
    (case / "property.hp").write_text("exists forall. G (l.a <-> r.a)\n")
    (case / "manifest.json").write_text(
        json.dumps({"left": "left.kr", "right": "right.kr", "property": "property.hp", "expected": "holds", "mode": "ea"})
    )
    rows = hyperbmc.bench(str(tmp_path))
    assert len(rows) == 1
    assert rows[0]["verdict"] == "holds"
    assert rows[0]["matches"]
