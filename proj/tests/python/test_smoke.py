import pytest

import mtmorph


@pytest.fixture(scope="module")
def grammar():
    return mtmorph.builtin_grammar()


@pytest.fixture(scope="module")
def lexicon():
    return mtmorph.builtin_lexicon()


def test_builtin_data(grammar, lexicon):
    assert grammar.ntapes == 3
    assert grammar.tape_names == ["pattern", "root", "vocalism"]
    assert grammar.rule_ids == ["R4", "R5", "R6", "R7", "R8", "R9", "R10", "R11"]
    assert sorted(lexicon.stem_ids) == ["jundub", "sulTaan"]


@pytest.mark.parametrize(
    "stem, mode, surface",
    [
        ("jundub", "sing", "jundub"),
        ("jundub", "pl", "janaadib"),
        ("jundub", "dim", "junaydib"),
        ("sulTaan", "sing", "sulTaan"),
        ("sulTaan", "pl", "salaaTiin"),
        ("sulTaan", "dim", "sulayTaan"),
    ],
)
def test_generate(grammar, lexicon, stem, mode, surface):
    results = mtmorph.generate(grammar, lexicon, stem, mode)
    assert [r["surface"] for r in results] == [surface]


def test_generate_rejects_unknown_mode(grammar, lexicon):
    with pytest.raises(ValueError):
        mtmorph.generate(grammar, lexicon, "jundub", "dual")


def test_analyze(grammar, lexicon):
    (a,) = mtmorph.analyze(grammar, lexicon, "salaaTiin")
    assert a["stem"] == "sulTaan"
    assert a["features"] == {"number": "pl"}
    assert [step[0] for step in a["partition"]] == ["R6", "R8"]
    assert [step[2] for step in a["partition"]] == ["salaa", "Tiin"]
    raw = mtmorph.analyze(grammar, lexicon, "janaadib", filter=False)
    assert len(raw) >= 2
    assert mtmorph.analyze(grammar, lexicon, "zzz") == []


def test_synthesize_matches_oracle(grammar):
    tapes = ["cvccvc", "jndb", "uu"]
    feats = [{}, {"number": "$N"}, {}]
    engine = {(r["surface"], tuple(sorted(r["features"].items()))) for r in mtmorph.synthesize(grammar, tapes, feats)}
    oracle = {(s, tuple(sorted(f.items()))) for s, f in mtmorph.enumerate_surfaces(grammar, tapes, 9, feats)}
    assert engine == oracle
    assert {s for s, _ in engine} == {"jundub", "janaadib", "junaydib"}


def test_single_tape(grammar):
    single = mtmorph.builtin_single_tape_grammar()
    assert [r["surface"] for r in mtmorph.synthesize(single, ["sulTaan"])] == ["salaaTiin"]


def test_unify():
    assert mtmorph.unify({"number": "pl"}, {"number": "$N"}) == {"number": "pl"}
    assert mtmorph.unify({}, {"number": "sing"}) == {"number": "sing"}
    assert mtmorph.unify({"number": "pl"}, {"number": "sing"}) is None


def test_parse_errors():
    with pytest.raises(mtmorph.ParseError):
        mtmorph.parse_grammar("tapes: 1\nrule R0 opt\n lex: * | q | *\n surf: * | a | *")
    g = mtmorph.parse_grammar("tapes: 1\nrule R0 opt\n lex: * | a | *\n surf: * | a | *")
    assert mtmorph.parse_grammar(g.serialize()).rule_ids == ["R0"]
