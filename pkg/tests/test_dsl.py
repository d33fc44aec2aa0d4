import pytest

from dsl_corpus import FORMS, corpus, generated_scripts
from symext.dsl import DslError, WorkbenchScript, parse_script, print_script
from symext.names import Check, X
from symext.poset import CohenCondition


def test_empty_script():
    assert parse_script("") == WorkbenchScript()
    assert parse_script("# only a comment\n\n") == WorkbenchScript()


def test_two_node_script():
    ws = parse_script("let p = cond {0 0 0 0 -> 1}\ncheck support X(0,0,0) {(0,0,0)}\n")
    assert ws.declarations == (("p", CohenCondition({(0, 0, 0, 0): 1})),)
    (d,) = ws.directives
    assert d.kind == "support" and d.args[0] == X(0, 0, 0)


@pytest.mark.parametrize("label, text", corpus())
def test_round_trip(label, text):
    ws = parse_script(text)
    printed = print_script(ws)
    assert parse_script(printed) == ws
    assert print_script(parse_script(printed)) == printed


def test_corpus_covers_every_form():
    used = set()
    for _k, _t, u in generated_scripts():
        used |= u
    assert used == set(FORMS)
    assert len(corpus()) >= 50


def test_check_sugar_and_canonical_sets():
    ws = parse_script("let x = name bullet[check 0, check 1]\nlet y = name check 2\n")
    assert ws.table()["x"] == ws.table()["y"] == Check(2)
    assert print_script(parse_script("let s = set {1, 0}\n")) == print_script(parse_script("let s = set 2\n"))


@pytest.mark.parametrize("text, line, col", [
    ("let p = cond {0 0 0 0 -> 1", 1, 27),
    ("let p = cond {0 0 0 0 -> 1}}", 1, 28),
    ("\nlet x = name {<top, check 0>", 2, 29),
    ("let p = cond {0 0 0 0 -> 2}", 1, 26),
    ("check support X(0,0) {}", 1, 15),
    ("check frobnicate", 1, 7),
    ("check symmetry-lemma stmt=nothere", 1, 27),
    ("let a = cond {}\nlet a = cond {}", 2, 5),
    ("let X = cond {}", 1, 5),
    ("check support X(0,0,0)", 1, 7),
    ("check q-laws colour=3", 1, 14),
    ("let x = name {<top, y>}", 1, 21),
    ("blah", 1, 1),
    ("let p = cond {0 0 0 0 -> 1} $", 1, 29),
])
def test_error_positions(text, line, col):
    with pytest.raises(DslError) as info:
        parse_script(text)
    assert (info.value.line, info.value.col) == (line, col), str(info.value)


def test_errors_carry_expected_sets():
    with pytest.raises(DslError) as info:
        parse_script("let p = cond {0 0 0 0 -> 1")
    assert info.value.expected == {"','", "'}'"}
    with pytest.raises(DslError) as info:
        parse_script("let p = frob {}")
    assert "cond" in info.value.expected and "qcond" in info.value.expected


def test_reference_to_non_name():
    with pytest.raises(DslError, match="not a name"):
        parse_script("let p = cond {}\nlet x = name {<top, p>}")


def test_keyword_arguments_are_sorted():
    a = parse_script("check block-swap samples=3\n")
    assert print_script(a) == "check block-swap samples=3\n"
    b = parse_script("let p = cond {}\ncheck block-swap level=1 cond=p\n")
    assert print_script(b).splitlines()[-1] == "check block-swap cond=p level=1"
