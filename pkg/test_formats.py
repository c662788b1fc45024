#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from conftest import AUTOMATA_DIR, BUNDLED, FK
from formats import (
    FormatError,
    load_signature,
    parse_automaton,
    parse_signature,
    parse_term,
    parse_terms,
    print_automaton,
    print_nfta,
    print_signature,
    print_term,
)
from namedrop import name_drop
from nfta import restrict
from nominal_core import DUMMY, name_set, names
from terms import Label, Term, depth, size

HEADER = "signature f/2, k/0\n"


def test_signatures():
    assert load_signature(AUTOMATA_DIR / "fk.sig") == FK
    xml = load_signature(AUTOMATA_DIR / "xml.sig")
    assert xml.arity("!elem") == 2 and xml.arity("#data") == 1
    assert parse_signature(print_signature(FK)) == FK
    with pytest.raises(FormatError, match="no constant"):
        parse_signature("f/2")
    with pytest.raises(FormatError, match="two arities"):
        parse_signature("f/2, k/0\nf/1")
    with pytest.raises(FormatError) as info:
        parse_signature("f/2, k")
    assert info.value.line == 1


def test_bundled_round_trip(corpus):
    for stem in BUNDLED:
        spec = corpus[stem]
        assert parse_automaton(print_automaton(spec)) == spec, stem


def test_dropped_round_trip(corpus):
    for stem in ("root_reappears", "xml_elem"):
        dropped = name_drop(corpus[stem])
        text = print_automaton(dropped)
        assert "dropped" in text.splitlines()
        assert parse_automaton(text) == dropped


def test_dropped_ids_need_flag():
    text = HEADER + "orbit q@{} 0\ninitial q@{}\nrule q@{} bound k ->\n"
    with pytest.raises(FormatError, match="not marked dropped"):
        parse_automaton(text)
    assert parse_automaton(HEADER + "dropped\n" + text[len(HEADER):]).dropped


def test_rule_syntax():
    spec = parse_automaton(
        HEADER
        + "orbit q0 0\norbit q1 1\norbit q2 2 // two registers\ninitial q0\n"
        + "rule q0 bound f -> q1{1<-new}, q0\n"
        + "rule q1 bound f -> q2{1<-1, 2<-new}, q0\n"
        + "rule q2 free 2 k\n"
        + "rule q2 free 1 f -> q1{1<-2}, q0\n"
        + "rule q0 bound k ->\n"
    )
    maps = [[ch.regmap.as_dict() for ch in r.children] for r in spec.rules]
    assert maps[0] == [{1: "new"}, {}]
    assert maps[1] == [{1: 1, 2: "new"}, {}]
    assert spec.rules[2].letter == 2 and not spec.rules[2].children
    assert maps[3] == [{1: 2}, {}]
    assert spec.orbit("q2").registers == 2


def test_validation_errors_carry_location():
    text = HEADER + "orbit q0 0\ninitial q0\nrule q0 bound f -> q0, q0\nrule q0 bound g ->\n"
    with pytest.raises(FormatError) as info:
        parse_automaton(text)
    err = info.value
    assert err.line == 5
    assert "unknown symbol g" in str(err)
    assert str(err).startswith("line 5, col 1:")
    assert err.violations


def test_syntax_errors():
    with pytest.raises(FormatError, match="unknown declaration"):
        parse_automaton(HEADER + "state q0\n")
    with pytest.raises(FormatError, match="no initial"):
        parse_automaton(HEADER + "orbit q0 0\n")
    with pytest.raises(FormatError, match="bad register entry"):
        parse_automaton(HEADER + "orbit q0 0\ninitial q0\nrule q0 bound f -> q0{1<=new}, q0\n")
    with pytest.raises(FormatError, match="include needs a file context"):
        parse_automaton("include fk.sig\n")
    with pytest.raises(FormatError) as info:
        parse_automaton(HEADER + "orbit q0 0\ninitial q0\nrule q0 bound f -> q0, ?\n")
    assert info.value.line == 4 and info.value.col > 1


def test_term_examples():
    a, b = names("a,b")
    t = parse_term("nu a. f(a.k, b.k)", FK)
    assert t == Term(Label.nu(a), "f", (Term(Label.free(a), "k"), Term(Label.free(b), "k")))
    assert parse_term("k") == Term(Label.free(DUMMY), "k")
    # "nu" is an ordinary name when no binder follows
    assert parse_term("nu.k").label == Label.free(names("nu")[0])
    assert print_term(t) == "nu a. f(a.k, b.k)"
    assert parse_term(print_term(t)) == t
    two = parse_terms("nu a. k // first\nb.k\n")
    assert len(two) == 2


def test_term_errors():
    with pytest.raises(FormatError, match="arity 2"):
        parse_term("a.f(a.k)", FK)
    with pytest.raises(FormatError, match="unknown symbol"):
        parse_term("a.g", FK)
    with pytest.raises(FormatError, match="cannot contain nu"):
        parse_term("nu a. k", FK, data_only=True)
    with pytest.raises(FormatError, match="exactly one"):
        parse_term("a.k b.k")
    with pytest.raises(FormatError) as info:
        parse_term("a.f(a.k,\n  b.k ? )")
    assert (info.value.line, info.value.col) == (2, 7)
    with pytest.raises(FormatError, match="end of input"):
        parse_term("a.f(a.k, ")


def test_dummy_binder_rejected():
    with pytest.raises(FormatError, match="cannot be bound") as info:
        parse_term("nu a. f(nu _. k, a.k)", FK)
    assert (info.value.line, info.value.col) == (1, 12)
    assert parse_term("_.k", FK) == parse_term("k", FK)


def test_deep_terms_round_trip():
    n = 1500
    text = "nu a. f(" + "nu b. f(" * (n - 1) + "a.k, a.k)" + ", a.k)" * (n - 1)
    t = parse_term(text, FK)
    assert depth(t) == n + 1
    assert size(t) == 2 * n + 1
    assert print_term(t) == text


def test_nfta_listing(corpus):
    n = restrict(corpus["root_reappears"], name_set(*names("a")))
    text = print_nfta(n)
    assert text.startswith("// 2 states")
    assert "initial q0()" in text
    assert "q1(1=a) a.k" in text
