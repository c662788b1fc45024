#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from itertools import product

import pytest

from conftest import AUTOMATA_DIR, BUNDLED, FK, FK_BUNDLED, singleton_automaton
from formats import FormatError, load_terms, parse_term
from nominal_core import DUMMY, name_set, names
from oracle import brute_member_alphatic, brute_member_data, enum_terms
from semantics import (
    CapExceeded,
    SemanticsKind,
    annotations,
    dropped_form,
    member_alphatic,
    member_data,
)
from terms import Label, Term, denu, nodes, size

GLOBAL = SemanticsKind.GLOBAL
BRANCHWISE = SemanticsKind.BRANCHWISE
LOCAL = SemanticsKind.LOCAL

WORKED = "nu a. f(nu b. f(a.k, b.k), nu b. f(b.k, b.k))"


def data_tree(x, y, z):
    return parse_term(f"{x}.f({y}.f({x}.k, {y}.k), {z}.f({z}.k, {z}.k))")


def test_annotations_cover_all_binder_choices():
    s = parse_term("a.f(b.k, a.k)")
    got = list(annotations(s))
    assert len(got) == 2 ** size(s)
    assert len(set(got)) == len(got)
    assert all(denu(t) == s for t in got)


def test_dropped_form_is_cached(corpus):
    spec = corpus["root_reappears"]
    d = dropped_form(spec)
    assert d.dropped
    assert dropped_form(spec) is d
    assert dropped_form(d) is d


def test_alphatic_membership_examples(corpus):
    r = corpus["root_reappears"]
    assert member_alphatic(r, parse_term("nu x. f(x.k, x.k)"))
    assert member_alphatic(r, parse_term("nu a. f(nu a. f(b.k, b.k), a.k)")) is False
    assert not member_alphatic(r, parse_term("nu a. f(nu a. f(a.k, a.k), a.k)"))
    spec = singleton_automaton(parse_term(WORKED))
    assert member_alphatic(spec, parse_term("nu c. f(nu a. f(c.k, a.k), nu c. f(c.k, c.k))"))
    assert not member_alphatic(spec, parse_term("nu c. f(nu a. f(a.k, a.k), nu c. f(c.k, c.k))"))


def test_worked_example_under_all_semantics():
    spec = singleton_automaton(parse_term(WORKED))
    pool = ["a", "b", "c"]
    expected = {
        LOCAL: lambda x, y, z: x != y,
        GLOBAL: lambda x, y, z: len({x, y, z}) == 3,
        BRANCHWISE: lambda x, y, z: x != y and x != z,
    }
    for x, y, z in product(pool, repeat=3):
        s = data_tree(x, y, z)
        for kind, rule in expected.items():
            assert member_data(spec, s, kind) == rule(x, y, z), (kind, x, y, z)


def test_worked_example_against_oracle():
    spec = singleton_automaton(parse_term(WORKED))
    for x, y, z in product(["a", "b"], repeat=3):
        s = data_tree(x, y, z)
        for kind in (LOCAL, GLOBAL, BRANCHWISE):
            assert member_data(spec, s, kind) == brute_member_data(spec, s, kind)


def test_data_semantics_against_oracle(random_automata):
    s3 = name_set(*names("a,b,c"))
    trees = list(enum_terms(FK, s3, 2, data_only=True))
    for spec in random_automata[:15]:
        for s in trees:
            for kind in (LOCAL, GLOBAL, BRANCHWISE):
                assert member_data(spec, s, kind) == brute_member_data(spec, s, kind)


@pytest.mark.slow
def test_local_direct_run_on_bundled(corpus):
    s3 = names("a,b,c")
    for stem in BUNDLED:
        spec = corpus[stem]
        pool = name_set(*s3, *([DUMMY] if spec.uses_dummy else []))
        checked = 0
        for s in enum_terms(spec.signature, pool, 3, data_only=True):
            assert member_data(spec, s, LOCAL) == brute_member_data(spec, s, LOCAL), (stem, s)
            checked += 1
        assert checked > 0


def test_dummy_binder_cannot_break_alpha_invariance(corpus):
    xml = corpus["xml_elem"]
    with pytest.raises(FormatError, match="cannot be bound"):
        parse_term("nu a. !elem(nu _. #data(a.eof), eof)", xml.signature)
    u = parse_term("nu a. !elem(nu b. #data(a.eof), eof)", xml.signature)
    assert member_alphatic(xml, u)
    assert brute_member_alphatic(xml, u)
    # the unlabelled #data is read free, and q1 only reads #data bound
    s = parse_term("a.!elem(#data(a.eof), eof)", xml.signature, data_only=True)
    assert member_data(xml, s, LOCAL) is False
    assert brute_member_data(xml, s, LOCAL) is False
    for t in annotations(s):
        assert not any(n.label.bound for n in nodes(t) if n.label.name == DUMMY)


def test_freshness_semantics_are_nested(random_automata):
    s3 = name_set(*names("a,b,c"))
    trees = list(enum_terms(FK, s3, 2, data_only=True))
    for spec in random_automata:
        for s in trees:
            g = member_data(spec, s, GLOBAL)
            b = member_data(spec, s, BRANCHWISE)
            loc = member_data(spec, s, LOCAL)
            assert not g or b
            assert not b or loc


def test_alphatic_agrees_with_oracle(random_automata, corpus):
    s2 = name_set(*names("a,b"))
    terms = list(enum_terms(FK, s2, 3))
    for spec in random_automata[:10] + [corpus[s] for s in FK_BUNDLED]:
        for t in terms[::7]:
            assert member_alphatic(spec, t) == brute_member_alphatic(spec, t)


def test_universal_reads_distinct_names(corpus):
    u = corpus["universal"]
    assert member_data(u, parse_term("a.f(b.k, c.k)"), GLOBAL)
    assert not member_data(u, parse_term("a.f(b.k, b.k)"), GLOBAL)
    assert member_data(u, parse_term("a.f(b.k, b.k)"), BRANCHWISE)
    assert not member_data(u, parse_term("a.f(a.k, b.k)"), BRANCHWISE)
    assert member_data(u, parse_term("a.f(a.k, a.k)"), LOCAL)


def test_letter_twice_under_local(corpus):
    spec = corpus["letter_twice"]
    assert member_data(spec, parse_term("a.f(b.f(a.k, c.k), d.k)"), LOCAL)
    assert member_data(spec, parse_term("a.f(b.f(c.k, d.k), a.k)"), GLOBAL)
    assert not member_data(spec, parse_term("a.f(b.f(c.k, d.k), e.k)"), LOCAL)
    assert not member_data(spec, parse_term("a.f(b.k, c.k)"), LOCAL)


def test_xml_sample_only_locally_fresh(corpus):
    spec = corpus["xml_elem"]
    (t,) = load_terms(AUTOMATA_DIR / "xml_sample.term", spec.signature)
    s = denu(t)
    assert member_alphatic(spec, t)
    assert member_data(spec, s, LOCAL)
    # d is re-bound three times on one branch
    assert not member_data(spec, s, BRANCHWISE)
    assert not member_data(spec, s, GLOBAL)


def test_node_cap(corpus):
    u = corpus["universal"]
    s = parse_term("a.f(b.f(c.k, d.k), e.f(g.k, h.k))")
    with pytest.raises(CapExceeded, match="RNTA_MAX_NODES"):
        member_data(u, s, GLOBAL, max_nodes=5)
    assert member_data(u, s, GLOBAL, max_nodes=7)
    assert member_data(u, s, LOCAL, max_nodes=1)


def test_bad_arguments(corpus):
    u = corpus["universal"]
    with pytest.raises(ValueError):
        member_data(u, parse_term("a.k"), SemanticsKind.ALPHATIC)
    with pytest.raises(ValueError):
        member_data(u, parse_term("nu a. k"), LOCAL)
    with pytest.raises(ValueError):
        brute_member_data(u, parse_term("a.k"), SemanticsKind.ALPHATIC)


def test_dummy_labels_stay_free(corpus):
    spec = corpus["pi_calculus"]
    s = parse_term("par(a.ch(b.rw(0)), c.ch(d.rw(d.ch(e.rw(0)))))")
    assert member_data(spec, s, GLOBAL)
    assert not member_data(spec, Term(Label.free(names("a")[0]), "0"), LOCAL)
