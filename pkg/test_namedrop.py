#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from conftest import BUNDLED, FK
from config import CONFIG
from formats import parse_term
from namedrop import (
    NameDropError,
    check_subautomaton,
    dropped_id,
    name_drop,
    project_rule,
    restrict_state,
)
from nfta import restrict
from nominal_core import DUMMY, name_set, names
from oracle import alpha_close, brute_language, enum_terms
from rnta_core import ConcreteState, accepts_from, degree, validate
from terms import free_names

S4 = name_set(*names("a,b,c,d"))
S4_DUMMY = name_set(DUMMY, *names("a,b,c"))


def test_dropped_ids():
    assert dropped_id("q", ()) == "q@{}"
    assert dropped_id("q", [2, 1]) == "q@{1,2}"


def test_orbit_count_bound(corpus, random_automata):
    for spec in list(corpus.values()) + random_automata:
        dropped = name_drop(spec)
        assert len(dropped.orbits) == sum(2 ** o.registers for o in spec.orbits)
        assert len(dropped.orbits) <= len(spec.orbits) * 2 ** degree(spec)
        assert dropped.dropped
        assert dropped.initial == dropped_id(spec.initial, ())
        assert validate(dropped) == []


def test_rejects_dropped_input(corpus):
    dropped = name_drop(corpus["root_reappears"])
    with pytest.raises(NameDropError):
        name_drop(dropped)


def test_degree_cap(corpus, monkeypatch):
    monkeypatch.setitem(CONFIG["limits"], "max_degree", 0)
    assert name_drop(corpus["universal"]).orbits
    with pytest.raises(NameDropError, match="RNTA_MAX_DEGREE"):
        name_drop(corpus["root_reappears"])


def test_original_is_subautomaton(corpus, random_automata):
    for spec in list(corpus.values()) + random_automata:
        dropped = name_drop(spec)
        assert check_subautomaton(spec, dropped)
        assert check_subautomaton(spec, spec)
        if spec.rules:
            assert not check_subautomaton(dropped, spec)


def test_root_reappears_dropped_rules(corpus):
    dropped = name_drop(corpus["root_reappears"])
    ids = {o.id for o in dropped.orbits}
    assert ids == {"q0@{}", "q1@{}", "q1@{1}"}
    # the leaf rule needs its letter register, so q1@{} has no free rule
    assert not [r for r in dropped.rules if r.source == "q1@{}" and not r.bound]


def test_every_dropped_rule_projects(corpus, random_automata):
    for spec in list(corpus.values()) + random_automata[:20]:
        for rule in name_drop(spec).rules:
            base = project_rule(spec, rule)
            assert base is not None
            assert base in spec.rules
        if spec.rules:
            assert project_rule(spec, spec.rules[0]) is None


def test_restrict_state():
    a, b = names("a,b")
    q = ConcreteState.of("q1", {0: DUMMY, 1: a, 2: b})
    assert restrict_state(q, name_set(a)) == ConcreteState("q1@{1}", ((0, DUMMY), (1, a)))
    assert restrict_state(q, name_set()) == ConcreteState("q1@{}", ((0, DUMMY),))
    assert restrict_state(q, name_set(a, b)).orbit == "q1@{1,2}"


@pytest.mark.slow
def test_language_is_alpha_closure_random(random_automata):
    for spec in random_automata:
        expected = alpha_close(brute_language(spec, S4, 3), S4)
        assert brute_language(name_drop(spec), S4, 3) == expected


@pytest.mark.slow
def test_language_is_alpha_closure_bundled(corpus):
    for stem in BUNDLED:
        spec = corpus[stem]
        s = S4_DUMMY if spec.uses_dummy else S4
        expected = alpha_close(brute_language(spec, s, 3), s)
        assert brute_language(name_drop(spec), s, 3) == expected, stem


def test_dropped_xml_keeps_dummy_free(corpus):
    dropped = name_drop(corpus["xml_elem"])
    lang = brute_language(dropped, S4_DUMMY, 3)
    assert parse_term("nu a. !elem(nu b. #data(a.eof), eof)") in lang
    assert parse_term("nu c. !elem(nu a. #data(c.eof), eof)") in lang


def test_acceptance_survives_dropping_unused_names(random_automata):
    s = name_set(*names("a,b,c"))
    terms = list(enum_terms(FK, s, 2))
    checked = 0
    for spec in random_automata[:15]:
        dropped = name_drop(spec)
        for q in restrict(spec, s).states:
            full = ConcreteState(dropped_id(q.orbit, [j for j, _ in q.assignment]), q.assignment)
            for t in terms:
                if accepts_from(dropped, full, t):
                    assert accepts_from(dropped, restrict_state(q, free_names(t)), t)
                    checked += 1
    assert checked > 0
