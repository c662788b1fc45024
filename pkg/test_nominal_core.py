#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from nominal_core import (
    DUMMY,
    IDENTITY,
    Permutation,
    act_names,
    apply,
    format_names,
    fresh_for,
    fresh_names,
    name,
    name_set,
    names,
    swap,
)


def test_names_are_interned():
    assert name("a") == name("a")
    assert name("a") != name("b")
    assert name("a").text == "a"
    assert names("a, b,c") == [name("a"), name("b"), name("c")]


def test_invalid_name_rejected():
    with pytest.raises(ValueError):
        name("1a")
    with pytest.raises(ValueError):
        name("a.b")


def test_dummy_is_first_name():
    assert DUMMY.index == 0
    assert DUMMY.text == "_"


def test_swap_identity_and_definition(ab):
    a, b = ab
    assert swap(a, a) == IDENTITY
    assert swap(a, b)(a) == b
    assert swap(a, b)(b) == a
    assert apply(swap(a, b), name("c")) == name("c")


def test_swap_is_an_involution(ab):
    a, b = ab
    assert (swap(a, b) * swap(a, b)).is_identity()


def test_composition_applies_right_first():
    a, b, c = names("a,b,c")
    p = swap(a, b) * swap(b, c)
    # c -> b -> a
    assert p(c) == a
    assert p(a) == b
    assert p(b) == c
    assert (p * p.inverse()).is_identity()


def test_permutation_must_be_bijective(ab):
    a, b = ab
    with pytest.raises(ValueError):
        Permutation({a: b})


def test_fresh_for_avoids_and_is_deterministic():
    a, b, c = names("a,b,c")
    s = name_set(a, b, c)
    x = fresh_for(s)
    assert x not in s
    assert x != DUMMY
    assert fresh_for(s) == x
    assert fresh_for(frozenset()) == fresh_for(frozenset())


def test_fresh_names_distinct():
    a = name("a")
    got = fresh_names(5, avoid={a})
    assert len(set(got)) == 5
    assert a not in got


def test_act_names_and_format(ab):
    a, b = ab
    c = name("c")
    assert act_names(swap(a, c), {a, b}) == {c, b}
    assert format_names([a]) == "{a}"
    assert format_names([]) == "{}"
    assert format_names({a, b}).count(",") == 1
