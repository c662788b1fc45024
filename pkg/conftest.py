#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Shared test fixtures: bundled automata, singleton-language automata and
seeded random automata/terms.
"""

import random
from pathlib import Path
from typing import Dict, List, Optional

import pytest

from formats import load_automaton
from nominal_core import DUMMY, Name, names
from rnta_core import (
    FRESH,
    Child,
    Orbit,
    RegisterMap,
    RntaSpec,
    SymbolicRule,
    check,
)
from terms import Label, Signature, Term, free_names, nodes

AUTOMATA_DIR = Path(__file__).parent / "automata"

BUNDLED = ["universal", "root_reappears", "letter_twice", "xml_elem", "pi_calculus"]
FK_BUNDLED = ["universal", "root_reappears", "letter_twice"]

FK = Signature.of({"f": 2, "k": 0})


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive depth-3 checks (deselect with -m 'not slow')")


def bundled(stem: str) -> RntaSpec:
    return load_automaton(AUTOMATA_DIR / f"{stem}.rnta")


@pytest.fixture(scope="session")
def corpus() -> Dict[str, RntaSpec]:
    return {stem: bundled(stem) for stem in BUNDLED}


@pytest.fixture
def ab():
    a, b = names("a,b")
    return a, b


# ================== Singleton-Language Automata ==================

def singleton_automaton(t: Term, sig: Optional[Signature] = None) -> RntaSpec:
    """
    Automaton whose alphatic language is exactly the class of the closed term t.

    One orbit per node (pre-order), whose registers hold the names free in
    that node's subtree, in pool order.
    """
    all_nodes = list(nodes(t))
    ids = {id(n): f"n{i}" for i, n in enumerate(all_nodes)}
    regs = {id(n): sorted(free_names(n)) for n in all_nodes}
    if sig is None:
        sig = Signature.of({n.symbol: len(n.children) for n in all_nodes})

    orbits = tuple(Orbit(ids[id(n)], len(regs[id(n)])) for n in all_nodes)
    rules = []
    for n in all_nodes:
        parent = regs[id(n)]
        children = []
        for c in n.children:
            entries = {}
            for j, a in enumerate(regs[id(c)], 1):
                if n.label.bound and a == n.label.name:
                    entries[j] = FRESH
                else:
                    entries[j] = parent.index(a) + 1
            children.append(Child(ids[id(c)], RegisterMap.of(entries)))
        letter = None if n.label.bound else parent.index(n.label.name) + 1
        rules.append(SymbolicRule(ids[id(n)], n.label.bound, n.symbol, tuple(children), letter))
    return check(RntaSpec(sig, orbits, tuple(rules), ids[id(t)]))


# ================== Random Automata and Terms ==================

def random_automaton(rng: random.Random, max_orbits: int = 3, max_degree: int = 2,
                     sig: Signature = FK, max_rules: int = 2) -> RntaSpec:
    """Valid random automaton; orbit q0 is initial and has no registers."""
    count = rng.randint(1, max_orbits)
    orbits = [Orbit("q0", 0)] + [Orbit(f"q{i}", rng.randint(0, max_degree)) for i in range(1, count)]
    rules: List[SymbolicRule] = []
    for o in orbits:
        for f, arity in sig.symbols:
            for _ in range(rng.randint(0, max_rules)):
                bound = o.registers == 0 or rng.random() < 0.5
                sources: List[object] = list(range(1, o.registers + 1))
                if bound:
                    sources.append(FRESH)
                children = []
                for _ in range(arity):
                    fits = [c for c in orbits if c.registers <= len(sources)]
                    target = rng.choice(fits)
                    picked = rng.sample(sources, target.registers)
                    children.append(Child(target.id, RegisterMap.of(dict(zip(range(1, target.registers + 1), picked)))))
                letter = None if bound else rng.randint(1, o.registers)
                rules.append(SymbolicRule(o.id, bound, f, tuple(children), letter))
    return check(RntaSpec(sig, tuple(orbits), tuple(dict.fromkeys(rules)), "q0"))


def random_term(rng: random.Random, pool: List[Name], depth: int, sig: Signature = FK,
                bound_bias: float = 0.5) -> Term:
    """Random term of depth <= depth over pool."""
    bound = rng.random() < bound_bias
    a = rng.choice(pool)
    label = Label(bound and a != DUMMY, a)
    options = [(f, n) for f, n in sig.symbols if n == 0 or depth > 1]
    f, n = rng.choice(options)
    return Term(label, f, tuple(random_term(rng, pool, depth - 1, sig, bound_bias) for _ in range(n)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture(scope="session")
def random_automata() -> List[RntaSpec]:
    r = random.Random(7)
    return [random_automaton(r) for _ in range(50)]
