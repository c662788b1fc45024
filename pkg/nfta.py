#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Classical top-down NFTAs over the finite alphabet (labels over S) x symbols.

- restrict: cut an automaton down to the concrete states whose support lies
  in a finite name set S
- down_close: close the language downwards under the flattening order
- nfta_member / nfta_accepting_states: membership
- nfta_inclusion: antichain inclusion check with counterexample
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Deque, Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

from nominal_core import DUMMY, NameSet
from rnta_core import (
    ConcreteState,
    RntaError,
    RntaSpec,
    initial_state,
    instantiate,
)
from terms import Label, Term, postorder
from utils import info, log


@dataclass(frozen=True)
class NftaRule:
    """q ->(label, symbol) (q1..qn)"""

    state: Hashable
    label: Label
    symbol: str
    children: Tuple[Hashable, ...] = ()


@dataclass(frozen=True)
class Nfta:
    states: FrozenSet[Hashable]
    rules: Tuple[NftaRule, ...]
    initial: Hashable

    def rules_on(self) -> Dict[Tuple[Label, str], List[NftaRule]]:
        index: Dict[Tuple[Label, str], List[NftaRule]] = {}
        for r in self.rules:
            index.setdefault((r.label, r.symbol), []).append(r)
        return index


def nfta_size(n: Nfta) -> Tuple[int, int]:
    """(number of states, number of rules)"""
    return len(n.states), len(n.rules)


def validate_nfta(n: Nfta) -> List[str]:
    """Rules must only mention declared states; one arity per symbol."""
    problems = []
    arity: Dict[str, int] = {}
    if n.initial not in n.states:
        problems.append("initial state not declared")
    for r in n.rules:
        if r.state not in n.states or any(c not in n.states for c in r.children):
            problems.append(f"rule on {r.symbol} mentions an undeclared state")
        if arity.setdefault(r.symbol, len(r.children)) != len(r.children):
            problems.append(f"symbol {r.symbol} used with two arities")
    return problems


# ================== Restriction to a Finite Name Set ==================

def _states_of_orbit(spec: RntaSpec, orbit_id: str, pool: List) -> Iterable[ConcreteState]:
    regs = sorted(spec.orbit(orbit_id).live_registers)
    for values in permutations(pool, len(regs)):
        assignment = dict(zip(regs, values))
        if spec.uses_dummy:
            assignment[0] = DUMMY
        yield ConcreteState.of(orbit_id, assignment)


def _rules_from(spec: RntaSpec, q: ConcreteState, letters: List) -> List[NftaRule]:
    out = []
    for rule in (r for f, _ in spec.signature.symbols for r in spec.rules_for(q.orbit, f)):
        if rule.bound:
            for a in letters:
                kids = instantiate(spec, q, rule, a)
                if kids is not None:
                    out.append(NftaRule(q, Label.nu(a), rule.symbol, kids))
        else:
            a = q.value(rule.letter)
            kids = instantiate(spec, q, rule, a) if a is not None else None
            if kids is not None:
                out.append(NftaRule(q, Label.free(a), rule.symbol, kids))
    return out


def restrict(spec: RntaSpec, names: NameSet, reachable_only: bool = False) -> Nfta:
    """
    Restrict an automaton (plain or name-dropped) to the name set S.

    Args:
        spec: Valid automaton
        names: Finite set S; must contain the dummy name if spec uses it
        reachable_only: Keep only states reachable from the initial state
            (same language, smaller automaton)

    Returns:
        NFTA accepting L(spec) intersected with Terms_S

    Raises:
        RntaError: If the dummy name is required but missing from S
    """
    if spec.uses_dummy and DUMMY not in names:
        raise RntaError("restriction set must contain the dummy name '_'")
    letters = sorted(names)
    pool = [a for a in letters if not (spec.uses_dummy and a == DUMMY)]
    init = initial_state(spec)

    if reachable_only:
        states: Set[ConcreteState] = {init}
        todo: Deque[ConcreteState] = deque([init])
        rules: List[NftaRule] = []
        while todo:
            q = todo.popleft()
            for r in _rules_from(spec, q, letters):
                rules.append(r)
                for c in r.children:
                    if c not in states:
                        states.add(c)
                        todo.append(c)
    else:
        states = {q for o in spec.orbits for q in _states_of_orbit(spec, o.id, pool)}
        rules = [r for q in sorted(states) for r in _rules_from(spec, q, letters)]

    result = Nfta(frozenset(states), tuple(dict.fromkeys(rules)), init)
    info(f"[RESTRICT] |S|={len(names)}: {len(result.states)} states, {len(result.rules)} rules")
    return result


# ================== Downward Closure ==================

def down_close(n: Nfta) -> Nfta:
    """Add q ->(a, f) .. for every q ->(nu a, f) .. rule."""
    extra = [NftaRule(r.state, Label.free(r.label.name), r.symbol, r.children) for r in n.rules if r.label.bound]
    return Nfta(n.states, tuple(dict.fromkeys(list(n.rules) + extra)), n.initial)


# ================== Membership ==================

def nfta_accepting_states(n: Nfta, t: Term, _index: Optional[Dict] = None) -> FrozenSet[Hashable]:
    """States of n accepting t, computed bottom-up."""
    index = _index if _index is not None else n.rules_on()
    accepting: Dict[int, FrozenSet[Hashable]] = {}
    for node in postorder(t):
        kids = [accepting[id(c)] for c in node.children]
        accepting[id(node)] = frozenset(
            r.state
            for r in index.get((node.label, node.symbol), [])
            if len(r.children) == len(kids) and all(q in acc for q, acc in zip(r.children, kids))
        )
    return accepting[id(t)]


def nfta_member(n: Nfta, t: Term) -> bool:
    """The initial state accepts t; out-of-alphabet input is simply rejected."""
    return n.initial in nfta_accepting_states(n, t)


# ================== Inclusion ==================

@dataclass
class InclusionResult:
    holds: bool
    counterexample: Optional[Term] = None
    pairs: int = 0


@dataclass
class _Pair:
    state: Hashable
    reached: FrozenSet[Hashable]  # exact set of right-hand states accepting witness
    witness: Term
    alive: bool = field(default=True)


def nfta_inclusion(left: Nfta, right: Nfta) -> InclusionResult:
    """
    Decide L(left) included in L(right).

    Saturates pairs (s, T): s accepts some tree w in left and T is exactly
    the set of right states accepting w. Only pairs with a minimal T per s
    are kept (antichain). Inclusion fails iff some (left.initial, T) with
    right.initial not in T is reached; its tree is the counterexample.

    Returns:
        InclusionResult with holds, counterexample (first found, in
        breadth-first construction order) and number of pairs created
    """
    right_index = right.rules_on()
    by_child: Dict[Hashable, List[Tuple[NftaRule, int]]] = {}
    nullary: List[NftaRule] = []
    for r in left.rules:
        if not r.children:
            nullary.append(r)
        for pos, c in enumerate(r.children):
            by_child.setdefault(c, []).append((r, pos))

    antichain: Dict[Hashable, List[_Pair]] = {}
    queue: Deque[_Pair] = deque()
    created = 0

    def post(rule: NftaRule, reached: List[FrozenSet[Hashable]]) -> FrozenSet[Hashable]:
        return frozenset(
            r.state
            for r in right_index.get((rule.label, rule.symbol), [])
            if len(r.children) == len(reached) and all(q in t for q, t in zip(r.children, reached))
        )

    def add(state: Hashable, reached: FrozenSet[Hashable], witness: Term) -> Optional[Term]:
        nonlocal created
        bucket = antichain.setdefault(state, [])
        for p in bucket:
            if p.reached <= reached:
                return None
        for p in bucket:
            if reached <= p.reached:
                p.alive = False
        bucket[:] = [p for p in bucket if p.alive]
        pair = _Pair(state, reached, witness)
        bucket.append(pair)
        queue.append(pair)
        created += 1
        if state == left.initial and right.initial not in reached:
            return witness
        return None

    found: Optional[Term] = None
    for r in nullary:
        found = add(r.state, post(r, []), Term(r.label, r.symbol, ()))
        if found is not None:
            break

    while found is None and queue:
        pair = queue.popleft()
        if not pair.alive:
            continue
        for rule, pos in by_child.get(pair.state, []):
            choices = []
            for i, c in enumerate(rule.children):
                choices.append([pair] if i == pos else [p for p in antichain.get(c, []) if p.alive])
            for combo in product(*choices):
                witness = Term(rule.label, rule.symbol, tuple(p.witness for p in combo))
                found = add(rule.state, post(rule, [p.reached for p in combo]), witness)
                if found is not None:
                    break
            if found is not None:
                break

    info(f"[INCLUSION] {created} antichain pairs, {'counterexample' if found else 'holds'}")
    if found is None:
        return InclusionResult(True, None, created)
    if not nfta_member(left, found) or nfta_member(right, found):
        log(f"[ERR] counterexample self-check failed for {found}")
        raise AssertionError("inclusion counterexample does not separate the automata")
    return InclusionResult(False, found, created)
