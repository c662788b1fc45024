#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Brute-force reference implementations.

Everything here is exponential on purpose; it backs the test-suite and the
--verify cross-check, never the decision procedures themselves.
"""

from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Set, Tuple

from nominal_core import DUMMY, Name, NameSet, fresh_names
from rnta_core import ConcreteState, RntaSpec, initial_state, instantiate
from semantics import SemanticsKind, annotations
from terms import (
    Label,
    Signature,
    Term,
    binder_count,
    clean_variant,
    depth as term_depth,
    free_names,
    is_clean,
    is_non_shadowing,
    nodes,
    relabel,
    render_term,
)

Scope = Tuple[Tuple[Name, Name], ...]


# ================== Enumeration ==================

def enum_terms(sig: Signature, names: NameSet, depth: int, data_only: bool = False) -> Iterator[Term]:
    """
    Every well-formed term of depth <= depth over names, each exactly once.

    Order: by depth, then label kind (free first), name index, symbol and
    children in product order. The dummy name only appears free.

    Args:
        sig: Signature with at least one constant
        names: Pool for free and bound labels
        depth: Maximum depth (>= 1)
        data_only: Only free labels (data trees)
    """
    kinds = (False,) if data_only else (False, True)
    labels = [Label(bound, a) for bound in kinds for a in sorted(names) if not (bound and a == DUMMY)]
    below: List[Tuple[Term, int]] = []
    for d in range(1, depth + 1):
        level: List[Term] = []
        for label in labels:
            for f, n in sig.symbols:
                if n == 0:
                    if d == 1:
                        level.append(Term(label, f))
                    continue
                if d == 1:
                    continue
                for combo in product(below, repeat=n):
                    if max(cd for _, cd in combo) == d - 1:
                        level.append(Term(label, f, tuple(c for c, _ in combo)))
        yield from level
        below.extend((t, d) for t in level)


def brute_language(spec: RntaSpec, names: NameSet, depth: int) -> Set[Term]:
    """
    Literal language of spec within Terms over names, up to depth.

    Terms are generated top-down from the initial state: every rule is fired
    at every letter of names it accepts, and the children's languages one
    level shallower are combined. Generated sets are shared per
    (state, remaining depth).
    """
    letters = sorted(names)
    memo: Dict[Tuple[ConcreteState, int], List[Term]] = {}

    def generate(q: ConcreteState, d: int) -> List[Term]:
        key = (q, d)
        if key in memo:
            return memo[key]
        out: List[Term] = []
        for f, n in spec.signature.symbols:
            if n > 0 and d == 1:
                continue
            for rule in spec.rules_for(q.orbit, f):
                if rule.bound:
                    fired = [(Label.nu(a), instantiate(spec, q, rule, a)) for a in letters]
                else:
                    a = q.value(rule.letter)
                    fired = [(Label.free(a), instantiate(spec, q, rule, a))] if a in names else []
                for label, kids in fired:
                    if kids is None:
                        continue
                    for combo in product(*(generate(k, d - 1) for k in kids)):
                        out.append(Term(label, f, combo))
        memo[key] = out
        return out

    return set(generate(initial_state(spec), depth)) if depth >= 1 else set()


@lru_cache(maxsize=16)
def accepted_classes(spec: RntaSpec, names: NameSet, depth: int) -> Tuple[Term, ...]:
    """Clean representatives of the classes of brute_language, by depth then text."""
    classes = {clean_variant(t) for t in brute_language(spec, names, depth)}
    return tuple(sorted(classes, key=lambda t: (term_depth(t), render_term(t))))


# ================== Alpha-Variants ==================

def _resolve(a: Name, scope: Scope) -> Optional[Name]:
    """
    Renamed occurrence of the free label a under scope (innermost binder
    last), or None when the renaming would capture it.
    """
    for i in range(len(scope) - 1, -1, -1):
        orig, new = scope[i]
        if orig == a:
            if any(n == new for _, n in scope[i + 1:]):
                return None
            return new
    if any(n == a for _, n in scope):
        return None
    return a


def alpha_variants(t: Term, pool: NameSet) -> Set[Term]:
    """All terms with every name in pool that are alpha-equivalent to t."""
    if not free_names(t) <= pool:
        return set()
    binders = [b for b in sorted(pool) if b != DUMMY]

    def build(u: Term, scope: Scope) -> List[Term]:
        out: List[Term] = []
        if u.label.bound:
            for b in binders:
                inner = scope + ((u.label.name, b),)
                for kids in product(*(build(c, inner) for c in u.children)):
                    out.append(Term(Label.nu(b), u.symbol, kids))
            return out
        new = _resolve(u.label.name, scope)
        if new is None:
            return out
        for kids in product(*(build(c, scope) for c in u.children)):
            out.append(Term(Label.free(new), u.symbol, kids))
        return out

    return set(build(t, ()))


def alpha_close(lang: Set[Term], names: NameSet) -> Set[Term]:
    """Alpha-closure of a finite literal language within Terms over names."""
    representatives: Dict[Term, Term] = {}
    for t in lang:
        representatives.setdefault(clean_variant(t), t)
    out: Set[Term] = set()
    for t in representatives.values():
        out |= alpha_variants(t, names)
    return out


# ================== Semantic Membership ==================

def variant_pool(spec: RntaSpec, t: Term, binders: Optional[int] = None) -> NameSet:
    """FN(t), the dummy if used, and `binders` fresh names (default: one per binder of t)."""
    base = set(free_names(t))
    if spec.uses_dummy:
        base.add(DUMMY)
    k = binder_count(t) if binders is None else binders
    return frozenset(base | set(fresh_names(k, avoid=base)))


def brute_member_alphatic(spec: RntaSpec, t: Term, flexible: bool = False) -> bool:
    """
    [t] is in the alphatic language of spec, by searching literal runs over
    alpha-variants of t whose bound names come from variant_pool.

    Binder names are chosen top-down while running the automaton, so
    hopeless variants are cut off at the first node no rule can read. Names
    not yet in play are interchangeable: each binder tries the free names of
    t, the names already bound on its branch and one unused name.

    With flexible set, t is a data tree and every node not labelled by the
    dummy may also be read as a binder: the search then ranges over all
    nu-annotations of t at once (local freshness).
    """
    if flexible:
        pool = variant_pool(spec, t, sum(1 for n in nodes(t) if n.label.name != DUMMY))
    else:
        pool = variant_pool(spec, t)
    binders = [b for b in sorted(pool) if b != DUMMY]
    fn = free_names(t)
    memo: Dict[Tuple[ConcreteState, int, Scope], bool] = {}

    def binder_names(scope: Scope) -> List[Name]:
        taken = fn | {n for _, n in scope}
        spare = [b for b in binders if b not in taken][:1]
        return [b for b in binders if b in taken] + spare

    def run(q: ConcreteState, u: Term, scope: Scope) -> bool:
        key = (q, id(u), scope)
        hit = memo.get(key)
        if hit is not None:
            return hit
        may_bind = u.label.bound or (flexible and u.label.name != DUMMY)
        result = False
        for rule in spec.rules_for(q.orbit, u.symbol):
            if len(rule.children) != len(u.children):
                continue
            if rule.bound and not may_bind:
                continue
            if not rule.bound and u.label.bound:
                continue
            if rule.bound:
                choices = [(b, scope + ((u.label.name, b),)) for b in binder_names(scope)]
            else:
                a = _resolve(u.label.name, scope)
                choices = [(a, scope)] if a is not None else []
            for a, inner in choices:
                kids = instantiate(spec, q, rule, a)
                if kids is not None and all(run(k, c, inner) for k, c in zip(kids, u.children)):
                    result = True
                    break
            if result:
                break
        memo[key] = result
        return result

    return run(initial_state(spec), t, ())


def brute_member_data(spec: RntaSpec, s: Term, kind: SemanticsKind) -> bool:
    """
    Data-tree membership by nu-annotation and brute_member_alphatic.

    Local freshness searches the annotations lazily; global and branchwise
    freshness enumerate them and keep the clean / non-shadowing ones.
    """
    if kind is SemanticsKind.ALPHATIC:
        raise ValueError("brute_member_data needs a freshness semantics")
    if kind is SemanticsKind.LOCAL:
        return brute_member_alphatic(spec, s, flexible=True)
    keep = is_clean if kind is SemanticsKind.GLOBAL else is_non_shadowing
    return any(keep(t) and brute_member_alphatic(spec, t) for t in annotations(s))


# ================== Inclusion ==================

def raisings(t: Term) -> Iterator[Term]:
    """Every u with t below u in the flattening order: free non-dummy nodes may become binders."""
    options = [(True,) if n.label.bound else (False,) if n.label.name == DUMMY else (False, True) for n in nodes(t)]
    for mask in product(*options):
        yield relabel(t, iter(mask))


def brute_include(
    left: RntaSpec,
    right: RntaSpec,
    kind: SemanticsKind,
    names: NameSet,
    depth: int,
) -> Optional[Term]:
    """
    Bounded inclusion check by enumeration.

    Alphatic: every accepted class of left over names (depth <= depth) must
    be accepted by right. Freshness semantics: every data tree over names
    (depth <= depth) in the left language must be in the right one.

    Returns:
        First counterexample (by depth, then text for classes; in
        enumeration order for data trees), or None
    """
    if kind is SemanticsKind.ALPHATIC:
        for t in accepted_classes(left, names, depth):
            if not brute_member_alphatic(right, t):
                return t
        return None
    for s in enum_terms(left.signature, names, depth, data_only=True):
        if brute_member_data(left, s, kind) and not brute_member_data(right, s, kind):
            return s
    return None


def brute_include_classes(
    left: RntaSpec,
    right: RntaSpec,
    kind: SemanticsKind,
    names: NameSet,
    depth: int,
) -> Optional[Term]:
    """
    Bounded inclusion check over the accepted classes of left.

    Alphatic, global and branchwise inclusion need every class of left
    accepted by right. Local inclusion needs, for every class t of left,
    some u obtained by turning free nodes of t into binders whose class
    right accepts. Cheaper than brute_include for deep bounds, as only the
    accepted terms of left are generated.

    Returns:
        Clean representative of the first failing class, or None
    """
    for t in accepted_classes(left, names, depth):
        if kind is SemanticsKind.LOCAL:
            ok = any(brute_member_alphatic(right, u) for u in raisings(t))
        else:
            ok = brute_member_alphatic(right, t)
        if not ok:
            return t
    return None
