#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Nominal terms and data trees.

A term is a ranked tree whose every node carries either a free name (a.f)
or a binder (nu a.f) scoping the node's children. Term equality is literal;
alpha-equivalence is always asked for explicitly through alpha_eq.

The dummy name "_" is a fixed free name: it labels unlabelled nodes and is
never bound. Traversals use explicit stacks, so term depth is not limited by
the interpreter's recursion limit.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Set, Tuple

from nominal_core import (
    DUMMY,
    Name,
    NameSet,
    Permutation,
    fresh_for,
    swap,
)


@dataclass(frozen=True)
class Signature:
    """Finite ranked alphabet: symbol -> arity."""

    symbols: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, symbols: Mapping[str, int]) -> "Signature":
        return cls(tuple(sorted(symbols.items())))

    @cached_property
    def _arities(self) -> Dict[str, int]:
        return dict(self.symbols)

    def arity(self, symbol: str) -> Optional[int]:
        return self._arities.get(symbol)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._arities

    @property
    def max_arity(self) -> int:
        return max((n for _, n in self.symbols), default=0)

    def constants(self) -> List[str]:
        return [f for f, n in self.symbols if n == 0]

    def __str__(self) -> str:
        return ", ".join(f"{f}/{n}" for f, n in self.symbols)


@dataclass(frozen=True, order=True)
class Label:
    """Node label: a free name a, or a binder nu a."""

    bound: bool
    name: Name

    def __post_init__(self):
        if self.bound and self.name == DUMMY:
            raise ValueError(f"the dummy name {DUMMY} cannot be bound")

    @classmethod
    def free(cls, a: Name) -> "Label":
        return cls(False, a)

    @classmethod
    def nu(cls, a: Name) -> "Label":
        return cls(True, a)

    def __str__(self) -> str:
        return f"nu {self.name}" if self.bound else str(self.name)


@dataclass(frozen=True)
class Term:
    label: Label
    symbol: str
    children: Tuple["Term", ...] = field(default=())

    def __str__(self) -> str:
        return render_term(self)


# DataTree is a Term without binders; see is_data_tree
DataTree = Term


def mk(label: Label, symbol: str, *children: Term) -> Term:
    """Shorthand constructor with variadic children."""
    return Term(label, symbol, tuple(children))


def _head(t: Term) -> str:
    if not t.label.bound and t.label.name == DUMMY:
        return t.symbol
    if t.label.bound:
        return f"nu {t.label.name}. {t.symbol}"
    return f"{t.label.name}.{t.symbol}"


def render_term(t: Term) -> str:
    """Concrete syntax: `nu a. f(a.k, b.k)`; dummy-labelled nodes print bare."""
    parts: List[str] = []
    stack: List[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        parts.append(_head(item))
        if item.children:
            parts.append("(")
            stack.append(")")
            last = len(item.children) - 1
            for i, c in enumerate(reversed(item.children)):
                stack.append(c)
                if i < last:
                    stack.append(", ")
    return "".join(parts)


# ================== Basic Measures ==================

def nodes(t: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        stack.extend(reversed(u.children))


def postorder(t: Term) -> List[Term]:
    """Every node after all of its descendants."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        out.append(u)
        stack.extend(u.children)
    out.reverse()
    return out


def depth(t: Term) -> int:
    best = 0
    stack = [(t, 1)]
    while stack:
        u, d = stack.pop()
        best = max(best, d)
        stack.extend((c, d + 1) for c in u.children)
    return best


def size(t: Term) -> int:
    return sum(1 for _ in nodes(t))


def all_names(t: Term) -> NameSet:
    """Every name occurring in t, free or bound (the support of t)."""
    return frozenset(n.label.name for n in nodes(t))


def binder_count(t: Term) -> int:
    return sum(1 for n in nodes(t) if n.label.bound)


def check_arity(t: Term, sig: Signature) -> List[str]:
    """List of arity/symbol problems in t against sig (empty when well-formed)."""
    problems = []
    for n in nodes(t):
        arity = sig.arity(n.symbol)
        if arity is None:
            problems.append(f"unknown symbol {n.symbol!r}")
        elif arity != len(n.children):
            problems.append(f"symbol {n.symbol!r} has arity {arity}, got {len(n.children)} children")
    return problems


# ================== Free Names and the Action ==================

def free_names(t: Term) -> NameSet:
    """FN: free labels contribute, binders remove their name from the children's union."""
    out: Set[Name] = set()
    stack: List[Tuple[Term, NameSet]] = [(t, frozenset())]
    while stack:
        u, bound_above = stack.pop()
        a = u.label.name
        if u.label.bound:
            if a not in bound_above:
                bound_above = bound_above | {a}
        elif a not in bound_above:
            out.add(a)
        stack.extend((c, bound_above) for c in u.children)
    return frozenset(out)


def is_closed(t: Term) -> bool:
    return not free_names(t)


def act(p: Permutation, t: Term) -> Term:
    """Permutation action: rename every label, binders included."""
    if p.is_identity():
        return t
    return Term(
        Label(t.label.bound, p(t.label.name)),
        t.symbol,
        tuple(act(p, c) for c in t.children),
    )


# ================== Alpha-Equivalence ==================

def _tuple_names(ts: Tuple[Term, ...]) -> NameSet:
    out: Set[Name] = set()
    for c in ts:
        out |= all_names(c)
    return frozenset(out)


def alpha_eq(t: Term, s: Term) -> bool:
    """
    t and s are alpha-equivalent.

    Binders are compared through the abstraction characterisation:
    <a>x = <b>y iff (c a).x = (c b).y for some c fresh for a, b, x, y.
    """
    if t.symbol != s.symbol or len(t.children) != len(s.children):
        return False
    if t.label.bound != s.label.bound:
        return False
    if not t.label.bound:
        if t.label.name != s.label.name:
            return False
        return all(alpha_eq(x, y) for x, y in zip(t.children, s.children))
    a, b = t.label.name, s.label.name
    if a == b:
        return all(alpha_eq(x, y) for x, y in zip(t.children, s.children))
    c = fresh_for(_tuple_names(t.children) | _tuple_names(s.children) | {a, b})
    pa, pb = swap(c, a), swap(c, b)
    return all(alpha_eq(act(pa, x), act(pb, y)) for x, y in zip(t.children, s.children))


def clean_variant(t: Term) -> Term:
    """An alpha-equivalent clean term: every binder gets its own fresh name."""
    used: Set[Name] = set(free_names(t))

    def rename(u: Term, env: Dict[Name, Name]) -> Term:
        if u.label.bound:
            new = fresh_for(used)
            used.add(new)
            inner = dict(env)
            inner[u.label.name] = new
            return Term(Label.nu(new), u.symbol, tuple(rename(c, inner) for c in u.children))
        a = env.get(u.label.name, u.label.name)
        return Term(Label.free(a), u.symbol, tuple(rename(c, env) for c in u.children))

    return rename(t, {})


# ================== Cleanliness ==================

def _bound_names(t: Term) -> List[Name]:
    return [n.label.name for n in nodes(t) if n.label.bound]


def is_clean(t: Term) -> bool:
    """All bound names pairwise distinct and none of them free in t."""
    bound = _bound_names(t)
    return len(bound) == len(set(bound)) and not (set(bound) & free_names(t))


def is_non_shadowing(t: Term) -> bool:
    """On every root-to-leaf branch, bound names are distinct and not free in t."""
    fn = free_names(t)

    def walk(u: Term, seen: NameSet) -> bool:
        if u.label.bound:
            a = u.label.name
            if a in seen or a in fn:
                return False
            seen = seen | {a}
        return all(walk(c, seen) for c in u.children)

    return walk(t, frozenset())


# ================== Data Trees ==================

def is_data_tree(t: Term) -> bool:
    return not any(n.label.bound for n in nodes(t))


def denu(t: Term) -> Term:
    """Drop every nu: binders become free labels of the same name."""
    return Term(Label.free(t.label.name), t.symbol, tuple(denu(c) for c in t.children))


# ================== Flattening Order ==================

def flat_leq(t: Term, s: Term) -> bool:
    """t arises from s by turning zero or more binders nu a into free labels a."""
    if t.symbol != s.symbol or len(t.children) != len(s.children):
        return False
    if t.label.name != s.label.name:
        return False
    if t.label.bound and not s.label.bound:
        return False
    return all(flat_leq(x, y) for x, y in zip(t.children, s.children))


def alpha_increase_witness(t: Term, s: Term, t2: Term) -> Term:
    """
    Given t =alpha s and t <= t2 (flattening order), build s2 with
    t2 =alpha s2 and s <= s2.

    Corresponding positions of alpha-equivalent terms carry labels of the
    same kind, so s2 is s with the binders of t2 re-introduced position-wise.
    """
    kids = tuple(alpha_increase_witness(x, y, z) for x, y, z in zip(t.children, s.children, t2.children))
    return Term(Label(t2.label.bound, s.label.name), s.symbol, kids)


def relabel(t: Term, bound_mask: Iterator[bool]) -> Term:
    """Rebuild t in pre-order, taking each node's binder flag from bound_mask."""
    flag = next(bound_mask)
    kids = tuple(relabel(c, bound_mask) for c in t.children)
    return Term(Label(flag, t.label.name), t.symbol, kids)
