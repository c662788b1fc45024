#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Language inclusion for nominal tree automata.

Alphatic inclusion L(A) within L(B) is reduced to classical NFTA inclusion:
restrict A and the name-dropped B to a finite name set S large enough that
every accepted class of A has a representative over S, then compare the
restricted literal languages. Local freshness inclusion additionally closes
the right-hand side downwards under the flattening order. Global and
branchwise inclusion coincide with alphatic inclusion.
"""

import datetime as dt
from dataclasses import dataclass, field
from typing import Dict, Optional

from nominal_core import DUMMY, NameSet, format_names, fresh_names
from nfta import down_close, nfta_inclusion, nfta_size, restrict
from oracle import brute_include, brute_member_alphatic, brute_member_data
from rnta_core import RntaError, RntaSpec, check, degree, orbit_count
from semantics import SemanticsKind, dropped_form
from terms import Term, clean_variant, denu, size
from utils import elapsed_ms, info, log
from config import CONFIG


class SignatureMismatch(RntaError):
    """The two automata do not share a signature (or dummy convention)."""


@dataclass
class IncludeResult:
    """Outcome of an inclusion query; stats feed the run ledger."""

    holds: bool
    kind: SemanticsKind
    witness: Optional[Term] = None
    data_tree: Optional[Term] = None
    restriction: NameSet = frozenset()
    stats: Dict[str, int] = field(default_factory=dict)


def restriction_set(spec: RntaSpec, other: Optional[RntaSpec] = None) -> NameSet:
    """
    Names sufficient to represent every accepted class of spec.

    Args:
        spec: Valid automaton (the left-hand side of an inclusion)
        other: Optional right-hand side; its dummy use is honoured as well

    Returns:
        degree(spec) * max_arity + 1 pool names in interning order, plus
        the dummy name when either automaton uses it
    """
    k = degree(spec) * spec.signature.max_arity + 1
    chosen = set(fresh_names(k))
    if spec.uses_dummy or (other is not None and other.uses_dummy):
        chosen.add(DUMMY)
    return frozenset(chosen)


def include(
    left: RntaSpec,
    right: RntaSpec,
    kind: SemanticsKind = SemanticsKind.ALPHATIC,
    verify: Optional[bool] = None,
) -> IncludeResult:
    """
    Decide inclusion of the language of left in that of right.

    Args:
        left: Valid automaton A
        right: Valid automaton B over the same signature
        kind: Semantics under which the languages are compared
        verify: Cross-check against the brute-force oracle (defaults to
            RNTA_VERIFY)

    Returns:
        IncludeResult; on failure witness is a term accepted by A whose
        class B rejects, and for the freshness semantics data_tree is a
        data tree in A's language but not in B's

    Raises:
        SignatureMismatch: If the signatures or dummy conventions differ
        ValidationError: If either automaton is invalid
    """
    if left.signature != right.signature:
        raise SignatureMismatch(f"signatures differ: [{left.signature}] vs [{right.signature}]")
    if left.uses_dummy != right.uses_dummy:
        raise SignatureMismatch("one automaton reads unlabelled nodes (uses_dummy), the other does not")
    check(left)
    check(right)

    start = dt.datetime.now()
    names = restriction_set(left, right)
    info(f"[INCLUSION] {kind.value}: S = {format_names(names)}")

    lhs = restrict(left, names, reachable_only=True)
    rhs = restrict(dropped_form(right), names, reachable_only=True)
    if kind is SemanticsKind.LOCAL:
        rhs = down_close(rhs)
    outcome = nfta_inclusion(lhs, rhs)

    result = IncludeResult(outcome.holds, kind, restriction=names)
    if not outcome.holds:
        result.witness = outcome.counterexample
        if kind is not SemanticsKind.ALPHATIC:
            # a clean representative keeps the flattened witness a counterexample
            result.data_tree = denu(clean_variant(outcome.counterexample))
    result.stats = {
        "orbits_a": orbit_count(left),
        "orbits_b": orbit_count(right),
        "degree_a": degree(left),
        "degree_b": degree(right),
        "restriction_size": len(names),
        "nfta_states_a": nfta_size(lhs)[0],
        "nfta_states_b": nfta_size(rhs)[0],
        "pairs": outcome.pairs,
        "elapsed_ms": elapsed_ms(start),
    }

    if verify if verify is not None else CONFIG["verify"]["enable"]:
        verify_result(left, right, result)
    return result


def verify_result(left: RntaSpec, right: RntaSpec, result: IncludeResult) -> bool:
    """
    Cross-check an inclusion answer against the brute-force oracle.

    A counterexample is re-checked semantically; a positive answer is
    checked by bounded enumeration up to RNTA_VERIFY_DEPTH. Disagreements
    are logged as [VERIFY] warnings, and raise AssertionError when
    RNTA_DEBUG is on.

    Returns:
        True when no disagreement was found
    """
    kind = result.kind
    problems = []
    if result.holds:
        depth = CONFIG["verify"]["depth"]
        found = brute_include(left, right, kind, result.restriction, depth)
        if found is not None:
            problems.append(f"inclusion reported but enumeration found {found}")
    elif kind is SemanticsKind.ALPHATIC or result.data_tree is None:
        w = result.witness
        if not brute_member_alphatic(left, w) or brute_member_alphatic(right, w):
            problems.append(f"witness {w} does not separate the alphatic languages")
    else:
        s = result.data_tree
        if size(s) > CONFIG["semantics"]["max_nodes"]:
            log(f"[WARN] [VERIFY] witness data tree has {size(s)} nodes; skipped")
        elif not brute_member_data(left, s, kind) or brute_member_data(right, s, kind):
            problems.append(f"data tree {s} does not separate the {kind.value} languages")

    for p in problems:
        log(f"[WARN] [VERIFY] {p}")
    if problems and CONFIG["logging"]["debug"]:
        raise AssertionError("; ".join(problems))
    if not problems:
        info(f"[VERIFY] {kind.value} answer confirmed")
    return not problems
