#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Alphatic and data-tree membership.

- Alphatic: literal acceptance by the name-dropped automaton, whose literal
  language is the alpha-closure of the original one.
- Local freshness: run the dropped automaton directly on the data tree,
  letting each node be read by a free rule or by a bound rule at its name.
- Global / branchwise freshness: enumerate nu-annotations of the data tree,
  keep clean / non-shadowing ones, test alphatic membership. Exponential in
  the node count; guarded by a node cap.
"""

from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

from namedrop import name_drop
from nominal_core import DUMMY
from rnta_core import RntaError, RntaSpec, accepts, accepts_from, initial_state
from terms import Term, is_clean, is_data_tree, is_non_shadowing, nodes, relabel, size
from config import CONFIG


class SemanticsKind(Enum):
    ALPHATIC = "alphatic"
    GLOBAL = "global"
    BRANCHWISE = "branchwise"
    LOCAL = "local"


class CapExceeded(RntaError):
    """Data tree too large for annotation enumeration."""


@lru_cache(maxsize=64)
def _name_dropped(spec: RntaSpec) -> RntaSpec:
    return name_drop(spec)


def dropped_form(spec: RntaSpec) -> RntaSpec:
    """name_drop(spec), or spec itself if already dropped. Results are cached per automaton."""
    if spec.dropped:
        return spec
    return _name_dropped(spec)


def member_alphatic(spec: RntaSpec, t: Term) -> bool:
    """[t] is in the alphatic language of spec."""
    return accepts(dropped_form(spec), t)


def annotations(s: Term) -> Iterator[Term]:
    """
    Every term t with denu(t) == s: each node independently free or bound,
    except dummy-labelled nodes, which stay free.
    """
    options = [(False,) if n.label.name == DUMMY else (False, True) for n in nodes(s)]
    for mask in product(*options):
        yield relabel(s, iter(mask))


def member_data(spec: RntaSpec, s: Term, kind: SemanticsKind, max_nodes: Optional[int] = None) -> bool:
    """
    Data-tree membership under a freshness semantics.

    Args:
        spec: Automaton
        s: Data tree (no binders)
        kind: GLOBAL, BRANCHWISE or LOCAL
        max_nodes: Node cap for GLOBAL/BRANCHWISE (defaults to RNTA_MAX_NODES)

    Raises:
        ValueError: If kind is ALPHATIC or s carries binders
        CapExceeded: If s is over the node cap for GLOBAL/BRANCHWISE
    """
    if kind is SemanticsKind.ALPHATIC:
        raise ValueError("member_data needs a freshness semantics; use member_alphatic")
    if not is_data_tree(s):
        raise ValueError("member_data expects a data tree (no nu)")

    dropped = dropped_form(spec)
    if kind is SemanticsKind.LOCAL:
        return accepts_from(dropped, initial_state(dropped), s, flexible=True)

    cap = CONFIG["semantics"]["max_nodes"] if max_nodes is None else max_nodes
    if size(s) > cap:
        raise CapExceeded(f"data tree has {size(s)} nodes, cap is {cap} (RNTA_MAX_NODES)")
    keep = is_clean if kind is SemanticsKind.GLOBAL else is_non_shadowing
    return any(keep(t) and accepts(dropped, t) for t in annotations(s))
