#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Name-dropping modification.

Extends an automaton by states whose registers may be selectively emptied:
every orbit q with k registers yields orbits q@{D} for all D within 1..k,
and every rule is re-issued for each live set D and each choice of live
child registers compatible with D. The literal language of the result is
the alpha-closure of the literal language of the input.

Subset enumeration is eager (2^degree per orbit); duplicate rules arising
from different choices are removed structurally.
"""

from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from nominal_core import NameSet
from rnta_core import (
    FRESH,
    Child,
    ConcreteState,
    Orbit,
    RntaError,
    RntaSpec,
    SymbolicRule,
    check,
    degree,
)
from utils import info, subsets
from config import CONFIG


class NameDropError(RntaError):
    """Automaton cannot be name-dropped (already dropped, or degree cap exceeded)."""


def dropped_id(base: str, live: Iterable[int]) -> str:
    """Orbit id of the dropped copy of base with the given live registers."""
    return base + "@{" + ",".join(str(j) for j in sorted(live)) + "}"


def dropped_orbit(base: Orbit, live: FrozenSet[int]) -> Orbit:
    return Orbit(dropped_id(base.id, live), base.registers, frozenset(live), base.id)


def _child_choices(child: Child, allowed_sources: FrozenSet) -> List[Child]:
    """All restrictions of child to live sets drawn from registers fed by allowed_sources."""
    eligible = [j for j, src in child.regmap.entries if src in allowed_sources]
    out = []
    for keep in subsets(eligible):
        keep_set = frozenset(keep)
        out.append(Child(dropped_id(child.orbit, keep_set), child.regmap.restricted(keep_set)))
    return out


def _dropped_rules(rule: SymbolicRule, source: Orbit) -> Iterable[SymbolicRule]:
    for live in subsets(sorted(source.live_registers)):
        live_set = frozenset(live)
        if rule.bound:
            allowed = frozenset(live_set | {FRESH})
        else:
            if rule.letter != 0 and rule.letter not in live_set:
                continue
            allowed = live_set
        per_child = [_child_choices(ch, allowed) for ch in rule.children]
        for children in product(*per_child):
            yield SymbolicRule(
                source=dropped_id(source.id, live_set),
                bound=rule.bound,
                symbol=rule.symbol,
                children=tuple(children),
                letter=rule.letter,
            )


def name_drop(spec: RntaSpec) -> RntaSpec:
    """
    Build the name-dropping modification of a strong-form automaton.

    Args:
        spec: Valid automaton with total register assignments

    Returns:
        Dropped automaton; orbit ids carry the suffix @{live registers}

    Raises:
        NameDropError: If spec is already dropped or its degree exceeds
            the configured cap
        ValidationError: If spec is invalid
    """
    if spec.dropped:
        raise NameDropError("automaton is already name-dropped")
    check(spec)
    d = degree(spec)
    cap = CONFIG["limits"]["max_degree"]
    if d > cap:
        raise NameDropError(f"degree {d} exceeds name-dropping cap {cap} (RNTA_MAX_DEGREE)")

    orbits = [
        dropped_orbit(o, frozenset(live))
        for o in spec.orbits
        for live in subsets(sorted(o.live_registers))
    ]
    seen: Dict[SymbolicRule, None] = {}
    for rule in spec.rules:
        source = spec.orbit(rule.source)
        for r in _dropped_rules(rule, source):
            seen.setdefault(r, None)

    result = RntaSpec(
        signature=spec.signature,
        orbits=tuple(orbits),
        rules=tuple(seen),
        initial=dropped_id(spec.initial, ()),
        uses_dummy=spec.uses_dummy,
        dropped=True,
    )
    info(
        f"[NAMEDROP] orbits {len(spec.orbits)} -> {len(result.orbits)}, "
        f"rules {len(spec.rules)} -> {len(result.rules)}, degree {d}"
    )
    return result


def _embed(spec: RntaSpec, rule: SymbolicRule) -> SymbolicRule:
    """The copy of rule living on the full-register orbits of the dropped automaton."""
    def full(orbit_id: str) -> str:
        return dropped_id(orbit_id, spec.orbit(orbit_id).live_registers)

    return SymbolicRule(
        source=full(rule.source),
        bound=rule.bound,
        symbol=rule.symbol,
        children=tuple(Child(full(ch.orbit), ch.regmap) for ch in rule.children),
        letter=rule.letter,
    )


def check_subautomaton(spec: RntaSpec, other: RntaSpec) -> bool:
    """
    Every rule of spec occurs in other: through the full-register embedding
    when other is the dropped form of spec, literally otherwise.
    """
    present: Set[SymbolicRule] = set(other.rules)
    embed = other.dropped and not spec.dropped
    for rule in spec.rules:
        candidate = _embed(spec, rule) if embed else rule
        if candidate not in present:
            return False
    return True


def project_rule(spec: RntaSpec, rule: SymbolicRule) -> Optional[SymbolicRule]:
    """
    The rule of spec that a rule of its dropped form was derived from.

    A match has the same kind, symbol and letter register, children on the
    base orbits, and register maps that extend the dropped maps.
    """
    if "@" not in rule.source:
        return None
    base_source = rule.source.split("@", 1)[0]
    for cand in spec.rules_for(base_source, rule.symbol):
        if cand.bound != rule.bound or cand.letter != rule.letter:
            continue
        if len(cand.children) != len(rule.children):
            continue
        ok = True
        for full, part in zip(cand.children, rule.children):
            if part.orbit.split("@", 1)[0] != full.orbit:
                ok = False
                break
            if not set(part.regmap.entries) <= set(full.regmap.entries):
                ok = False
                break
        if ok:
            return cand
    return None


def restrict_state(q: ConcreteState, keep: NameSet) -> ConcreteState:
    """
    The restriction q|N: registers holding names outside keep are emptied.
    The dummy register (0) is always kept.
    """
    kept = tuple((j, a) for j, a in q.assignment if j == 0 or a in keep)
    live = [j for j, _ in kept if j != 0]
    return ConcreteState(dropped_id(q.orbit, live), kept)
