#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Symbolic regular nominal tree automata.

An automaton is presented by finitely many orbits (control states with a
register count) and register-indexed rewrite rules. A concrete state is an
orbit together with an injective assignment of names to its registers.

Free rule   q(a.f(x1..xn)) -> a.f(q1(x1)..qn(xn)):
    a must be the content of the rule's letter register; child registers
    are filled from parent registers.
Bound rule  q(nu a.f(x1..xn)) -> nu a.f(q1(x1)..qn(xn)):
    child registers are filled from parent registers or from the bound
    name (FRESH slot). The bound name is anonymous, so the rule fires for
    every letter a that is not inherited by some child through a parent
    register. This is exactly alpha-invariant instantiation of the
    abstraction <a>(q1..qn), and makes equivariance hold by construction.

When uses_dummy is set, register 0 of every orbit permanently holds the
dummy name "_" (the label of unlabelled nodes) and is passed to every
child implicitly. The dummy name is fixed and free: bound rules never fire
at it.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Generator, List, Mapping, Optional, Set, Tuple, Union

from nominal_core import DUMMY, Name, NameSet, Permutation
from terms import Signature, Term, free_names
from utils import debug
from config import CONFIG

# Source of a child register that receives the bound name
FRESH = "new"

Source = Union[int, str]


class RntaError(Exception):
    """Root of all toolkit errors."""


class ValidationError(RntaError):
    """Automaton failed validation; carries the violation list."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid automaton")


# ================== Domain Types ==================

@dataclass(frozen=True)
class Orbit:
    """
    Control state with registers 1..registers.

    For name-dropped automata, base names the orbit it was derived from and
    live holds the registers that are still occupied.
    """

    id: str
    registers: int
    live: Optional[FrozenSet[int]] = None
    base: Optional[str] = None

    @property
    def live_registers(self) -> FrozenSet[int]:
        if self.live is None:
            return frozenset(range(1, self.registers + 1))
        return self.live


@dataclass(frozen=True)
class RegisterMap:
    """Injective map child register -> parent register or FRESH."""

    entries: Tuple[Tuple[int, Source], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[int, Source]) -> "RegisterMap":
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> Dict[int, Source]:
        return dict(self.entries)

    @property
    def domain(self) -> FrozenSet[int]:
        return frozenset(j for j, _ in self.entries)

    def parent_sources(self) -> List[int]:
        return [src for _, src in self.entries if src != FRESH]

    def uses_fresh(self) -> bool:
        return any(src == FRESH for _, src in self.entries)

    def restricted(self, keep: FrozenSet[int]) -> "RegisterMap":
        return RegisterMap(tuple((j, src) for j, src in self.entries if j in keep))


@dataclass(frozen=True)
class Child:
    orbit: str
    regmap: RegisterMap = field(default_factory=RegisterMap)


@dataclass(frozen=True)
class SymbolicRule:
    source: str
    bound: bool
    symbol: str
    children: Tuple[Child, ...] = ()
    letter: Optional[int] = None  # letter register of a free rule

    def inherited_registers(self) -> FrozenSet[int]:
        """Parent registers read by at least one child."""
        out: Set[int] = set()
        for ch in self.children:
            out.update(ch.regmap.parent_sources())
        return frozenset(out)


@dataclass(frozen=True)
class RntaSpec:
    signature: Signature
    orbits: Tuple[Orbit, ...]
    rules: Tuple[SymbolicRule, ...]
    initial: str
    uses_dummy: bool = False
    dropped: bool = False

    @cached_property
    def orbit_map(self) -> Dict[str, Orbit]:
        return {o.id: o for o in self.orbits}

    @cached_property
    def _rule_index(self) -> Dict[Tuple[str, str], List[SymbolicRule]]:
        index: Dict[Tuple[str, str], List[SymbolicRule]] = {}
        for r in self.rules:
            index.setdefault((r.source, r.symbol), []).append(r)
        return index

    def rules_for(self, orbit: str, symbol: str) -> List[SymbolicRule]:
        return self._rule_index.get((orbit, symbol), [])

    def orbit(self, orbit_id: str) -> Orbit:
        return self.orbit_map[orbit_id]


@dataclass(frozen=True, order=True)
class ConcreteState:
    """Orbit plus injective (possibly partial) register assignment."""

    orbit: str
    assignment: Tuple[Tuple[int, Name], ...] = ()

    @classmethod
    def of(cls, orbit: str, mapping: Mapping[int, Name]) -> "ConcreteState":
        return cls(orbit, tuple(sorted(mapping.items())))

    def as_dict(self) -> Dict[int, Name]:
        return dict(self.assignment)

    def value(self, register: int) -> Optional[Name]:
        for j, a in self.assignment:
            if j == register:
                return a
        return None

    def __str__(self) -> str:
        body = ",".join(f"{j}={a}" for j, a in self.assignment if j != 0)
        return f"{self.orbit}({body})"


# ================== Validation ==================

def validate(spec: RntaSpec) -> List[str]:
    """
    Check the structural invariants of a symbolic automaton.

    Returns:
        List of violations naming the offending orbit/rule (empty when ok)
    """
    violations: List[str] = []
    sig = spec.signature
    if not sig.constants():
        violations.append("signature has no constant")
    if not spec.orbits:
        violations.append("automaton has no orbits")

    seen: Set[str] = set()
    for o in spec.orbits:
        if o.id in seen:
            violations.append(f"orbit {o.id}: declared twice")
        seen.add(o.id)
        if o.registers < 0:
            violations.append(f"orbit {o.id}: negative register count")
        if o.live is not None and not o.live <= frozenset(range(1, o.registers + 1)):
            violations.append(f"orbit {o.id}: live registers out of range")

    orbits = spec.orbit_map
    init = orbits.get(spec.initial)
    if init is None:
        violations.append(f"initial orbit {spec.initial} is not declared")
    elif init.live_registers:
        violations.append(f"initial orbit {spec.initial} must have empty support")

    for idx, rule in enumerate(spec.rules, 1):
        where = f"rule {idx} ({rule.source} {'bound' if rule.bound else 'free'} {rule.symbol})"
        violations.extend(_rule_violations(spec, rule, where))
    return violations


def _rule_violations(spec: RntaSpec, rule: SymbolicRule, where: str) -> List[str]:
    out: List[str] = []
    src = spec.orbit_map.get(rule.source)
    if src is None:
        return [f"{where}: unknown orbit {rule.source}"]
    arity = spec.signature.arity(rule.symbol)
    if arity is None:
        out.append(f"{where}: unknown symbol {rule.symbol}")
    elif arity != len(rule.children):
        out.append(f"{where}: symbol {rule.symbol} has arity {arity}, rule has {len(rule.children)} children")

    parent_regs = src.live_registers
    if rule.bound:
        if rule.letter is not None:
            out.append(f"{where}: bound rule carries a letter register")
    else:
        letter_ok = rule.letter in parent_regs or (spec.uses_dummy and rule.letter == 0)
        if rule.letter is None or not letter_ok:
            out.append(f"{where}: letter register {rule.letter} not a register of {rule.source}")

    for pos, ch in enumerate(rule.children, 1):
        target = spec.orbit_map.get(ch.orbit)
        if target is None:
            out.append(f"{where}: child {pos} has unknown orbit {ch.orbit}")
            continue
        mapping = ch.regmap.as_dict()
        if len(mapping) != len(ch.regmap.entries):
            out.append(f"{where}: child {pos} assigns a register twice")
        if ch.regmap.domain != target.live_registers:
            out.append(
                f"{where}: child {pos} must fill exactly the registers "
                f"{sorted(target.live_registers)} of {ch.orbit}"
            )
        sources = list(mapping.values())
        if len(sources) != len(set(sources)):
            out.append(f"{where}: child {pos} register map is not injective")
        for s in sources:
            if s == FRESH:
                if not rule.bound:
                    out.append(f"{where}: child {pos} uses a fresh slot in a free rule")
            elif s not in parent_regs:
                out.append(f"{where}: child {pos} reads register {s} which {rule.source} does not hold")
    return out


def check(spec: RntaSpec) -> RntaSpec:
    """Validate and return spec; raise ValidationError on violations."""
    violations = validate(spec)
    if violations:
        raise ValidationError(violations)
    return spec


# ================== Measures ==================

def degree(spec: RntaSpec) -> int:
    """Largest support of a state, dummy register excluded."""
    return max((len(o.live_registers) for o in spec.orbits), default=0)


def orbit_count(spec: RntaSpec) -> int:
    return len(spec.orbits)


def reachable_orbits(spec: RntaSpec) -> Set[str]:
    """Orbits reachable from the initial orbit through rule children."""
    seen = {spec.initial}
    stack = [spec.initial]
    while stack:
        o = stack.pop()
        for r in spec.rules:
            if r.source != o:
                continue
            for ch in r.children:
                if ch.orbit not in seen:
                    seen.add(ch.orbit)
                    stack.append(ch.orbit)
    return seen


# ================== Concrete States ==================

def support(q: ConcreteState) -> NameSet:
    """Names held in the registers (dummy included)."""
    return frozenset(a for _, a in q.assignment)


def act_state(p: Permutation, q: ConcreteState) -> ConcreteState:
    """Permutation action on a concrete state; the dummy name is never moved by callers."""
    return ConcreteState(q.orbit, tuple((j, p(a)) for j, a in q.assignment))


def initial_state(spec: RntaSpec) -> ConcreteState:
    return ConcreteState(spec.initial, ((0, DUMMY),) if spec.uses_dummy else ())


def inherited_names(q: ConcreteState, rule: SymbolicRule) -> Optional[NameSet]:
    """
    Names passed from q to some child by rule, or None when the rule reads
    a register q does not hold.
    """
    out: Set[Name] = set()
    for reg in rule.inherited_registers():
        a = q.value(reg)
        if a is None:
            return None
        out.add(a)
    return frozenset(out)


def child_states(spec: RntaSpec, q: ConcreteState, rule: SymbolicRule, letter: Name) -> Tuple[ConcreteState, ...]:
    """Instantiate the children of rule at state q, FRESH slots receiving letter."""
    out = []
    for ch in rule.children:
        assignment = {0: DUMMY} if spec.uses_dummy else {}
        for j, src in ch.regmap.entries:
            assignment[j] = letter if src == FRESH else q.value(src)
        out.append(ConcreteState.of(ch.orbit, assignment))
    return tuple(out)


def instantiate(spec: RntaSpec, q: ConcreteState, rule: SymbolicRule, label_name: Name) -> Optional[Tuple[ConcreteState, ...]]:
    """
    Children of rule fired at q on a node carrying label_name, or None if
    the rule does not fire (letter mismatch, undefined register, or a bound
    letter that is inherited or the dummy name).
    """
    inherited = inherited_names(q, rule)
    if inherited is None:
        return None
    if rule.bound:
        if label_name == DUMMY or label_name in inherited:
            return None
    elif q.value(rule.letter) != label_name:
        return None
    return child_states(spec, q, rule, label_name)


# ================== Acceptance ==================

Step = Callable[[ConcreteState, Term], Generator[Tuple[ConcreteState, Term], bool, bool]]


def drive(step: Step, q: ConcreteState, t: Term) -> bool:
    """
    Evaluate a top-down run without recursing in Python.

    step(state, node) is a generator that yields (child state, child node)
    requests, receives each child's verdict and returns its own. Verdicts
    are memoised per (state, node) for the duration of the call.
    """
    memo: Dict[Tuple[ConcreteState, int], bool] = {}
    frames = [(q, t, step(q, t))]
    verdict: Optional[bool] = None
    while frames:
        state, node, gen = frames[-1]
        try:
            request = gen.send(verdict)
        except StopIteration as stop:
            frames.pop()
            verdict = bool(stop.value)
            memo[(state, id(node))] = verdict
            continue
        child_state, child = request
        hit = memo.get((child_state, id(child)))
        if hit is not None:
            verdict = hit
        else:
            frames.append((child_state, child, step(child_state, child)))
            verdict = None
    return bool(verdict)


def accepts_from(spec: RntaSpec, q: ConcreteState, t: Term, flexible: bool = False) -> bool:
    """
    Some run rewrites q(t) to t.

    Args:
        spec: Automaton
        q: Start state
        t: Input term
        flexible: Treat every free label as free-or-bound (used to run an
            automaton directly on a data tree under local freshness)

    Returns:
        True iff accepted
    """
    def run(state: ConcreteState, node: Term) -> Generator[Tuple[ConcreteState, Term], bool, bool]:
        for rule in spec.rules_for(state.orbit, node.symbol):
            if len(rule.children) != len(node.children):
                continue
            if rule.bound and not (node.label.bound or flexible):
                continue
            if not rule.bound and node.label.bound:
                continue
            kids = instantiate(spec, state, rule, node.label.name)
            if kids is None:
                continue
            ok = True
            for k, c in zip(kids, node.children):
                if not (yield k, c):
                    ok = False
                    break
            if ok:
                return True
        return False

    accepted = drive(run, q, t)
    if accepted and not flexible and CONFIG["logging"]["debug"]:
        fn = free_names(t)
        assert fn <= support(q), f"accepted term has free names {fn} outside support of {q}"
        debug(f"accepts_from {q} {t}: FN within support")
    return accepted


def accepts(spec: RntaSpec, t: Term) -> bool:
    """The initial state accepts t (literal acceptance)."""
    return accepts_from(spec, initial_state(spec), t)
