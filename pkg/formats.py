#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Text formats: signatures, automata, terms.

Signature (`.sig`), one or more entries per line:
    f/2, k/0

Automaton (`.rnta`), one declaration per line:
    signature f/2, k/0          (or: include fk.sig)
    uses_dummy                  (register 0 holds "_" everywhere)
    dropped                     (orbit ids carry @{live registers})
    orbit q1 1
    initial q0
    rule q1 free 1 f -> q2, q2
    rule q0 bound f -> q1{1<-new}, q2

Terms:
    nu a. f(a.k, b.k)           bare symbols carry the dummy label

`//` starts a comment everywhere.
"""

import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from nominal_core import DUMMY, NAME_PATTERN, Name, name
from nfta import Nfta
from rnta_core import (
    FRESH,
    Child,
    Orbit,
    RegisterMap,
    RntaError,
    RntaSpec,
    SymbolicRule,
    validate,
)
from terms import Label, Signature, Term, render_term

ORBIT_RE = r"[A-Za-z_][A-Za-z0-9_]*(?:@\{[0-9,]*\})?"
SYMBOL_RE = r"[A-Za-z0-9_!#$]+"

_SIG_ENTRY = re.compile(rf"\s*({SYMBOL_RE})\s*/\s*(\d+)\s*(?:,|$)")
_CHILD = re.compile(rf"\s*({ORBIT_RE})(?:\{{([^{{}}]*)\}})?\s*(?:,|$)")
_REG_ENTRY = re.compile(r"\s*(\d+)\s*<-\s*(\d+|new)\s*$")
_ORBIT_LINE = re.compile(rf"orbit\s+({ORBIT_RE})\s+(\d+)\s*$")
_INITIAL_LINE = re.compile(rf"initial\s+({ORBIT_RE})\s*$")
_FREE_RULE = re.compile(rf"rule\s+({ORBIT_RE})\s+free\s+(\d+)\s+({SYMBOL_RE})\s*(?:->(.*))?$")
_BOUND_RULE = re.compile(rf"rule\s+({ORBIT_RE})\s+bound\s+({SYMBOL_RE})\s*(?:->(.*))?$")
_DROPPED_ID = re.compile(r"(.*)@\{([0-9,]*)\}$")
_TOKEN = re.compile(rf"\s*(?:({SYMBOL_RE})|([.(),]))")


class FormatError(RntaError):
    """Syntax or validation error in an input text, with its location."""

    def __init__(self, message: str, line: int = 0, col: int = 0, violations: Optional[List[str]] = None):
        self.message = message
        self.line = line
        self.col = col
        self.violations = list(violations or [])
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


def _strip_comment(line: str) -> str:
    cut = line.find("//")
    return line if cut < 0 else line[:cut]


# ================== Signatures ==================

def _parse_sig_entries(body: str, line_no: int, offset: int, into: Dict[str, int]) -> None:
    pos = 0
    while pos < len(body) and body[pos:].strip():
        m = _SIG_ENTRY.match(body, pos)
        if not m:
            raise FormatError("expected symbol/arity", line_no, offset + pos + 1)
        sym, arity = m.group(1), int(m.group(2))
        if into.setdefault(sym, arity) != arity:
            raise FormatError(f"symbol {sym} declared with two arities", line_no, offset + m.start(1) + 1)
        pos = m.end()


def parse_signature(text: str) -> Signature:
    """
    Parse a signature file.

    Raises:
        FormatError: On malformed entries, conflicting arities or no constant
    """
    symbols: Dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        _parse_sig_entries(_strip_comment(raw), line_no, 0, symbols)
    sig = Signature.of(symbols)
    if not sig.constants():
        raise FormatError("signature has no constant")
    return sig


def print_signature(sig: Signature) -> str:
    return ", ".join(f"{f}/{n}" for f, n in sig.symbols) + "\n"


def load_signature(path: Path) -> Signature:
    return parse_signature(Path(path).read_text(encoding="utf-8"))


# ================== Automata ==================

def _parse_children(body: str, line_no: int, offset: int) -> Tuple[Child, ...]:
    children: List[Child] = []
    pos = 0
    while body[pos:].strip():
        m = _CHILD.match(body, pos)
        if not m:
            raise FormatError("expected child orbit{j<-src, ...}", line_no, offset + pos + 1)
        entries: Dict[int, object] = {}
        if m.group(2) and m.group(2).strip():
            for part in m.group(2).split(","):
                e = _REG_ENTRY.match(part)
                if not e:
                    raise FormatError(f"bad register entry {part.strip()!r}", line_no, offset + m.start(2) + 1)
                j = int(e.group(1))
                if j in entries:
                    raise FormatError(f"register {j} assigned twice", line_no, offset + m.start(2) + 1)
                entries[j] = FRESH if e.group(2) == FRESH else int(e.group(2))
        children.append(Child(m.group(1), RegisterMap.of(entries)))
        pos = m.end()
    return tuple(children)


def _orbit(orbit_id: str, registers: int, dropped: bool, line_no: int) -> Orbit:
    m = _DROPPED_ID.match(orbit_id)
    if m is None:
        return Orbit(orbit_id, registers)
    if not dropped:
        raise FormatError(f"orbit id {orbit_id} carries live registers but the automaton is not marked dropped", line_no, 1)
    live = frozenset(int(x) for x in m.group(2).split(",") if x)
    return Orbit(orbit_id, registers, live, m.group(1))


def _locate(violation: str, rule_lines: List[int], orbit_lines: Dict[str, int], initial_line: int) -> int:
    m = re.match(r"rule (\d+) ", violation)
    if m:
        return rule_lines[int(m.group(1)) - 1]
    m = re.match(r"(?:initial )?orbit (\S+?):? ", violation)
    if m and m.group(1) in orbit_lines:
        return orbit_lines[m.group(1)]
    if violation.startswith("initial"):
        return initial_line
    return 0


def parse_automaton(text: str, base_dir: Optional[Path] = None) -> RntaSpec:
    """
    Parse and validate an automaton.

    Args:
        text: Automaton text
        base_dir: Directory `include` lines are resolved against

    Returns:
        Valid RntaSpec

    Raises:
        FormatError: On syntax errors or validation violations (located at
            the first offending declaration)
    """
    symbols: Dict[str, int] = {}
    orbit_decls: List[Tuple[str, int, int]] = []
    rules: List[SymbolicRule] = []
    rule_lines: List[int] = []
    initial: Optional[str] = None
    initial_line = 0
    uses_dummy = False
    dropped = False

    for line_no, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        indent = len(raw) - len(raw.lstrip())
        keyword = line.split()[0]

        if keyword == "signature":
            body = line[len("signature"):]
            _parse_sig_entries(body, line_no, indent + len("signature"), symbols)
        elif keyword == "include":
            target = line[len("include"):].strip()
            if base_dir is None:
                raise FormatError("include needs a file context", line_no, indent + 1)
            try:
                included = (Path(base_dir) / target).read_text(encoding="utf-8")
            except OSError as e:
                raise FormatError(f"cannot include {target}: {e}", line_no, indent + 1)
            for f, n in parse_signature(included).symbols:
                if symbols.setdefault(f, n) != n:
                    raise FormatError(f"symbol {f} declared with two arities", line_no, indent + 1)
        elif line == "uses_dummy":
            uses_dummy = True
        elif line == "dropped":
            dropped = True
        elif keyword == "orbit":
            m = _ORBIT_LINE.match(line)
            if not m:
                raise FormatError("expected: orbit <id> <registers>", line_no, indent + 1)
            orbit_decls.append((m.group(1), int(m.group(2)), line_no))
        elif keyword == "initial":
            m = _INITIAL_LINE.match(line)
            if not m:
                raise FormatError("expected: initial <id>", line_no, indent + 1)
            if initial is not None:
                raise FormatError("initial orbit declared twice", line_no, indent + 1)
            initial, initial_line = m.group(1), line_no
        elif keyword == "rule":
            fm = _FREE_RULE.match(line)
            bm = _BOUND_RULE.match(line) if fm is None else None
            if fm:
                body = fm.group(4) or ""
                kids = _parse_children(body, line_no, indent + max(fm.start(4), 0))
                rules.append(SymbolicRule(fm.group(1), False, fm.group(3), kids, int(fm.group(2))))
            elif bm:
                body = bm.group(3) or ""
                kids = _parse_children(body, line_no, indent + max(bm.start(3), 0))
                rules.append(SymbolicRule(bm.group(1), True, bm.group(2), kids))
            else:
                raise FormatError(
                    "expected: rule <orbit> free <register> <symbol> -> ... | rule <orbit> bound <symbol> -> ...",
                    line_no, indent + 1,
                )
            rule_lines.append(line_no)
        else:
            raise FormatError(f"unknown declaration {keyword!r}", line_no, indent + 1)

    if initial is None:
        raise FormatError("no initial orbit declared")
    orbits = tuple(_orbit(oid, k, dropped, ln) for oid, k, ln in orbit_decls)
    spec = RntaSpec(
        signature=Signature.of(symbols),
        orbits=orbits,
        rules=tuple(rules),
        initial=initial,
        uses_dummy=uses_dummy,
        dropped=dropped,
    )
    violations = validate(spec)
    if violations:
        orbit_lines = {oid: ln for oid, _, ln in orbit_decls}
        line = _locate(violations[0], rule_lines, orbit_lines, initial_line)
        raise FormatError(violations[0], line, 1 if line else 0, violations)
    return spec


def _print_child(ch: Child) -> str:
    if not ch.regmap.entries:
        return ch.orbit
    body = ", ".join(f"{j}<-{src}" for j, src in ch.regmap.entries)
    return f"{ch.orbit}{{{body}}}"


def _print_rule(rule: SymbolicRule) -> str:
    head = f"rule {rule.source} " + (f"bound {rule.symbol}" if rule.bound else f"free {rule.letter} {rule.symbol}")
    return head + " ->" + ("" if not rule.children else " " + ", ".join(_print_child(c) for c in rule.children))


def print_automaton(spec: RntaSpec) -> str:
    """Canonical text of spec; parse_automaton(print_automaton(a)) == a."""
    lines = [f"signature {spec.signature}"]
    if spec.uses_dummy:
        lines.append("uses_dummy")
    if spec.dropped:
        lines.append("dropped")
    lines.extend(f"orbit {o.id} {o.registers}" for o in spec.orbits)
    lines.append(f"initial {spec.initial}")
    lines.extend(_print_rule(r) for r in spec.rules)
    return "\n".join(lines) + "\n"


def load_automaton(path: Path) -> RntaSpec:
    path = Path(path)
    return parse_automaton(path.read_text(encoding="utf-8"), base_dir=path.parent)


# ================== Terms ==================

class _TermParser:
    def __init__(self, text: str, sig: Optional[Signature], data_only: bool):
        self.sig = sig
        self.data_only = data_only
        self.tokens: List[Tuple[str, int, int]] = []
        for line_no, raw in enumerate(text.splitlines(), 1):
            line = _strip_comment(raw)
            pos = 0
            while line[pos:].strip():
                m = _TOKEN.match(line, pos)
                if not m:
                    col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                    raise FormatError(f"unexpected character {line[col - 1]!r}", line_no, col)
                start = m.start(1) if m.group(1) else m.start(2)
                self.tokens.append((m.group(1) or m.group(2), line_no, start + 1))
                pos = m.end()
        self.pos = 0

    def peek(self, ahead: int = 0) -> Optional[Tuple[str, int, int]]:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> Tuple[str, int, int]:
        tok = self.peek()
        if tok is None:
            raise FormatError("unexpected end of input" + (f", expected {expected!r}" if expected else ""))
        if expected is not None and tok[0] != expected:
            raise FormatError(f"expected {expected!r}, got {tok[0]!r}", tok[1], tok[2])
        self.pos += 1
        return tok

    def _name(self) -> Name:
        text, line, col = self.take()
        if not NAME_PATTERN.match(text):
            raise FormatError(f"not a valid name: {text!r}", line, col)
        return name(text)

    def _symbol(self) -> Tuple[str, int, int]:
        tok = self.take()
        if not re.fullmatch(SYMBOL_RE, tok[0]):
            raise FormatError(f"expected a symbol, got {tok[0]!r}", tok[1], tok[2])
        return tok

    def _head(self) -> Tuple[Label, str, int, int]:
        """Label and symbol of the next node."""
        first = self.peek()
        if first is None:
            raise FormatError("unexpected end of input, expected a term")
        nxt = self.peek(1)
        if first[0] == "nu" and nxt is not None and re.fullmatch(SYMBOL_RE, nxt[0]):
            if self.data_only:
                raise FormatError("data trees cannot contain nu", first[1], first[2])
            self.take()
            if nxt[0] == str(DUMMY):
                raise FormatError(f"the dummy name {DUMMY} cannot be bound", nxt[1], nxt[2])
            label = Label.nu(self._name())
            self.take(".")
        elif nxt is not None and nxt[0] == ".":
            label = Label.free(self._name())
            self.take(".")
        else:
            label = Label.free(DUMMY)
        symbol, line, col = self._symbol()
        return label, symbol, line, col

    def _node(self, label: Label, symbol: str, line: int, col: int, children: List[Term]) -> Term:
        if self.sig is not None:
            arity = self.sig.arity(symbol)
            if arity is None:
                raise FormatError(f"unknown symbol {symbol!r}", line, col)
            if arity != len(children):
                raise FormatError(f"symbol {symbol!r} has arity {arity}, got {len(children)} children", line, col)
        return Term(label, symbol, tuple(children))

    def term(self) -> Term:
        # open nodes whose children are still being read
        pending: List[Tuple[Label, str, int, int, List[Term]]] = []
        while True:
            label, symbol, line, col = self._head()
            tok = self.peek()
            if tok is not None and tok[0] == "(":
                self.take("(")
                pending.append((label, symbol, line, col, []))
                continue
            done = self._node(label, symbol, line, col, [])
            while pending:
                pending[-1][4].append(done)
                tok = self.peek()
                if tok is not None and tok[0] == ",":
                    self.take(",")
                    break
                self.take(")")
                done = self._node(*pending.pop())
            else:
                return done


def parse_terms(text: str, sig: Optional[Signature] = None, data_only: bool = False) -> List[Term]:
    """
    Parse a sequence of terms (a term file may hold several).

    Args:
        text: Input text
        sig: If given, symbols and arities are checked against it
        data_only: Reject binders (data-tree mode)

    Raises:
        FormatError: On syntax or arity errors
    """
    parser = _TermParser(text, sig, data_only)
    out = []
    while parser.peek() is not None:
        out.append(parser.term())
    return out


def parse_term(text: str, sig: Optional[Signature] = None, data_only: bool = False) -> Term:
    """Parse exactly one term."""
    terms = parse_terms(text, sig, data_only)
    if len(terms) != 1:
        raise FormatError(f"expected exactly one term, found {len(terms)}")
    return terms[0]


def print_term(t: Term) -> str:
    return render_term(t)


def load_terms(path: Path, sig: Optional[Signature] = None, data_only: bool = False) -> List[Term]:
    return parse_terms(Path(path).read_text(encoding="utf-8"), sig, data_only)


# ================== NFTA Listing ==================

def print_nfta(n: Nfta) -> str:
    """Human-readable listing; not meant to be parsed back."""
    lines = [f"// {len(n.states)} states, {len(n.rules)} rules", f"initial {n.initial}"]
    for r in sorted(n.rules, key=lambda r: (str(r.state), r.symbol, r.label)):
        kids = ", ".join(str(c) for c in r.children)
        lines.append(f"{r.state} {r.label}.{r.symbol}" + (f" -> {kids}" if kids else ""))
    return "\n".join(lines) + "\n"
