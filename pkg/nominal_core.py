#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Names, finite permutations and finite name sets.

Names are interned integers with a string table for I/O. Index 0 is the
reserved dummy name "_" used for unlabelled nodes; fresh names are always
drawn from index 1 upwards, lowest unused index first, so results are
reproducible within one process run.
"""

import re
import string
import threading
from dataclasses import dataclass
from itertools import count
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional

from config import CONFIG

NAME_PATTERN = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")

# Append-only interning table, guarded for concurrent callers
_LOCK = threading.Lock()
_TEXT: List[str] = []
_INDEX: Dict[str, int] = {}


@dataclass(frozen=True, order=True)
class Name:
    """An atom from the countably infinite pool, identified by its interning index."""

    index: int

    @property
    def text(self) -> str:
        return _TEXT[self.index]

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Name({self.text!r})"


NameSet = FrozenSet[Name]


def _intern_locked(text: str) -> Name:
    idx = _INDEX.get(text)
    if idx is None:
        idx = len(_TEXT)
        _TEXT.append(text)
        _INDEX[text] = idx
    return Name(idx)


def name(text: str) -> Name:
    """
    Intern a name given by its identifier.

    Raises:
        ValueError: If text is not an identifier
    """
    if not NAME_PATTERN.match(text):
        raise ValueError(f"not a valid name: {text!r}")
    with _LOCK:
        return _intern_locked(text)


def names(spec: str) -> List[Name]:
    """Intern a comma separated list of names ("a,b,c"), keeping order."""
    return [name(part.strip()) for part in spec.split(",") if part.strip()]


def name_set(*items: Name) -> NameSet:
    return frozenset(items)


with _LOCK:
    DUMMY = _intern_locked(CONFIG["dummy_name"])


def _auto_labels():
    letters = string.ascii_lowercase
    yield from letters
    for n in count(1):
        for ch in letters:
            yield f"{ch}{n}"


def _pool_name_locked(idx: int) -> Name:
    """Name at pool index idx, creating auto-labelled names up to it."""
    labels = _auto_labels()
    while len(_TEXT) <= idx:
        label = next(labels)
        if label not in _INDEX:
            _intern_locked(label)
    return Name(idx)


def fresh_for(s: Iterable[Name]) -> Name:
    """
    Lowest-index pool name not in s (never the dummy name).

    Args:
        s: Finite collection of names to avoid

    Returns:
        A name outside s
    """
    used = {n.index for n in s}
    with _LOCK:
        for idx in count(1):
            if idx not in used:
                return _pool_name_locked(idx)
    raise AssertionError("unreachable")


def fresh_names(k: int, avoid: Iterable[Name] = ()) -> List[Name]:
    """k pairwise distinct fresh names, each avoiding avoid and the previous ones."""
    taken = set(avoid)
    result = []
    for _ in range(k):
        n = fresh_for(taken)
        taken.add(n)
        result.append(n)
    return result


class Permutation:
    """Finite permutation of names, stored as a sparse map without fixed points."""

    __slots__ = ("_moved", "_hash")

    def __init__(self, moved: Optional[Mapping[Name, Name]] = None):
        moved = {a: b for a, b in (moved or {}).items() if a != b}
        if set(moved.keys()) != set(moved.values()):
            raise ValueError("permutation must map its carrier onto itself")
        self._moved: Dict[Name, Name] = moved
        self._hash: Optional[int] = None

    @property
    def carrier(self) -> NameSet:
        return frozenset(self._moved)

    def __call__(self, a: Name) -> Name:
        return self._moved.get(a, a)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(a) == self(other(a))."""
        union = self.carrier | other.carrier
        return Permutation({a: self(other(a)) for a in union})

    def inverse(self) -> "Permutation":
        return Permutation({b: a for a, b in self._moved.items()})

    def is_identity(self) -> bool:
        return not self._moved

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._moved == other._moved

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._moved.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._moved:
            return "Permutation(id)"
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self._moved.items()))
        return f"Permutation({body})"


IDENTITY = Permutation()


def swap(a: Name, b: Name) -> Permutation:
    """The transposition (a b); swap(a, a) is the identity."""
    if a == b:
        return IDENTITY
    return Permutation({a: b, b: a})


def apply(p: Permutation, a: Name) -> Name:
    """Canonical action of a permutation on a name."""
    return p(a)


def act_names(p: Permutation, s: Iterable[Name]) -> NameSet:
    """Pointwise action on a finite name set."""
    return frozenset(p(a) for a in s)


def format_names(s: Iterable[Name]) -> str:
    """Render a name set as "{a,b}" in pool order."""
    return "{" + ",".join(str(a) for a in sorted(s)) + "}"
