#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Utility functions for the nominal tree automata toolkit.
"""

import sys
import datetime as dt
from itertools import chain, combinations
from typing import Iterable, Iterator, Tuple, TypeVar

from config import CONFIG

T = TypeVar("T")


def log(msg: str) -> None:
    """Print a timestamped log message to stderr (stdout carries results only)."""
    timestamp = dt.datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    print(f"[{timestamp}] {msg}", file=sys.stderr)


def debug(msg: str) -> None:
    """Log a [DEBUG] line when RNTA_DEBUG is on."""
    if CONFIG["logging"]["debug"]:
        log(f"[DEBUG] {msg}")


def info(msg: str) -> None:
    """Log an [INFO] stage summary when --verbose is on."""
    if CONFIG["logging"]["verbose"] or CONFIG["logging"]["debug"]:
        log(f"[INFO] {msg}")


def subsets(items: Iterable[T]) -> Iterator[Tuple[T, ...]]:
    """
    All subsets of items, smallest first.

    Args:
        items: Finite iterable (order is preserved inside each subset)

    Returns:
        Iterator over tuples
    """
    pool = list(items)
    return chain.from_iterable(combinations(pool, r) for r in range(len(pool) + 1))


def elapsed_ms(start: dt.datetime) -> int:
    """Milliseconds since start."""
    return int((dt.datetime.now() - start).total_seconds() * 1000)
