#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
rnta - command-line driver for the nominal tree automata toolkit.

Version 1.2 - Local Freshness Inclusion
Commands: validate, member, include, namedrop, restrict, enumerate.
Results go to stdout, diagnostics to stderr.
Exit codes: 0 holds/accept/ok, 1 counterexample/reject/invalid, 2 input error.
Optional append-only CSV ledger of every query (--results-csv / RNTA_RESULTS_CSV).
"""

import argparse
import datetime as dt
import sys
from pathlib import Path
from typing import Dict, List, Optional

from utils import elapsed_ms, info, log
from config import CONFIG, VERSION
from formats import (
    FormatError,
    load_automaton,
    load_signature,
    load_terms,
    parse_terms,
    print_automaton,
    print_nfta,
    print_term,
)
from inclusion import include
from namedrop import name_drop
from nfta import restrict
from nominal_core import DUMMY, name_set, names
from oracle import enum_terms
from results_log import ResultsLog
from rnta_core import RntaError, accepts, degree, orbit_count
from semantics import SemanticsKind, member_alphatic, member_data

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

SEMANTICS_CHOICES = [k.value for k in SemanticsKind]


# ================== Ledger ==================

def record(args: argparse.Namespace, verdict: str, values: Optional[Dict[str, object]] = None, comment: str = "") -> None:
    """Append a ledger row if a results CSV is configured; never fails the command."""
    path = args.results_csv or CONFIG["results_log"]["path"]
    if path is None:
        return
    row = dict(values or {})
    row.setdefault("elapsed_ms", elapsed_ms(args.started))
    try:
        ResultsLog(Path(path)).append(args.command, verdict, row, comment)
    except OSError as e:
        log(f"[WARN] Results CSV append failed: {e}")


# ================== Commands ==================

def cmd_validate(args: argparse.Namespace) -> int:
    try:
        spec = load_automaton(args.automaton)
    except FormatError as e:
        if not e.violations:
            raise
        for v in e.violations:
            print(v)
        log(f"[ERR] {args.automaton}: {len(e.violations)} violation(s)")
        record(args, "invalid", {"inputs": args.automaton}, e.violations[0])
        return EXIT_NEGATIVE
    print("ok")
    record(args, "ok", {"inputs": args.automaton, "orbits_a": orbit_count(spec), "degree_a": degree(spec)})
    return EXIT_OK


def cmd_member(args: argparse.Namespace) -> int:
    spec = load_automaton(args.automaton)
    kind = SemanticsKind(args.semantics)
    data_only = kind is not SemanticsKind.ALPHATIC
    if args.term is not None:
        terms = parse_terms(args.term, spec.signature, data_only)
        source = "--term"
    elif args.term_file is not None:
        terms = load_terms(args.term_file, spec.signature, data_only)
        source = args.term_file
    else:
        raise FormatError("member needs a term file or --term")
    if not terms:
        raise FormatError("no term given")

    all_accepted = True
    for t in terms:
        if kind is SemanticsKind.ALPHATIC:
            ok = member_alphatic(spec, t)
        else:
            ok = member_data(spec, t, kind, max_nodes=args.max_nodes)
        all_accepted = all_accepted and ok
        verdict = "accept" if ok else "reject"
        print(verdict if len(terms) == 1 else f"{verdict}\t{print_term(t)}")
        record(args, verdict, {
            "inputs": f"{args.automaton};{source}",
            "semantics": kind.value,
            "witness": print_term(t),
            "orbits_a": orbit_count(spec),
            "degree_a": degree(spec),
        })
    return EXIT_OK if all_accepted else EXIT_NEGATIVE


def cmd_include(args: argparse.Namespace) -> int:
    left = load_automaton(args.left)
    right = load_automaton(args.right)
    kind = SemanticsKind(args.semantics)
    result = include(left, right, kind, verify=True if args.verify else None)

    values = dict(result.stats)
    values.update(inputs=f"{args.left};{args.right}", semantics=kind.value)
    if result.holds:
        print("holds")
        record(args, "holds", values)
        return EXIT_OK

    print(f"counterexample: {print_term(result.witness)}")
    if result.data_tree is not None:
        print(f"data tree: {print_term(result.data_tree)}")
    if args.witness:
        shown = result.data_tree if result.data_tree is not None else result.witness
        Path(args.witness).write_text(print_term(shown) + "\n", encoding="utf-8")
        info(f"Witness written to {args.witness}")
    values["witness"] = print_term(result.data_tree or result.witness)
    record(args, "counterexample", values)
    return EXIT_NEGATIVE


def cmd_namedrop(args: argparse.Namespace) -> int:
    spec = load_automaton(args.automaton)
    dropped = name_drop(spec)
    text = print_automaton(dropped)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        log(f"Name-dropped automaton written to {args.output} ({orbit_count(dropped)} orbits)")
    else:
        sys.stdout.write(text)
    record(args, "ok", {
        "inputs": args.automaton,
        "orbits_a": orbit_count(spec),
        "orbits_b": orbit_count(dropped),
        "degree_a": degree(spec),
    })
    return EXIT_OK


def _name_pool(text: str, with_dummy: bool) -> frozenset:
    try:
        pool = set(names(text))
    except ValueError as e:
        raise FormatError(str(e))
    if with_dummy:
        pool.add(DUMMY)
    return name_set(*pool)


def cmd_restrict(args: argparse.Namespace) -> int:
    spec = load_automaton(args.automaton)
    if args.drop:
        spec = name_drop(spec)
    pool = _name_pool(args.names, spec.uses_dummy)
    n = restrict(spec, pool, reachable_only=args.reachable)
    sys.stdout.write(print_nfta(n))
    record(args, "ok", {
        "inputs": args.automaton,
        "orbits_a": orbit_count(spec),
        "degree_a": degree(spec),
        "restriction_size": len(pool),
        "nfta_states_a": len(n.states),
    })
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = load_automaton(args.accepted_by) if args.accepted_by else None
    if args.sig:
        sig = load_signature(args.sig)
    elif spec is not None:
        sig = spec.signature
    else:
        raise FormatError("enumerate needs --sig or --accepted-by")
    if args.depth < 1:
        raise FormatError("--depth must be at least 1")
    pool = _name_pool(args.names, spec is not None and spec.uses_dummy)

    count = 0
    for t in enum_terms(sig, pool, args.depth, data_only=args.data):
        if spec is not None and not accepts(spec, t):
            continue
        print(print_term(t))
        count += 1
    info(f"Enumerated {count} term(s)")
    record(args, "ok", {"inputs": args.sig or args.accepted_by}, f"{count} terms")
    return EXIT_OK


# ================== Argument Parsing ==================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnta",
        description="Regular nominal tree automata: membership, name dropping and inclusion.",
    )
    parser.add_argument("--verbose", action="store_true", help="log stage summaries to stderr")
    parser.add_argument("--results-csv", metavar="PATH", help="append a row per query to this CSV")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate an automaton")
    p.add_argument("automaton")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("member", help="membership of terms or data trees")
    p.add_argument("automaton")
    p.add_argument("term_file", nargs="?", help="file holding one or more terms")
    p.add_argument("--term", metavar="TEXT", help="term given inline")
    p.add_argument("--semantics", choices=SEMANTICS_CHOICES, default="alphatic")
    p.add_argument("--max-nodes", type=int, default=None,
                   help="node cap for global/branchwise (default RNTA_MAX_NODES)")
    p.set_defaults(handler=cmd_member)

    p = sub.add_parser("include", help="language inclusion A within B")
    p.add_argument("left", metavar="A")
    p.add_argument("right", metavar="B")
    p.add_argument("--semantics", choices=SEMANTICS_CHOICES, default="alphatic")
    p.add_argument("--verify", action="store_true", help="cross-check against brute-force enumeration")
    p.add_argument("--witness", metavar="PATH", help="write the counterexample here")
    p.set_defaults(handler=cmd_include)

    p = sub.add_parser("namedrop", help="print the name-dropping modification")
    p.add_argument("automaton")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(handler=cmd_namedrop)

    p = sub.add_parser("restrict", help="print the NFTA restricted to a name set")
    p.add_argument("automaton")
    p.add_argument("--names", required=True, help="comma separated names, e.g. a,b,c")
    p.add_argument("--drop", action="store_true", help="name-drop before restricting")
    p.add_argument("--reachable", action="store_true", help="keep reachable states only")
    p.set_defaults(handler=cmd_restrict)

    p = sub.add_parser("enumerate", help="enumerate terms over a name set")
    p.add_argument("--sig", metavar="FILE")
    p.add_argument("--names", default=CONFIG["enumeration"]["default_names"])
    p.add_argument("--depth", type=int, default=CONFIG["enumeration"]["default_depth"])
    p.add_argument("--data", action="store_true", help="data trees only (no nu)")
    p.add_argument("--accepted-by", metavar="AUTOMATON", help="print only terms this automaton accepts literally")
    p.set_defaults(handler=cmd_enumerate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.started = dt.datetime.now()
    was_verbose = CONFIG["logging"]["verbose"]
    CONFIG["logging"]["verbose"] = was_verbose or args.verbose
    info(f"rnta {VERSION}: {args.command}")

    try:
        return args.handler(args)
    except (RntaError, OSError) as e:
        log(f"[ERR] {e}")
        record(args, "error", comment=str(e))
        return EXIT_INPUT
    except RecursionError:
        log("[ERR] input nested too deeply for this operation")
        record(args, "error", comment="nesting too deep")
        return EXIT_INPUT
    except Exception as e:
        log(f"[FATAL] {e}")
        return EXIT_INPUT
    finally:
        CONFIG["logging"]["verbose"] = was_verbose


if __name__ == "__main__":
    sys.exit(main())
