#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
CSV run ledger.

Append-only record of CLI queries:
- Header is written once, when the file is created
- An existing header is never rewritten; rows follow the existing header
  (unknown columns are left out, missing ones stay empty)
- Always writes the current VERSION
"""

import csv
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Mapping, Optional

from utils import log
from config import CONFIG, VERSION


# One row per query; all figures in dedicated columns for analysis
BASE_COLS = [
    # Time & Version
    "timestamp",         # ISO timestamp (YYYY-MM-DDTHH:MM:SS)
    "version",           # Toolkit version

    # Query
    "command",           # member / include / namedrop / ...
    "inputs",            # Input files, ';' separated
    "semantics",         # alphatic / global / branchwise / local (empty if n/a)

    # Outcome
    "verdict",           # holds / counterexample / accept / reject / ok / invalid
    "witness",           # Counterexample term or data tree (empty if none)

    # Sizes
    "orbits_a",          # Orbits of the (left) automaton
    "orbits_b",          # Orbits of the right automaton
    "degree_a",
    "degree_b",
    "restriction_size",  # |S| used by inclusion
    "nfta_states_a",     # States of the restricted left NFTA
    "nfta_states_b",     # States of the restricted (dropped) right NFTA
    "elapsed_ms",
]

COMMENT_COL = "comment"  # Free text (error message, flags)


class ResultsLog:
    """Append-only CSV ledger of CLI runs."""

    def __init__(self, csv_path: Optional[Path] = None):
        """
        Args:
            csv_path: Path to CSV file (defaults to RNTA_RESULTS_CSV)
        """
        path = csv_path or CONFIG["results_log"]["path"]
        if path is None:
            raise ValueError("no results CSV configured (set RNTA_RESULTS_CSV or pass --results-csv)")
        self.csv_path = Path(path)

    def desired_header(self) -> List[str]:
        return BASE_COLS + [COMMENT_COL]

    def read_header(self) -> Optional[List[str]]:
        """Current header, or None if the file does not exist or is empty."""
        if not self.csv_path.exists():
            return None
        with self.csv_path.open("r", newline="", encoding="utf-8") as f:
            for row in csv.reader(f):
                return [h.strip() for h in row]
        return None

    def read_rows(self) -> List[Dict[str, str]]:
        """All data rows as dicts keyed by the file's own header."""
        if not self.csv_path.exists():
            return []
        with self.csv_path.open("r", newline="", encoding="utf-8") as f:
            return [dict(row) for row in csv.DictReader(f)]

    def ensure_header(self) -> List[str]:
        """
        Write the header if the file is new; otherwise keep the existing one.

        Returns:
            Header rows will be written against
        """
        want = self.desired_header()
        current = self.read_header()
        if current is None:
            self.csv_path.parent.mkdir(parents=True, exist_ok=True)
            with self.csv_path.open("w", newline="", encoding="utf-8") as f:
                csv.writer(f).writerow(want)
            log(f"Results CSV created ({len(want)} columns): {self.csv_path}")
            return want
        if current != want:
            log(
                f"[INFO] Results CSV header differs from desired ({len(current)} vs {len(want)} columns); "
                "appending without migration"
            )
        return current

    def append(self, command: str, verdict: str, values: Optional[Mapping[str, object]] = None,
               comment: str = "", timestamp: Optional[datetime] = None) -> None:
        """
        Append one query row.

        Args:
            command: CLI command name
            verdict: Outcome word
            values: Remaining column values (inputs, semantics, witness, sizes)
            comment: Free text
            timestamp: Defaults to now
        """
        header = self.ensure_header()
        cells: Dict[str, object] = dict(values or {})
        cells.update(
            timestamp=(timestamp or datetime.now()).isoformat(timespec="seconds"),
            version=VERSION,
            command=command,
            verdict=verdict,
            comment=comment,
        )
        row = ["" if cells.get(col) is None else str(cells.get(col)) for col in header]
        with self.csv_path.open("a", newline="", encoding="utf-8") as f:
            csv.writer(f).writerow(row)
