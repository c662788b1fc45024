#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuration constants for the nominal tree automata toolkit.

Version 1.2 - LOCAL FRESHNESS INCLUSION
- Alphatic inclusion via name dropping + restriction to a finite name set
- Local freshness inclusion via downward closure of the restricted NFTA
- Global/branchwise inclusion delegate to alphatic inclusion
- Brute-force oracle available as --verify cross-check
- Optional append-only CSV run ledger
"""

from pathlib import Path
import os

# Load environment variables from .env file (if python-dotenv is installed)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    # python-dotenv not installed - environment variables must be set manually
    pass


def _env_int(key: str, default: int) -> int:
    """Read an integer environment variable, falling back on bad input."""
    raw = os.getenv(key, "")
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        return default


def _env_flag(key: str, default: bool = False) -> bool:
    """Read a 0/1 style environment flag."""
    raw = os.getenv(key, "").strip().lower()
    if not raw:
        return default
    return raw in ("1", "true", "yes", "on")


# ================== Size Limits ==================

LIMITS = {
    # Name dropping enumerates all 2^d register subsets eagerly
    "max_degree": _env_int("RNTA_MAX_DEGREE", 8),
}

# ================== Data-Tree Semantics ==================

SEMANTICS = {
    # Global/branchwise membership enumerates 2^nodes annotations.
    # Trees with more nodes than this are refused (CapExceeded).
    "max_nodes": _env_int("RNTA_MAX_NODES", 20),
}

# ================== Enumeration ==================

ENUMERATION = {
    "default_depth": 3,
    "default_names": "a,b",
}

# ================== Verify Mode ==================

VERIFY = {
    "enable": _env_flag("RNTA_VERIFY"),        # Cross-check answers against brute force
    "depth": _env_int("RNTA_VERIFY_DEPTH", 2),  # Enumeration depth for the cross-check
}

# ================== Logging ==================

LOGGING = {
    "debug": _env_flag("RNTA_DEBUG"),  # Post-condition assertions + [DEBUG] lines
    "verbose": False,                  # Stage summaries; switched on by --verbose
}

# ================== Results CSV ==================

RESULTS_LOG = {
    "path": Path(os.getenv("RNTA_RESULTS_CSV")) if os.getenv("RNTA_RESULTS_CSV") else None,
}

# ================== Reserved Names ==================

# Unlabelled nodes are read as carrying this free dummy name
DUMMY_NAME = "_"

# ================== Combined Config Dict ==================

CONFIG = {
    "limits": LIMITS,
    "semantics": SEMANTICS,
    "enumeration": ENUMERATION,
    "verify": VERIFY,
    "logging": LOGGING,
    "results_log": RESULTS_LOG,
    "dummy_name": DUMMY_NAME,
}

# ================== Version ==================

VERSION = "1.2"  # Local freshness inclusion via downward closure
