"""Reachability workbench for vector addition systems (with states)."""

from __future__ import annotations

__version__ = "0.1.0"

from .vas import (TOP, Transition, UsageError, VasSystem, VassSystem, bfs_reach, karp_miller_covers,
                  run, run_path, step)
from .decider import BudgetExhausted, DeciderConfig, Reachable, Unreachable, decide_reach
from .invariant import Certificate, Invalid, Valid, check_certificate

__all__ = [
    "TOP", "Transition", "UsageError", "VasSystem", "VassSystem", "bfs_reach", "karp_miller_covers",
    "run", "run_path", "step", "BudgetExhausted", "DeciderConfig", "Reachable", "Unreachable",
    "decide_reach", "Certificate", "Invalid", "Valid", "check_certificate", "__version__",
]
