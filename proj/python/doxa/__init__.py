"""Exact decision procedures for interactive KD45 belief structures.

Thin re-export of the native module: structure loading and validation,
delusion diagnostics, common-prior existence (standard and delusional),
agreeable-bet construction, randomized theorem sweeps, and the
signal-error trading simulation. All probabilities and payoffs are exact
rationals rendered as "p/q" strings.
"""

from doxa._core import (
    ParseError,
    Structure,
    StructureError,
    WeakCbtAbsent,
    check_theorem,
    diagnose,
    generate,
    load_structure,
    parse_structure,
    simulate,
    sweep,
)

__all__ = [
    "ParseError",
    "Structure",
    "StructureError",
    "WeakCbtAbsent",
    "check_theorem",
    "diagnose",
    "generate",
    "load_structure",
    "parse_structure",
    "simulate",
    "sweep",
]
