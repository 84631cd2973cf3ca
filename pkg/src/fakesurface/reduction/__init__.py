"""Complexity-reducing moves, configuration detection and the reduction driver."""
from .cases import CaseWitness, detect_cases, match_configuration
from .driver import (InvariantViolation, ReductionFailed, ZigzagTrace, format_trace,
                     parse_trace, reduce_to_point, replay, verify_trace)
from .moves import (MoveError, ReductionMove, apply_move, loop_move, op3_nontrivial_along,
                    op4_trivial_along, reduce_disk)
from .work import POINT, NonCellular

__all__ = [
    "CaseWitness", "detect_cases", "match_configuration",
    "InvariantViolation", "ReductionFailed", "ZigzagTrace", "format_trace", "parse_trace",
    "reduce_to_point", "replay", "verify_trace",
    "MoveError", "ReductionMove", "apply_move", "loop_move", "op3_nontrivial_along",
    "op4_trivial_along", "reduce_disk", "POINT", "NonCellular",
]
