"""Sprague-Grundy solver and closed forms for Moore's, exact and slow Nim variants."""
from slownim.rules import (
    Family,
    GameSpec,
    Position,
    ShapeError,
    Version,
    canonicalize,
    count_nonempty,
    is_terminal,
    moves,
)
from slownim.engine import (
    GameClassReport,
    PositionClass,
    ResourceError,
    SgTable,
    best_move,
    build_table,
    classify_game,
    classify_position,
    find_positions_with,
    mex,
    sg_value,
)
from slownim.closed_forms import DomainError, SwapKind

__all__ = [
    "Family", "GameSpec", "Position", "ShapeError", "Version", "canonicalize",
    "count_nonempty", "is_terminal", "moves", "GameClassReport", "PositionClass",
    "ResourceError", "SgTable", "best_move", "build_table", "classify_game",
    "classify_position", "find_positions_with", "mex", "sg_value", "DomainError",
    "SwapKind",
]
