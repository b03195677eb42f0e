"""SG values and swap structure of slow exact 2-Nim on three piles.

Positions ``(x1, x2, x3)`` are split by the parities of the two smallest
piles into four base families ``(e,e)->0, (e,o)->1, (o,o)->2, (o,e)->3``;
a handful of exceptional sets (tags below) move positions between values.

Two variants are provided. ``literal=True`` evaluates the uncorrected set
algebra. The default, ``literal=False``, applies three corrections that
make it agree with exhaustive search:

* normal play, D sets: the bound ``a < b`` is relaxed to ``a <= b``;
* misère play, C and D sets: the parity rules selecting C0/C1 and D0/D1
  are exchanged;
* misère play, ``x1 = 0``: these positions get ``1 - g`` (tags Z0, Z1),
  which no uncorrected set covers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from slownim.closed_forms import DomainError, SwapKind, _kind
from slownim.engine import PositionClass
from slownim.rules import Position, Version


class SetTag(enum.Enum):
    A = "A"
    A1 = "A1"
    A2 = "A2"
    B = "B"
    B1 = "B1"
    B2 = "B2"
    C0 = "C0"
    C1 = "C1"
    D0 = "D0"
    D1 = "D1"
    E = "E"
    F = "F"
    Z0 = "Z0"
    Z1 = "Z1"


class ConsistencyError(RuntimeError):
    """A position fell into more than one exceptional set."""


# where each exceptional set sends its members
_TARGET = {
    SetTag.A: 0, SetTag.A1: 0, SetTag.A2: 0,
    SetTag.B: 1, SetTag.B1: 1, SetTag.B2: 1,
    SetTag.C0: 0, SetTag.C1: 1,
    SetTag.D0: 0, SetTag.D1: 1,
    SetTag.E: 0, SetTag.F: 1,
    SetTag.Z0: 0, SetTag.Z1: 1,
}
# which base family each tag is carved out of
_BASE_OF = {
    SetTag.A: "eo", SetTag.A1: "eo", SetTag.A2: "eo",
    SetTag.B: "ee", SetTag.B1: "ee", SetTag.B2: "ee",
    SetTag.C0: "oo", SetTag.C1: "oo",
    SetTag.D0: "oe", SetTag.D1: "oe",
    SetTag.E: "oo", SetTag.F: "oe",
    SetTag.Z0: "eo", SetTag.Z1: "ee",
}
_BASE_VALUE = {"ee": 0, "eo": 1, "oo": 2, "oe": 3}


@dataclass(frozen=True)
class Exact32Result:
    value: int
    tag: Optional[SetTag]
    base: str


def _split(pos: Position) -> tuple[int, int, int]:
    if pos.n != 3 or pos.distinguished is not None:
        raise DomainError("slow exact 2-Nim formulas need exactly three piles")
    return pos.piles


def _normal_tags(x1: int, x2: int, x3: int, literal: bool) -> list[SetTag]:
    tags = []
    if x1 % 2 == 0 and x2 % 2 == 1 and x3 % 2 == 0:
        a, b = x1 // 2, (x2 + 1) // 2
        i = x3 // 2 - b
        if a < b and 0 <= i < a and (a + i) % 2 == 1:
            tags.append(SetTag.A)
    if x1 % 2 == 0 and x2 % 2 == 0 and x3 % 2 == 1:
        a, b = x1 // 2, x2 // 2
        i = (x3 - 1) // 2 - b
        if a <= b and 0 <= i < a and (a + i) % 2 == 1:
            tags.append(SetTag.B)
    if x1 % 2 == 1 and x2 % 2 == 1 and x3 % 2 == 1:
        a, b = (x1 + 1) // 2, (x2 + 1) // 2
        i = (x3 + 1) // 2 - b
        if a <= b and 0 <= i < a:
            tags.append(SetTag.C0 if (a + i) % 2 == 0 else SetTag.C1)
    if x1 % 2 == 1 and x2 % 2 == 0 and x3 % 2 == 0:
        a, b = (x1 + 1) // 2, x2 // 2
        i = x3 // 2 - b
        b_ok = a < b if literal else a <= b
        if b_ok and 0 <= i < a:
            tags.append(SetTag.D0 if (a + i) % 2 == 1 else SetTag.D1)
    return tags


def _misere_tags(x1: int, x2: int, x3: int, literal: bool) -> list[SetTag]:
    tags = []
    if x1 % 2 == 0 and x2 % 2 == 1:
        a = x1 // 2
        ap = a // 2
        off = x3 - (x2 + 1)
        if a % 2 == 0 and off % 4 == 0 and 0 <= off // 4 < ap:
            tags.append(SetTag.A1)
        if a % 2 == 1 and (off - 2) % 4 == 0 and 0 <= (off - 2) // 4 < ap:
            tags.append(SetTag.A2)
    if x1 % 2 == 0 and x2 % 2 == 0:
        a = x1 // 2
        ap = a // 2
        off = x3 - x2
        if a % 2 == 0 and (off - 1) % 4 == 0 and 0 <= (off - 1) // 4 < ap:
            tags.append(SetTag.B1)
        if a % 2 == 1 and (off - 3) % 4 == 0 and 0 <= (off - 3) // 4 < ap:
            tags.append(SetTag.B2)
    # the corrected C/D parity rules are the literal ones exchanged
    flip = 0 if literal else 1
    if x1 % 2 == 1 and x2 % 2 == 1 and x3 % 2 == 1:
        a, b = (x1 + 1) // 2, (x2 + 1) // 2
        i = (x3 + 1) // 2 - b
        if 0 <= i < a - 1:
            tags.append(SetTag.C0 if (a + i + flip) % 2 == 0 else SetTag.C1)
    if x1 % 2 == 1 and x2 % 2 == 0 and x3 % 2 == 0:
        a, b = (x1 + 1) // 2, x2 // 2
        i = x3 // 2 - b
        if 0 <= i < a - 1:
            tags.append(SetTag.D0 if (a + i + flip) % 2 == 1 else SetTag.D1)
    if x1 == 1 and x2 == x3 and x2 >= 1:
        tags.append(SetTag.E if x2 % 2 == 1 else SetTag.F)
    if not literal and x1 == 0:
        tags.append(SetTag.Z0 if x2 % 2 == 1 else SetTag.Z1)
    return tags


def exact32_classify(
    pos: Position, version: Version = Version.NORMAL, literal: bool = False
) -> Exact32Result:
    """Value of ``pos`` together with the exceptional set it belongs to."""
    x1, x2, x3 = _split(pos)
    base = ("e" if x1 % 2 == 0 else "o") + ("e" if x2 % 2 == 0 else "o")
    if version is Version.NORMAL:
        tags = _normal_tags(x1, x2, x3, literal)
    else:
        tags = _misere_tags(x1, x2, x3, literal)
    if len(tags) > 1:
        raise ConsistencyError(f"{pos} is in several sets: {[t.value for t in tags]}")
    if not tags:
        return Exact32Result(_BASE_VALUE[base], None, base)
    tag = tags[0]
    if _BASE_OF[tag] != base:
        raise ConsistencyError(f"{pos} tagged {tag.value} outside its base family")
    return Exact32Result(_TARGET[tag], tag, base)


def slow_exact32_sg(
    pos: Position, version: Version = Version.NORMAL, literal: bool = False
) -> int:
    return exact32_classify(pos, version, literal).value


def _ceil_parity_kind(a: int, b: int, i: int) -> SwapKind:
    return _kind((b + (i + 1) // 2) % 2 == 0)


def _fitted_kind(a: int, b: int, i: int) -> SwapKind:
    return _kind((b + i // 2 + a // 2) % 2 == 0)


KIND_RULES = {
    # even b + ceil(i/2) -> (0,1); the stated value formula read mod 2
    "ceil-parity": _ceil_parity_kind,
    # found by exhaustive search; agrees with the solver on all tested boxes
    "fitted": _fitted_kind,
}


def swap_class_32(pos: Position, kind_rule: str = "ceil-parity") -> Optional[SwapKind]:
    """Swap class of a three-pile slow exact 2-Nim position, or None."""
    a, b, c = _split(pos)
    if a == 0:
        return _kind(b % 2 == 0)
    if a == 1:
        return _kind(b % 2 == 0) if b == c else None
    i = c - b
    bound = a if a % 2 == 0 else a - 2
    if i % 2 == a % 2 or i >= bound:
        return None
    return KIND_RULES[kind_rule](a, b, i)


def nontame_class_32(pos: Position) -> Optional[PositionClass]:
    """Class of a position that is neither swap nor tame, else None."""
    x1, x2, x3 = _split(pos)
    if x1 % 2 == 1 and x1 != 1 and x1 + x2 == x3 + 1:
        return PositionClass(0, 3) if x2 % 2 == 0 else PositionClass(1, 2)
    return None
