"""Exact Sprague-Grundy values over downward-closed boxes.

Every move weakly decreases every pile, so the box ``{all piles <= cap}`` is
closed under moves and a table built over it is exact. Tables are evaluated
layer by layer in increasing token count.
"""
from __future__ import annotations

import os
import threading
from array import array
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from slownim import ranking
from slownim.rules import (
    GameSpec,
    Position,
    Version,
    is_terminal,
    moves,
)

MEMORY_ENV = "SLOWNIM_MEMORY_BUDGET"
DEFAULT_MEMORY_BUDGET = 1 << 30
# value slot plus the per-position working set during construction
BYTES_PER_POSITION = 64


class ResourceError(RuntimeError):
    """A computation would exceed its configured size bound."""


class BoxTooLarge(ResourceError):
    def __init__(self, positions: int, budget: int):
        super().__init__(
            f"box has {positions} positions, needs ~{positions * BYTES_PER_POSITION}"
            f" bytes, over the {budget}-byte budget (set {MEMORY_ENV})"
        )
        self.positions = positions
        self.budget = budget


def memory_budget() -> int:
    raw = os.environ.get(MEMORY_ENV)
    return int(raw) if raw else DEFAULT_MEMORY_BUDGET


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    v = 0
    while v in seen:
        v += 1
    return v


def box_count(spec: GameSpec, cap: int) -> int:
    count = ranking.box_size(spec.n, cap)
    if spec.has_distinguished:
        count *= cap + 1
    return count


def box_positions(spec: GameSpec, cap: int) -> Iterator[Position]:
    """Canonical positions of the box in lexicographic order."""
    if spec.has_distinguished:
        for x0 in range(cap + 1):
            for piles in ranking.box_tuples(spec.n, cap):
                yield Position(piles, x0)
    else:
        for piles in ranking.box_tuples(spec.n, cap):
            yield Position(piles)


def _in_box(pos: Position, cap: int) -> bool:
    return (not pos.piles or pos.piles[-1] <= cap) and (pos.distinguished or 0) <= cap


@dataclass(frozen=True)
class PositionClass:
    g: int
    g_minus: int

    @property
    def is_swap(self) -> bool:
        return (self.g, self.g_minus) in ((0, 1), (1, 0))

    @property
    def is_tame_value(self) -> bool:
        return self.g == self.g_minus

    @property
    def label(self) -> str:
        if self.is_swap:
            return "swap"
        if self.is_tame_value:
            return "tame"
        return "wild"

    def __str__(self) -> str:
        return f"({self.g},{self.g_minus})"


class SgTable:
    """SG values of every canonical position inside a box, densely stored."""

    def __init__(self, spec: GameSpec, version: Version, cap: int, values: array):
        self.spec = spec
        self.version = version
        self.cap = cap
        self._values = values
        self._block = ranking.box_size(spec.n, cap)

    def index(self, pos: Position) -> int:
        self.spec.check(pos)
        if not _in_box(pos, self.cap):
            raise KeyError(f"{pos} lies outside the cap-{self.cap} box")
        r = ranking.rank(pos.piles, self.cap)
        if pos.distinguished is not None:
            r += pos.distinguished * self._block
        return r

    def __getitem__(self, pos: Position) -> int:
        return self._values[self.index(pos)]

    def __contains__(self, pos: Position) -> bool:
        try:
            self.index(pos)
        except (KeyError, ValueError):
            return False
        return True

    def __len__(self) -> int:
        return len(self._values)

    def positions(self) -> Iterator[Position]:
        return box_positions(self.spec, self.cap)

    def items(self) -> Iterator[tuple[Position, int]]:
        # box_positions enumerates in rank order, so values line up
        return zip(self.positions(), self._values)

    def restrict(self, cap: int) -> dict[Position, int]:
        return {p: self[p] for p in box_positions(self.spec, cap)}


def _check_budget(spec: GameSpec, cap: int) -> int:
    if cap < 0:
        raise ValueError("cap must be non-negative")
    count = box_count(spec, cap)
    budget = memory_budget()
    if count * BYTES_PER_POSITION > budget:
        raise BoxTooLarge(count, budget)
    return count


def _move_graph(spec: GameSpec, cap: int) -> list[tuple[int, tuple[int, ...]]]:
    """(index, successor indices) for every box position, by layer."""
    _check_budget(spec, cap)
    shell = SgTable(spec, Version.NORMAL, cap, array("l"))
    order = sorted(box_positions(spec, cap), key=lambda p: (p.total, p))
    return [
        (shell.index(p), tuple(shell.index(q) for q in moves(spec, p)))
        for p in order
    ]


def _evaluate(spec, cap, version, graph) -> SgTable:
    values = array("l", [-1]) * box_count(spec, cap)
    for idx, succ in graph:
        # layers run in increasing token count, so successors are final
        values[idx] = mex(values[j] for j in succ) if succ else version.terminal_value
    return SgTable(spec, version, cap, values)


def build_table(spec: GameSpec, cap: int, version: Version) -> SgTable:
    return _evaluate(spec, cap, version, _move_graph(spec, cap))


_tables_lock = threading.Lock()
_memo: dict[tuple[GameSpec, Version], dict[Position, int]] = {}


def sg_value(spec: GameSpec, pos: Position, version: Version = Version.NORMAL) -> int:
    """SG value of one position by memoized search (no box materialized)."""
    spec.check(pos)
    with _tables_lock:
        memo = _memo.setdefault((spec, version), {})
    if pos in memo:
        return memo[pos]
    # explicit stack: deep positions would overflow Python recursion
    stack: list[tuple[Position, Optional[list[Position]]]] = [(pos, None)]
    while stack:
        cur, succ = stack.pop()
        if cur in memo:
            continue
        if succ is None:
            succ = sorted(moves(spec, cur))
            stack.append((cur, succ))
            stack.extend((q, None) for q in succ if q not in memo)
            continue
        if not succ:
            v = version.terminal_value
        else:
            v = mex(memo[q] for q in succ)
        with _tables_lock:
            memo[cur] = v
    return memo[pos]


def clear_cache() -> None:
    with _tables_lock:
        _memo.clear()


def classify_position(spec: GameSpec, pos: Position) -> PositionClass:
    return PositionClass(
        sg_value(spec, pos, Version.NORMAL), sg_value(spec, pos, Version.MISERE)
    )


def best_move(
    spec: GameSpec, pos: Position, version: Version = Version.NORMAL
) -> Optional[Position]:
    """Lexicographically smallest successor of SG value 0, if any."""
    for q in sorted(moves(spec, pos)):
        if sg_value(spec, q, version) == 0:
            return q
    return None


class Tables:
    """Normal and misère tables of one spec over a common box."""

    def __init__(self, spec: GameSpec, cap: int):
        self.spec = spec
        self.cap = cap
        graph = _move_graph(spec, cap)
        self.normal = _evaluate(spec, cap, Version.NORMAL, graph)
        self.misere = _evaluate(spec, cap, Version.MISERE, graph)

    def cls(self, pos: Position) -> PositionClass:
        return PositionClass(self.normal[pos], self.misere[pos])

    def positions(self) -> Iterator[Position]:
        return box_positions(self.spec, self.cap)


@dataclass
class Witness:
    position: Position
    cls: PositionClass
    reason: str

    def __str__(self) -> str:
        return f"{self.position} {self.cls}: {self.reason}"


@dataclass
class GameClassReport:
    """Game-level flags over one box.

    ``witnesses`` holds the first (lexicographically smallest) violation of
    each false flag; ``violations`` holds all of them.
    """

    spec: GameSpec
    cap: int
    tame: bool
    pet: bool
    domestic: bool
    miserable: bool
    no_00: bool
    no_11: bool
    zero_moves_to_one: bool
    violations: dict[str, list[Witness]] = field(default_factory=dict)

    @property
    def witnesses(self) -> dict[str, Witness]:
        return {k: v[0] for k, v in self.violations.items() if v}

    @property
    def consistent(self) -> bool:
        return (self.tame or not self.pet) and (self.tame or not self.miserable)

    @property
    def pet_equivalences_agree(self) -> bool:
        return len({self.pet, self.no_00, self.no_11, self.zero_moves_to_one}) == 1

    def flags(self) -> dict[str, bool]:
        return {
            "tame": self.tame,
            "pet": self.pet,
            "domestic": self.domestic,
            "miserable": self.miserable,
            "no_00": self.no_00,
            "no_11": self.no_11,
            "zero_moves_to_one": self.zero_moves_to_one,
        }


def classify_game(spec: GameSpec, cap: int) -> GameClassReport:
    t = Tables(spec, cap)
    found: dict[str, list[Witness]] = {}

    def flag(key: str, pos: Position, c: PositionClass, reason: str) -> None:
        found.setdefault(key, []).append(Witness(pos, c, reason))

    for pos in t.positions():
        c = t.cls(pos)
        g, gm = c.g, c.g_minus
        if not (c.is_swap or c.is_tame_value):
            flag("tame", pos, c, "neither swap nor (t,t)")
        if (g, gm) == (0, 0):
            flag("no_00", pos, c, "(0,0)-position")
        if (g, gm) == (1, 1):
            flag("no_11", pos, c, "(1,1)-position")
        if (g == 0 and gm >= 2) or (gm == 0 and g >= 2):
            flag("domestic", pos, c, "(0,j) or (j,0) with j >= 2")

        terminal = is_terminal(spec, pos)
        succ_cls = [t.cls(q) for q in moves(spec, pos)]
        to01 = any((s.g, s.g_minus) == (0, 1) for s in succ_cls)
        to10 = any((s.g, s.g_minus) == (1, 0) for s in succ_cls)
        if g == 0 and not terminal and not any(s.g == 1 for s in succ_cls):
            flag("zero_moves_to_one", pos, c, "no move to a 1-position")
        if (g, gm) == (1, 0) and not to01:
            flag("miserable", pos, c, "(1,0) without a move to (0,1)")
        elif (g, gm) == (0, 1) and not terminal and not to10:
            flag("miserable", pos, c, "(0,1) without a move to (1,0)")
        elif not c.is_swap and to01 != to10:
            flag("miserable", pos, c, "moves to only one swap class")

    # pet = tame without (0,0)/(1,1) positions
    pet_bad = sorted(
        found.get("tame", []) + found.get("no_00", []) + found.get("no_11", []),
        key=lambda w: w.position,
    )
    if pet_bad:
        found["pet"] = pet_bad
    report = GameClassReport(
        spec=spec,
        cap=cap,
        tame="tame" not in found,
        pet="pet" not in found,
        domestic="domestic" not in found,
        miserable="miserable" not in found,
        no_00="no_00" not in found,
        no_11="no_11" not in found,
        zero_moves_to_one="zero_moves_to_one" not in found,
        violations=found,
    )
    if not report.consistent:
        raise RuntimeError(f"inconsistent classification for {spec}: {report.flags()}")
    return report


def find_positions_with(
    spec: GameSpec, cap: int, predicate: Callable[[PositionClass], bool]
) -> list[Position]:
    t = Tables(spec, cap)
    return [p for p in t.positions() if predicate(t.cls(p))]
