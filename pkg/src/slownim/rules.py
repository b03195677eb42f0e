"""Positions, game specs and legal-move generation for the six Nim families."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional


class ShapeError(ValueError):
    """A position does not fit the game it is used with."""


class Family(enum.Enum):
    CLASSIC = "classic"
    MOORE = "moore"
    EXACT = "exact"
    SLOW_MOORE = "slow-moore"
    SLOW_EXACT = "slow-exact"
    EXCO = "exco"


class Version(enum.Enum):
    NORMAL = "normal"
    MISERE = "misere"

    @property
    def terminal_value(self) -> int:
        return 0 if self is Version.NORMAL else 1


@dataclass(frozen=True, order=True)
class Position:
    """A multiset of pile sizes, stored sorted.

    ``distinguished`` is the extra x0 pile of Exco-Nim and is None for every
    other family. Ordering is (distinguished, piles), which is the
    lexicographic order used for tables and tie-breaks.
    """

    distinguished: Optional[int]
    piles: tuple[int, ...]

    def __init__(self, piles: Iterable[int], distinguished: Optional[int] = None):
        piles = tuple(sorted(int(p) for p in piles))
        if any(p < 0 for p in piles):
            raise ValueError(f"pile sizes must be non-negative: {piles}")
        if distinguished is not None:
            distinguished = int(distinguished)
            if distinguished < 0:
                raise ValueError("distinguished pile must be non-negative")
        object.__setattr__(self, "piles", piles)
        object.__setattr__(self, "distinguished", distinguished)

    @property
    def n(self) -> int:
        return len(self.piles)

    @property
    def total(self) -> int:
        return sum(self.piles) + (self.distinguished or 0)

    def __str__(self) -> str:
        body = ",".join(map(str, self.piles))
        if self.distinguished is None:
            return f"({body})"
        return f"(x0={self.distinguished}; {body})"


def canonicalize(raw: Iterable[int], distinguished: Optional[int] = None) -> Position:
    return Position(raw, distinguished)


@dataclass(frozen=True)
class GameSpec:
    """A game family with its pile count ``n`` and move width ``k``.

    For Exco-Nim ``n`` counts the ordinary piles only and ``k`` is always
    ``n - 1``; for classic Nim ``k`` is 1.
    """

    family: Family
    n: int
    k: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.family is Family.EXCO:
            if self.n < 2:
                raise ValueError("Exco-Nim needs n >= 2")
            object.__setattr__(self, "k", self.n - 1)
        elif self.family is Family.CLASSIC:
            object.__setattr__(self, "k", 1)
        elif not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")

    @property
    def has_distinguished(self) -> bool:
        return self.family is Family.EXCO

    @property
    def is_slow(self) -> bool:
        return self.family in (Family.SLOW_MOORE, Family.SLOW_EXACT)

    def check(self, pos: Position) -> None:
        if pos.n != self.n:
            raise ShapeError(f"{self} expects {self.n} piles, got {pos.n}")
        if self.has_distinguished != (pos.distinguished is not None):
            want = "needs" if self.has_distinguished else "must not have"
            raise ShapeError(f"{self} {want} a distinguished pile")

    def __str__(self) -> str:
        if self.family is Family.CLASSIC:
            return f"classic(n={self.n})"
        if self.family is Family.EXCO:
            return f"exco(n={self.n})"
        return f"{self.family.value}(n={self.n}, k={self.k})"


def count_nonempty(pos: Position) -> int:
    return sum(1 for p in pos.piles if p > 0)


def _subsets(indices: list[int], widths: Iterable[int]):
    for r in widths:
        yield from itertools.combinations(indices, r)


def _reduce(piles: tuple[int, ...], chosen, amounts) -> tuple[int, ...]:
    out = list(piles)
    for i, d in zip(chosen, amounts):
        out[i] -= d
    return tuple(sorted(out))


def _successor_piles(spec: GameSpec, piles: tuple[int, ...]) -> set[tuple[int, ...]]:
    fam, k = spec.family, spec.k
    nonempty = [i for i, p in enumerate(piles) if p > 0]
    if fam in (Family.CLASSIC, Family.MOORE, Family.SLOW_MOORE):
        widths = range(1, min(k, len(nonempty)) + 1)
    else:
        widths = [k] if len(nonempty) >= k else []
    out = set()
    slow = spec.is_slow
    for chosen in _subsets(nonempty, widths):
        if slow:
            out.add(_reduce(piles, chosen, (1,) * len(chosen)))
            continue
        ranges = [range(1, piles[i] + 1) for i in chosen]
        for amounts in itertools.product(*ranges):
            out.add(_reduce(piles, chosen, amounts))
    return out


def _exco_successors(spec: GameSpec, pos: Position) -> set[Position]:
    piles, x0 = pos.piles, pos.distinguished
    indices = list(range(spec.n))
    seen = set()
    out = set()
    # zero decreases are allowed per pile, so (n-1)-subsets cover all smaller
    # selections; only the total decrease must be positive
    for chosen in itertools.combinations(indices, spec.n - 1):
        ranges = [range(0, piles[i] + 1) for i in chosen]
        for amounts in itertools.product(*ranges):
            reduced = _reduce(piles, chosen, amounts)
            if reduced in seen:
                continue
            seen.add(reduced)
            removed = sum(amounts)
            for d0 in range(0 if removed else 1, x0 + 1):
                out.add(Position(reduced, x0 - d0))
    return out


def moves(spec: GameSpec, pos: Position) -> set[Position]:
    """All canonical successors of ``pos`` (deduplicated)."""
    spec.check(pos)
    if spec.family is Family.EXCO:
        return _exco_successors(spec, pos)
    return {Position(p) for p in _successor_piles(spec, pos.piles)}


def is_terminal(spec: GameSpec, pos: Position) -> bool:
    spec.check(pos)
    if spec.family in (Family.EXACT, Family.SLOW_EXACT):
        return count_nonempty(pos) < spec.k
    return pos.total == 0
