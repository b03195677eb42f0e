"""Closed-form SG values and position characterizations.

Each function states the games it applies to and raises ``DomainError``
outside them. Nothing here calls the solver; :mod:`slownim.verify` checks
these against it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from slownim.rules import Family, GameSpec, Position, Version, count_nonempty


class DomainError(ValueError):
    """A closed form was asked about a game it does not cover."""


class SwapKind(enum.Enum):
    ZERO_ONE = "(0,1)"
    ONE_ZERO = "(1,0)"

    @property
    def pair(self) -> tuple[int, int]:
        return (0, 1) if self is SwapKind.ZERO_ONE else (1, 0)


def _kind(zero_one: bool) -> SwapKind:
    return SwapKind.ZERO_ONE if zero_one else SwapKind.ONE_ZERO


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _plain(pos: Position) -> None:
    _require(pos.distinguished is None, "position must not have a distinguished pile")


def parity_vector(pos: Position) -> str:
    """Parities of the sorted piles as a string over ``{e, o}``."""
    return "".join("e" if p % 2 == 0 else "o" for p in pos.piles)


def nim_sum(pos: Position) -> int:
    _plain(pos)
    s = 0
    for p in pos.piles:
        s ^= p
    return s


def moore_function(pos: Position, k: int) -> int:
    """Column-wise binary digit sums mod ``k + 1``, read in base ``k + 1``."""
    _plain(pos)
    _require(k >= 1, "k must be positive")
    width = max(pos.piles, default=0).bit_length()
    out = 0
    for j in reversed(range(width)):
        digit = sum((p >> j) & 1 for p in pos.piles) % (k + 1)
        out = out * (k + 1) + digit
    return out


@dataclass(frozen=True)
class JmIntermediates:
    u: int
    m: int
    y: int
    z: int
    value: int

    @property
    def branch(self) -> str:
        return "u" if self.m < self.z else "periodic"


def _eq3(u: int, m: int, y: int) -> JmIntermediates:
    if y < 0:
        raise DomainError(f"negative y={y}")
    z = (y * y + y + 2) // 2
    value = u if m < z else (z - 1) + (m - z) % (y + 1)
    return JmIntermediates(u, m, y, z, value)


def jm_intermediates(pos: Position, spec: GameSpec) -> JmIntermediates:
    if spec.family is Family.EXCO:
        _require(spec.n >= 3, "Exco-Nim formula needs n >= 3")
        x0 = pos.distinguished
        _require(x0 is not None, "Exco-Nim position needs x0")
    elif spec.family is Family.MOORE:
        _require(spec.n == spec.k + 1 and spec.n >= 3, "Moore's Nim formula needs n = k+1 >= 3")
        _plain(pos)
        x0 = 0
    else:
        raise DomainError(f"no Jenkyns-Mayberry formula for {spec}")
    _require(pos.n == spec.n, f"{spec} expects {spec.n} piles")
    u = x0 + sum(pos.piles)
    m = min(pos.piles)
    return _eq3(u, m, u - spec.n * m)


def jm_formula(pos: Position, spec: GameSpec) -> int:
    return jm_intermediates(pos, spec).value


def tetris(pos: Position, k: int) -> int:
    """Most rounds of "take one from exactly k distinct piles" that fit.

    ``M`` rounds fit iff ``sum(min(x_j, M)) >= M * k``: pile ``j`` can serve
    at most ``min(x_j, M)`` rounds, and any capacities meeting the bound can
    be scheduled greedily (always serve the k fullest piles). The predicate
    is monotone in ``M`` so we binary search.
    """
    _plain(pos)
    _require(1 <= k <= pos.n, f"need 1 <= k <= n, got k={k}, n={pos.n}")
    lo, hi = 0, sum(pos.piles) // k
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if sum(min(x, mid) for x in pos.piles) >= mid * k:
            lo = mid
        else:
            hi = mid - 1
    return lo


def exact_sg_formula(pos: Position, spec: GameSpec) -> int:
    _require(spec.family is Family.EXACT, f"{spec} is not Exact k-Nim")
    _plain(pos)
    _require(pos.n == spec.n, f"{spec} expects {spec.n} piles")
    n, k = spec.n, spec.k
    if 2 * k > n:
        return tetris(pos, k)
    _require(n == 2 * k and n >= 4, f"no closed form for Exact k-Nim with n={n}, k={k}")
    m = min(pos.piles)
    shifted = Position(p - m for p in pos.piles)
    return _eq3(tetris(pos, k), m, tetris(shifted, k)).value


def trivial_case_sg(pos: Position, spec: GameSpec, version: Version) -> int:
    _plain(pos)
    if spec.family in (Family.SLOW_MOORE, Family.SLOW_EXACT) and spec.k == 1:
        q = sum(pos.piles)
    elif spec.family is Family.SLOW_EXACT and spec.k == spec.n:
        q = min(pos.piles)
    else:
        raise DomainError(f"{spec} is not a trivial slow game")
    g = q % 2
    return g if version is Version.NORMAL else 1 - g


_SLOW_MOORE_22 = {"ee": 0, "eo": 1, "oo": 2, "oe": 3}
_SLOW_MOORE_32 = {
    "eee": 0, "ooo": 0,
    "eeo": 1, "ooe": 1,
    "eoo": 2, "oee": 2,
    "eoe": 3, "oeo": 3,
}


def slow_moore_sg_small(pos: Position, spec: GameSpec) -> int:
    _plain(pos)
    _require(spec.family is Family.SLOW_MOORE, f"{spec} is not Slow Moore's Nim")
    table = {(2, 2): _SLOW_MOORE_22, (3, 2): _SLOW_MOORE_32}.get((spec.n, spec.k))
    _require(table is not None, f"no parity table for {spec}")
    _require(pos.n == spec.n, f"{spec} expects {spec.n} piles")
    return table[parity_vector(pos)]


def _slow_moore_p_vectors(n: int, k: int) -> set[str]:
    if n == k:
        return {"e" * n}
    if n == k + 1:
        return {"e" * n, "o" * n}
    if n == k + 2 and k >= 2:
        return {"e" * n, "e" + "o" * (n - 1)}
    if (n, k) == (5, 2):
        return {"eeeee", "eeooo", "ooeeo", "ooooe"}
    if (n, k) == (6, 3):
        return {"eeeeee", "eeoooo", "ooeeoo", "ooooee"}
    raise DomainError(f"P-positions of slow Moore's Nim n={n}, k={k} are not parity-determined")


def slow_moore_is_p(pos: Position, spec: GameSpec) -> bool:
    """P-position test by parity vector.

    Covers n = k, n = k + 1, n = k + 2 with k >= 2, and (n, k) in
    {(5, 2), (6, 3)}. With k = 1 the game is decided by the parity of the
    token total instead (see :func:`trivial_case_sg`).
    """
    _plain(pos)
    _require(spec.family is Family.SLOW_MOORE, f"{spec} is not Slow Moore's Nim")
    _require(pos.n == spec.n, f"{spec} expects {spec.n} piles")
    return parity_vector(pos) in _slow_moore_p_vectors(spec.n, spec.k)


def slow_moore_misere_swap(pos: Position, spec: GameSpec) -> Optional[SwapKind]:
    _plain(pos)
    _require(spec.family is Family.SLOW_MOORE, f"{spec} is not Slow Moore's Nim")
    _require(spec.k >= spec.n - 1, f"swap sets are only known for k >= n-1, got {spec}")
    _require(pos.n == spec.n, f"{spec} expects {spec.n} piles")
    head, last = pos.piles[:-1], pos.piles[-1]
    if spec.k == spec.n:
        if any(head):
            return None
        return _kind(last % 2 == 0)
    if len(set(head)) > 1:
        return None
    base = head[0] if head else 0
    return _kind((last - base) % 2 == 0)


def swap_class_moore(pos: Position, spec: GameSpec) -> Optional[SwapKind]:
    _plain(pos)
    _require(spec.family is Family.MOORE, f"{spec} is not Moore's Nim")
    _require(2 <= spec.k < spec.n, f"swap characterization needs 2 <= k < n, got {spec}")
    if any(p > 1 for p in pos.piles):
        return None
    r = count_nonempty(pos) % (spec.k + 1)
    if r == 0:
        return SwapKind.ZERO_ONE
    if r == 1:
        return SwapKind.ONE_ZERO
    return None


def swap_class_exact2k(pos: Position, k: int) -> Optional[SwapKind]:
    """Swap class in Exact k-Nim with 2k piles."""
    _plain(pos)
    _require(pos.n == 2 * k, f"need {2 * k} piles, got {pos.n}")
    head = pos.piles[: k + 1]
    zero_one = len(set(head)) == 1 and head[0] <= 1
    one_zero = tetris(pos, k) == 1
    if zero_one and one_zero:
        raise RuntimeError(f"{pos} satisfies both swap characterizations")
    if zero_one:
        return SwapKind.ZERO_ONE
    if one_zero:
        return SwapKind.ONE_ZERO
    return None
