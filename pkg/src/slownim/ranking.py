"""Dense indexing of sorted pile vectors inside a box.

A canonical position with ``n`` piles, each at most ``cap``, is a
non-decreasing tuple, i.e. a multiset of size ``n`` drawn from
``{0..cap}``. There are ``C(cap + n, n)`` of them. ``rank`` maps each onto
``range(box_size(n, cap))`` in lexicographic order.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Iterator


def box_size(n: int, cap: int) -> int:
    return comb(cap + n, n)


@lru_cache(maxsize=None)
def _tail_count(slots: int, lo: int, cap: int) -> int:
    # non-decreasing tuples of length `slots` with entries in [lo, cap]
    if lo > cap:
        return 1 if slots == 0 else 0
    return comb(cap - lo + slots, slots)


def rank(piles: tuple[int, ...], cap: int) -> int:
    """Lexicographic index of a non-decreasing tuple among all such tuples."""
    n = len(piles)
    r = 0
    lo = 0
    for pos, v in enumerate(piles):
        rest = n - pos - 1
        for smaller in range(lo, v):
            r += _tail_count(rest, smaller, cap)
        lo = v
    return r


def unrank(r: int, n: int, cap: int) -> tuple[int, ...]:
    out = []
    lo = 0
    for pos in range(n):
        rest = n - pos - 1
        v = lo
        while True:
            c = _tail_count(rest, v, cap)
            if r < c:
                break
            r -= c
            v += 1
        out.append(v)
        lo = v
    return tuple(out)


def box_tuples(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Every non-decreasing n-tuple with entries <= cap, lexicographic order."""
    return itertools.combinations_with_replacement(range(cap + 1), n)
