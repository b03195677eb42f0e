from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import successors
from slownim.rules import (
    Family,
    GameSpec,
    Position,
    ShapeError,
    canonicalize,
    count_nonempty,
    is_terminal,
    moves,
)

PLAIN = [Family.CLASSIC, Family.MOORE, Family.EXACT, Family.SLOW_MOORE, Family.SLOW_EXACT]


def P(*piles, x0=None):
    return Position(piles, x0)


def test_canonicalize():
    assert canonicalize([3, 1, 2]).piles == (1, 2, 3)
    assert canonicalize([0, 0, 0]).piles == (0, 0, 0)
    pos = canonicalize([5, 0], 4)
    assert pos.piles == (0, 5) and pos.distinguished == 4


def test_negative_piles_rejected():
    with pytest.raises(ValueError):
        Position([1, -1])


def test_spec_validation():
    with pytest.raises(ValueError):
        GameSpec(Family.MOORE, 3, 4)
    with pytest.raises(ValueError):
        GameSpec(Family.EXCO, 1)
    assert GameSpec(Family.EXCO, 4, 1).k == 3
    assert GameSpec(Family.CLASSIC, 3, 2).k == 1


@pytest.mark.parametrize(
    "family, n, k, piles, expected",
    [
        (Family.SLOW_EXACT, 3, 2, (1, 1, 1), {(0, 0, 1)}),
        (Family.SLOW_MOORE, 3, 2, (0, 0, 1), {(0, 0, 0)}),
        # both piles of size 1 must be emptied
        (Family.EXACT, 3, 2, (0, 1, 1), {(0, 0, 0)}),
        (Family.CLASSIC, 2, 1, (1, 2), {(0, 2), (1, 1), (0, 1)}),
    ],
)
def test_moves_examples(family, n, k, piles, expected):
    got = {q.piles for q in moves(GameSpec(family, n, k), Position(piles))}
    assert got == expected
    assert got == {y for _, y in successors(family, n, k, piles)}


def test_moves_shape_errors():
    with pytest.raises(ShapeError):
        moves(GameSpec(Family.MOORE, 3, 2), P(1, 2))
    with pytest.raises(ShapeError):
        moves(GameSpec(Family.EXCO, 3), P(1, 2, 3))
    with pytest.raises(ShapeError):
        moves(GameSpec(Family.MOORE, 3, 2), P(1, 2, 3, x0=1))


def _all_specs(max_n=4):
    for fam in PLAIN:
        for n in range(1, max_n + 1):
            for k in range(1, n + 1):
                if fam is Family.CLASSIC and k > 1:
                    continue
                yield GameSpec(fam, n, k)


@pytest.mark.parametrize("spec", list(_all_specs()), ids=str)
def test_moves_match_oracle_on_small_box(spec):
    cap = 3 if spec.n <= 3 else 2
    for piles in itertools.combinations_with_replacement(range(cap + 1), spec.n):
        got = {q.piles for q in moves(spec, Position(piles))}
        want = {y for _, y in successors(spec.family, spec.n, spec.k, piles)}
        assert got == want, (spec, piles)


@pytest.mark.parametrize("n", [2, 3])
def test_exco_moves_match_oracle(n):
    spec = GameSpec(Family.EXCO, n)
    for x0 in range(3):
        for piles in itertools.combinations_with_replacement(range(3), n):
            got = {(q.distinguished, q.piles) for q in moves(spec, P(*piles, x0=x0))}
            assert got == successors(Family.EXCO, n, n - 1, piles, x0)


def test_exco_reduces_to_moore_at_x0_zero():
    exco, moore = GameSpec(Family.EXCO, 3), GameSpec(Family.MOORE, 3, 2)
    for piles in itertools.combinations_with_replacement(range(4), 3):
        a = {q.piles for q in moves(exco, P(*piles, x0=0))}
        b = {q.piles for q in moves(moore, Position(piles))}
        assert a == b


@pytest.mark.parametrize(
    "spec, piles, expected",
    [
        (GameSpec(Family.SLOW_EXACT, 3, 2), (0, 0, 5), True),
        (GameSpec(Family.MOORE, 3, 2), (0, 0, 1), False),
        (GameSpec(Family.CLASSIC, 2), (0, 0), True),
        (GameSpec(Family.EXACT, 4, 3), (0, 0, 7, 7), True),
    ],
)
def test_is_terminal(spec, piles, expected):
    assert is_terminal(spec, Position(piles)) is expected


def test_exco_terminal_needs_x0_empty():
    spec = GameSpec(Family.EXCO, 3)
    assert is_terminal(spec, P(0, 0, 0, x0=0))
    assert not is_terminal(spec, P(0, 0, 0, x0=1))


@pytest.mark.parametrize("piles, expected", [((0, 0, 0), 0), ((0, 1, 1), 2), ((1, 2, 3), 3)])
def test_count_nonempty(piles, expected):
    assert count_nonempty(Position(piles)) == expected


spec_strategy = st.sampled_from(list(_all_specs(5)))


@st.composite
def spec_and_position(draw):
    spec = draw(spec_strategy)
    piles = draw(st.lists(st.integers(0, 6), min_size=spec.n, max_size=spec.n))
    return spec, Position(piles)


@settings(max_examples=300, deadline=None)
@given(spec_and_position())
def test_successors_are_canonical_and_smaller(case):
    spec, pos = case
    succ = moves(spec, pos)
    assert is_terminal(spec, pos) == (not succ)
    for q in succ:
        assert list(q.piles) == sorted(q.piles)
        assert all(a <= b for a, b in zip(q.piles, pos.piles))
        dropped = pos.total - q.total
        assert dropped >= 1
        if spec.is_slow:
            assert 1 <= dropped <= spec.k


@settings(max_examples=200, deadline=None)
@given(spec_and_position())
def test_slow_move_counts_bounded(case):
    spec, pos = case
    if not spec.is_slow:
        return
    n, k = spec.n, spec.k
    bound = comb(n, k) if spec.family is Family.SLOW_EXACT else sum(comb(n, j) for j in range(1, k + 1))
    assert len(moves(spec, pos)) <= bound


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_k1_exact_and_moore_coincide(piles):
    n = len(piles)
    a = moves(GameSpec(Family.EXACT, n, 1), Position(piles))
    b = moves(GameSpec(Family.MOORE, n, 1), Position(piles))
    assert a == b == moves(GameSpec(Family.CLASSIC, n), Position(piles))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_slow_exact_full_width_single_successor(piles):
    n = len(piles)
    succ = moves(GameSpec(Family.SLOW_EXACT, n, n), Position(piles))
    assert succ == {Position(p - 1 for p in piles)}
