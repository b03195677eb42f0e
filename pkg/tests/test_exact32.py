import itertools

import pytest

from oracles import grundy
from slownim import exact32
from slownim.closed_forms import DomainError, SwapKind
from slownim.engine import PositionClass, Tables
from slownim.exact32 import SetTag, exact32_classify, nontame_class_32, swap_class_32
from slownim.rules import Family, GameSpec, Position, Version

N, M = Version.NORMAL, Version.MISERE
SPEC = GameSpec(Family.SLOW_EXACT, 3, 2)
CAP = 14


@pytest.fixture(scope="module")
def tables():
    return Tables(SPEC, CAP)


def P(*piles):
    return Position(piles)


def test_examples():
    assert exact32_classify(P(2, 2, 3)) == exact32.Exact32Result(1, SetTag.B, "ee")
    assert exact32_classify(P(3, 3, 3)) == exact32.Exact32Result(0, SetTag.C0, "oo")
    assert exact32_classify(P(0, 0, 0)).tag is None


def test_small_values_against_oracle():
    for piles in itertools.combinations_with_replacement(range(6), 3):
        for v in (N, M):
            assert exact32.slow_exact32_sg(Position(piles), v) == grundy(
                Family.SLOW_EXACT, 3, 2, piles, v is M
            ), (piles, v)


@pytest.mark.parametrize("version", [N, M])
def test_corrected_sets_match_solver(tables, version):
    table = tables.normal if version is N else tables.misere
    for pos in tables.positions():
        assert exact32.slow_exact32_sg(pos, version) == table[pos], pos


@pytest.mark.parametrize("version", [N, M])
@pytest.mark.parametrize("literal", [False, True])
def test_sets_are_disjoint(version, literal):
    # classify raises ConsistencyError on overlap or a tag outside its base family
    for piles in itertools.combinations_with_replacement(range(CAP + 1), 3):
        exact32_classify(Position(piles), version, literal)


def test_literal_normal_fails_only_on_d_boundary(tables):
    bad = [p for p in tables.positions() if exact32.slow_exact32_sg(p, N, literal=True) != tables.normal[p]]
    assert len(bad) == 16
    for p in bad:
        x1, x2, _ = p.piles
        # x1 odd, x2 even, with a = b
        assert x1 % 2 == 1 and x2 % 2 == 0 and (x1 + 1) // 2 == x2 // 2
    assert P(1, 2, 2) in bad


def test_literal_misere_mismatches(tables):
    bad = [p for p in tables.positions() if exact32.slow_exact32_sg(p, M, literal=True) != tables.misere[p]]
    assert len(bad) == 188
    zero_head = [p for p in bad if p.piles[0] == 0]
    assert zero_head and all(exact32_classify(p, M).tag in (SetTag.Z0, SetTag.Z1) for p in zero_head)


def test_misere_first_pile_empty_is_complement():
    for x2 in range(10):
        for x3 in range(x2, 12):
            p = P(0, x2, x3)
            assert exact32.slow_exact32_sg(p, M) == 1 - exact32.slow_exact32_sg(p, N)


def _observed(c):
    return {(0, 1): SwapKind.ZERO_ONE, (1, 0): SwapKind.ONE_ZERO}.get((c.g, c.g_minus))


def test_swap_membership_matches_solver(tables):
    for pos in tables.positions():
        assert (swap_class_32(pos) is not None) == tables.cls(pos).is_swap, pos


def test_fitted_kind_rule_matches_solver(tables):
    for pos in tables.positions():
        assert swap_class_32(pos, kind_rule="fitted") == _observed(tables.cls(pos)), pos


def test_ceil_parity_kind_rule():
    assert swap_class_32(P(2, 3, 4)) is SwapKind.ZERO_ONE
    assert swap_class_32(P(0, 2, 5)) is SwapKind.ZERO_ONE
    assert swap_class_32(P(1, 3, 3)) is SwapKind.ONE_ZERO
    assert swap_class_32(P(1, 3, 4)) is None


def test_ceil_parity_and_fitted_agree_when_a_small(tables):
    # both rules coincide for a in {0, 1}; they part ways from a = 3 on
    for pos in tables.positions():
        if pos.piles[0] <= 1:
            assert swap_class_32(pos) == swap_class_32(pos, kind_rule="fitted")
    assert swap_class_32(P(3, 3, 3)) != swap_class_32(P(3, 3, 3), kind_rule="fitted")


def test_nontame_examples():
    assert nontame_class_32(P(3, 4, 6)) == PositionClass(0, 3)
    assert nontame_class_32(P(3, 3, 5)) == PositionClass(1, 2)
    assert nontame_class_32(P(1, 2, 2)) is None
    assert nontame_class_32(P(2, 3, 4)) is None


def test_nontame_matches_solver(tables):
    for pos in tables.positions():
        c = tables.cls(pos)
        wild = None if (c.is_swap or c.is_tame_value) else c
        assert nontame_class_32(pos) == wild, pos


def test_domain():
    with pytest.raises(DomainError):
        exact32_classify(P(1, 2))
    with pytest.raises(KeyError):
        swap_class_32(P(2, 3, 4), kind_rule="nope")
