import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slownim import ranking


@pytest.mark.parametrize("n, cap, size", [(3, 15, 816), (3, 3, 20), (6, 12, 18564), (1, 0, 1)])
def test_box_size(n, cap, size):
    assert ranking.box_size(n, cap) == size
    assert sum(1 for _ in ranking.box_tuples(n, cap)) == size


@pytest.mark.parametrize("n, cap", [(1, 5), (2, 4), (3, 3), (4, 2), (5, 3)])
def test_rank_is_lexicographic_bijection(n, cap):
    tuples = list(ranking.box_tuples(n, cap))
    assert tuples == sorted(tuples)
    for r, t in enumerate(tuples):
        assert ranking.rank(t, cap) == r
        assert ranking.unrank(r, n, cap) == t


@given(st.integers(1, 6), st.integers(0, 12), st.data())
def test_rank_unrank_roundtrip(n, cap, data):
    t = tuple(sorted(data.draw(st.lists(st.integers(0, cap), min_size=n, max_size=n))))
    r = ranking.rank(t, cap)
    assert 0 <= r < ranking.box_size(n, cap)
    assert ranking.unrank(r, n, cap) == t
