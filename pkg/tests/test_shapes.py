from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osplpp.shapes import (Cell, GeneratingFactor, InvalidOrder, InvalidShape, InvalidTableau, StandardTableau,
                           Tableau, YoungDiagram, border_strip, corners, enumerate_syt, growth_sequence,
                           hook_length_count, inverse_permutation, iter_syt_params, omega_weights,
                           rank_permutation, staircase, staircase_syt_count, tableau_params)

partitions = st.lists(st.integers(1, 6), min_size=1, max_size=6).map(lambda r: YoungDiagram(tuple(sorted(r, reverse=True))))


@st.composite
def staircase_tableaux(draw, orders=st.integers(2, 7)):
    """A uniformly-driven random growth of the staircase, returned as a StandardTableau."""
    n = draw(orders)
    bound = staircase(n).rows
    lengths = [0] * len(bound)
    word = []
    for _ in range(sum(bound)):
        room = [r for r in range(len(bound)) if lengths[r] < bound[r] and (r == 0 or lengths[r - 1] > lengths[r])]
        r = draw(st.sampled_from(room))
        lengths[r] += 1
        word.append(r + 1)
    return StandardTableau.from_row_word(word)


BIG = YoungDiagram((4, 3, 3, 3, 1))


def test_staircase_and_errors():
    assert staircase(4).rows == (3, 2, 1)
    with pytest.raises(InvalidOrder):
        staircase(1)
    with pytest.raises(InvalidShape):
        YoungDiagram((1, 2))


def test_border_strip_and_corners_of_large_example():
    assert border_strip(BIG) == [(1, 4), (1, 3), (2, 3), (3, 3), (4, 3), (4, 2), (4, 1), (5, 1)]
    assert set(corners(BIG)) == {(1, 4), (4, 3), (5, 1)}


def test_omega_weights_of_large_example():
    w = omega_weights(BIG)
    assert {c for c, v in w.items() if v == 1} == {(5, 1), (4, 3), (3, 2), (2, 1), (1, 4)}
    assert {c for c, v in w.items() if v == -1} == {(4, 1), (1, 3)}


def test_staircase_border_strip_zigzags():
    assert border_strip(staircase(4)) == [(1, 3), (1, 2), (2, 2), (2, 1), (3, 1)]


@given(partitions)
def test_border_strip_is_one_box_per_diagonal(shape):
    strip = border_strip(shape)
    diagonals = [j - i for i, j in strip]
    assert sorted(diagonals) == sorted({j - i for i, j in shape.cells()})
    assert all(Cell(i + 1, j + 1) not in shape for i, j in strip)
    for (a, b), (c, d) in zip(strip, strip[1:]):
        assert (c - a, d - b) in {(1, 0), (0, -1)}


@given(partitions)
def test_conjugate_is_an_involution(shape):
    assert shape.conjugate().conjugate() == shape
    assert shape.conjugate().size == shape.size


@given(partitions)
def test_omega_is_constant_on_diagonals(shape):
    w = omega_weights(shape)
    by_diag = {}
    for (i, j), v in w.items():
        by_diag.setdefault(j - i, set()).add(v)
    assert all(len(vals) == 1 for vals in by_diag.values())
    assert {c for c, v in w.items() if v == 1} >= set(corners(shape))


def test_counts_match_hook_length_formula():
    for n, expected in zip(range(2, 6), (1, 2, 16, 768)):
        assert sum(1 for _ in enumerate_syt(staircase(n))) == expected == staircase_syt_count(n)
    assert staircase_syt_count(6) == 292864


@given(partitions.filter(lambda s: s.size <= 8))
def test_enumeration_matches_hook_length_on_small_shapes(shape):
    tabs = list(enumerate_syt(shape))
    assert len(tabs) == hook_length_count(shape) == len(set(tabs))


def test_enumeration_is_lexicographic_in_row_words():
    words = [t.row_word() for t in enumerate_syt(staircase(4))]
    assert words == sorted(words)


def test_text_round_trip_and_validation():
    t = StandardTableau(((1, 2, 4), (3, 5), (6,)))
    assert t.to_text() == "3,2,1:1,2,4,3,5,6"
    assert Tableau.from_text(t.to_text()) == Tableau(t.rows)
    with pytest.raises(InvalidTableau):
        StandardTableau(((1, 3), (2, 2)))
    with pytest.raises(InvalidTableau):
        StandardTableau(((2, 1),))


@given(staircase_tableaux())
def test_row_word_round_trip(t):
    assert StandardTableau.from_row_word(t.row_word()) == t
    seq = growth_sequence(t)
    assert [s.size for s in seq] == list(range(t.shape.size + 1))


@given(staircase_tableaux())
def test_tableau_params_invariants(t):
    n = t.order
    p = tableau_params(t)
    assert sorted(p.perm) == list(range(1, n))
    assert p.bar[-1] == len(p.deg) == n * (n - 1) // 2
    assert p.factor.degree() == len(p.deg)
    assert p.deg[0] == 1 and p.deg[-1] == 1
    # the last box added is always a corner of the full staircase
    assert p.bar[-1] in p.cor


def test_generating_factor_and_params_agree_with_fast_stream():
    fast = dict(iter_syt_params(4))
    for t in enumerate_syt(staircase(4)):
        assert fast[t.row_word()] == tableau_params(t)
    assert sum(p.path_probability() for p in fast.values()) == 1


def test_generating_factor_evaluation():
    f = GeneratingFactor((((1, 1), (2, 2)), ((1, 1),)))
    assert f(0, 0) == Fraction(1, 4)
    assert str(f) == "1/((x1+1)*(x1+2)^2*(x2+1))"
    assert f.rates(1) == [1, 2, 2]


@given(st.permutations(list(range(1, 7))))
def test_rank_and_inverse(perm):
    perm = tuple(perm)
    assert rank_permutation([10 * v for v in perm]) == perm
    inv = inverse_permutation(perm)
    assert tuple(perm[i - 1] for i in inv) == tuple(range(1, 7))


def test_non_staircase_has_no_params():
    with pytest.raises(InvalidShape):
        tableau_params(StandardTableau(((1, 2), (3, 4))))
