from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osplpp.sortnet import (NotReduced, SortingNetwork, apply_prefix, ascents, enumerate_sorting_networks,
                            iter_network_params, network_params, reverse)

EXAMPLE = (5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3)


@st.composite
def networks(draw, orders=st.integers(2, 8)):
    n = draw(orders)
    perm = list(range(1, n + 1))
    word = []
    while asc := ascents(perm):
        j = draw(st.sampled_from(asc))
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
        word.append(j)
    return SortingNetwork(tuple(word), n)


def test_worked_example_parameters():
    p = network_params(SortingNetwork(EXAMPLE, 6))
    assert p.last == (10, 13, 15, 14, 11)
    assert p.pi == (1, 3, 5, 4, 2)
    assert p.deg == (5, 4, 3, 3, 3, 2, 3, 2, 2, 3, 2, 1, 2, 1, 1)
    assert p.fin_bar == (0, 10, 11, 13, 14, 15)


def test_counts():
    assert [sum(1 for _ in enumerate_sorting_networks(n)) for n in range(2, 6)] == [1, 2, 16, 768]


def test_rejects_non_reduced_words():
    with pytest.raises(NotReduced):
        SortingNetwork((1, 1, 2), 3)
    with pytest.raises(NotReduced):
        SortingNetwork((1, 2), 3)


def test_parse_and_str():
    s = SortingNetwork.parse("5,1,2,4,1,3,5,4,2,1,5,3,2,4,3")
    assert s.order == 6 and str(s) == ",".join(map(str, EXAMPLE))


@given(networks())
def test_random_networks_reach_the_reverse(s):
    assert apply_prefix(s, len(s)) == reverse(s.order)
    p = network_params(s)
    assert sorted(p.last) == list(p.fin_bar[1:])
    assert p.fin_bar[-1] == len(s)
    assert p.deg[0] == s.order - 1 and p.deg[-1] == 1


@given(networks())
def test_wiring_diagram_ends_reversed(s):
    tracks = s.wiring_diagram()
    assert all(track[-1][1] == s.order + 1 - label for label, track in tracks.items())


def test_prefix_stream_partitions_the_enumeration():
    full = [w for w, _ in iter_network_params(5)]
    parts = [w for first in range(1, 5) for w, _ in iter_network_params(5, prefix=(first,))]
    assert full == parts


def test_apply_prefix_bounds():
    s = SortingNetwork((1,), 2)
    with pytest.raises(IndexError):
        apply_prefix(s, 2)
