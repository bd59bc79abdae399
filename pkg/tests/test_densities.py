from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from osplpp.densities import (GROWTH, OSP, HypoexpSpec, chamber, density_from_paths, density_V_recursive,
                              hypoexp_cdf, hypoexp_density, loe_cdf, pU4_bin_probabilities, pU4_closed_form,
                              pU4_closed_form_array, pV3_closed_form)
from osplpp.processes import RngStream, sample_osp
from osplpp.shapes import iter_syt_params
from osplpp.sortnet import iter_network_params
from osplpp.stats import chi_square

coords = st.floats(0.0, 5.0, allow_nan=False)


def test_hypoexp_small_cases():
    x = 0.7
    assert hypoexp_density((1,), x) == pytest.approx(math.exp(-x), rel=1e-14)
    assert hypoexp_density((2, 1), x) == pytest.approx(2 * (math.exp(-x) - math.exp(-2 * x)), rel=1e-13)
    assert hypoexp_density((1, 1), x) == pytest.approx(x * math.exp(-x), rel=1e-13)
    assert hypoexp_density((1,), -1.0) == 0.0
    with pytest.raises(ValueError):
        HypoexpSpec((0,))


def _blocks_up_to(n):
    found = set()
    for m in range(2, n + 1):
        for source in (iter_syt_params, iter_network_params):
            for _, p in source(m):
                found.update(p.factor.blocks)
    return found


def test_every_rate_block_integrates_to_one():
    for block in _blocks_up_to(6):
        rates = tuple(d for d, m in block for _ in range(m))
        total, _ = integrate.quad(lambda s: hypoexp_density(rates, s), 0, np.inf, epsabs=1e-12)
        assert total == pytest.approx(1, abs=1e-8)
        assert hypoexp_cdf(rates, 200.0) == pytest.approx(1, abs=1e-10)


def test_chamber_permutation():
    assert chamber((0.5, 1.0, 1.5)) == (1, 2, 3)
    assert chamber((2.0, 0.1, 1.0)) == (3, 1, 2)


def test_order_two_density():
    for u in (0.1, 1.0, 3.0):
        assert density_from_paths(2, (u,)) == pytest.approx(math.exp(-u), rel=1e-14)


def test_closed_form_reference_value():
    expected = math.exp(-3) * (math.exp(1.5) + 0.5 * math.exp(0.5) - 1.5 * math.e - 1)
    assert pU4_closed_form(0.5, 1, 1.5) == pytest.approx(expected, rel=1e-14)
    assert density_from_paths(4, (0.5, 1, 1.5)) == pytest.approx(expected, abs=1e-9)


@given(coords, coords, coords)
def test_path_sums_match_closed_form(u1, u2, u3):
    ref = pU4_closed_form(u1, u2, u3)
    assert ref >= -1e-15  # exactly zero on the faces of the orthant, up to round-off
    assert abs(density_from_paths(4, (u1, u2, u3), OSP) - ref) < 1e-9
    assert abs(density_from_paths(4, (u1, u2, u3), GROWTH) - ref) < 1e-9


@given(coords, coords)
def test_closed_form_is_continuous_across_chamber_walls(a, b):
    eps = 1e-9
    for u in [(a, a, b), (a, b, a), (b, a, a)]:
        lo = pU4_closed_form(*[v - eps if i == 0 else v for i, v in enumerate(u)])
        hi = pU4_closed_form(*[v + eps if i == 0 else v for i, v in enumerate(u)])
        assert abs(lo - hi) < 1e-7


def test_vectorised_closed_form():
    u = np.random.default_rng(3).uniform(0, 4, (500, 3))
    assert np.allclose(pU4_closed_form_array(u), [pU4_closed_form(*r) for r in u], rtol=0, atol=1e-15)


def test_order_three_recursion():
    assert density_V_recursive(3, (1, 2)) == pytest.approx(math.exp(-3) * (math.e - 1), abs=1e-12)
    assert density_V_recursive(3, (1, 2)) == pytest.approx(density_V_recursive(3, (2, 1)), abs=1e-12)
    for v in np.random.default_rng(4).uniform(0, 4, (10, 2)):
        assert density_V_recursive(3, v) == pytest.approx(pV3_closed_form(*v), abs=1e-10)


def test_order_four_recursion():
    assert density_V_recursive(4, (0.5, 1, 1.5)) == pytest.approx(pU4_closed_form(0.5, 1, 1.5), abs=1e-4)
    with pytest.raises(ValueError):
        density_V_recursive(5, (1, 1, 1, 1))


def test_loe_estimator():
    est, se = loe_cdf(2, 1.0, 50_000, RngStream(1))
    assert abs(est - (1 - math.exp(-1))) < 3 * se
    assert loe_cdf(4, 60.0, 20_000, RngStream(2))[0] == pytest.approx(1.0)


def test_density_matches_histogram():
    edges = [0, 0.6, 1, 1.4, 1.8, 2.3, 3, 4, 30]
    probs = pU4_bin_probabilities(edges, nodes=12)
    assert probs.sum() == pytest.approx(1, abs=1e-5)
    u = sample_osp(4, 1_000_000, RngStream(11)).coords
    idx = np.clip(np.searchsorted(edges, u, side="right") - 1, 0, len(edges) - 2)
    counts = np.zeros(probs.shape)
    np.add.at(counts, tuple(idx.T), 1)
    assert chi_square(counts.ravel(), probs.ravel()).passed
