"""Acceptance criteria, one test each, at the stated tolerances and fixed seeds.

Each test records a one-line PASS/FAIL summary that is repeated in the
terminal summary under "acceptance criteria".
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from osplpp import checks, genfun
from osplpp.densities import (GROWTH, OSP, density_from_paths, density_V_recursive, loe_cdf,
                              pU4_closed_form, pU4_total_mass, pV3_closed_form)
from osplpp.edelman_greene import verify_eg_params_full
from osplpp.processes import RngStream, sample_corner_growth, sample_lpp, sample_osp, sample_osp_clocks
from osplpp.report import merge_reports
from osplpp.shapes import YoungDiagram, enumerate_syt, staircase, staircase_syt_count
from osplpp.sortnet import enumerate_sorting_networks
from osplpp.stats import ALPHA, ks_two_sample

SEED = 2024
REPLICAS = 100_000

pytestmark = pytest.mark.slow


def test_criterion_1_enumeration_counts(record_criterion):
    expected = {2: 1, 3: 2, 4: 16, 5: 768, 6: 292864}
    found = {}
    elapsed = 0.0
    for n in expected:
        start = time.perf_counter()
        syt = sum(1 for _ in enumerate_syt(staircase(n)))
        nets = sum(1 for _ in enumerate_sorting_networks(n))
        if n == 6:
            elapsed = time.perf_counter() - start
        found[n] = (syt, nets, staircase_syt_count(n))
    ok = all(v == (expected[n],) * 3 for n, v in found.items()) and elapsed < 60
    record_criterion(1, ok, f"counts={[v[0] for v in found.values()]} n6_dual_seconds={elapsed:.1f}")
    assert ok


def test_criterion_2_edelman_greene(record_criterion):
    reports = [checks.eg_bijection_check(n) for n in range(2, 6)]
    reports += [verify_eg_params_full(n) for n in range(2, 7)]
    reports.append(checks.example_network_check())
    merged = merge_reports("eg", reports)
    checked = sum(r.statistics.get("checked", 0) for r in reports)
    record_criterion(2, merged.passed, f"sub-checks={len(reports)} failed={merged.statistics['failed']} "
                                       f"tableaux_checked={checked}")
    assert merged.passed, [r.line() for r in reports if not r.passed]


def test_criterion_3_identity(record_criterion):
    start = time.perf_counter()
    small = [genfun.verify_identity(n, genfun.CANONICAL) for n in range(2, 6)]
    small_time = time.perf_counter() - start
    start = time.perf_counter()
    big = genfun.verify_identity(6, genfun.EVALUATION, points=20, seed=SEED)
    big_time = time.perf_counter() - start

    form = genfun.accumulate_F(4)[(1, 2, 3)]
    num, den = genfun.recombine(form)
    # (x1 + 2 x2 + 5) / ((x1+1)(x1+2)^2(x1+3)(x2+1)(x2+2)(x3+1))
    expected_num = {(1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 0): 5}
    expected_den = {(1, 1): 1, (1, 2): 2, (1, 3): 1, (2, 1): 1, (2, 2): 1, (3, 1): 1}
    component_ok = num == expected_num and dict(den) == expected_den

    ok = (all(r.verdict == "EQUAL" for r in small) and small_time < 300
          and big.verdict == "EQUAL" and big.statistics["points"] >= 20 and big_time < 1800 and component_ok)
    record_criterion(3, ok, f"canonical n=2..5 {small_time:.1f}s, n=6 evaluation {big.verdict} "
                            f"({big.statistics['points']} points, {big_time:.1f}s), "
                            f"n=4 component {genfun.format_rational(num, den)}")
    assert ok


def test_criterion_4_rsk_burge(record_criterion):
    report = checks.rsk_burge_exhaustive(box=3, cap=2, shifts=(1, 2), bruteforce=True)
    record_criterion(4, report.passed, report.line())
    assert report.passed, report.details["failing_cases"]


def test_criterion_5_border_laws(record_criterion):
    reports = [checks.border_law_check(YoungDiagram(s), Fraction(1, 2), 4) for s in ((2, 2), (3, 2, 1))]
    bern = checks.border_law_bernoulli_check()
    ok = all(reports) and bern.verdict == "EXPECTED-INEQUAL"
    record_criterion(5, ok, "; ".join(r.line() for r in reports + [bern]))
    assert ok


def _ks_coords(a, b, label):
    return [ks_two_sample(a[:, k], b[:, k], f"{label} coord{k + 1}") for k in range(a.shape[1])]


def test_criterion_6_monte_carlo(record_criterion):
    start = time.perf_counter()
    reports = []
    idx = iter(range(1000))

    def stream():
        return RngStream(SEED, next(idx))

    for n in (3, 4):
        a = sample_osp(n, REPLICAS, stream()).coords
        b = sample_osp_clocks(n, REPLICAS, stream()).coords
        reports += _ks_coords(a, b, f"osp-vs-clocks n={n}")
        reports.append(ks_two_sample(a.max(1), b.max(1), f"osp-vs-clocks n={n} max"))
    for n in (4, 6):
        a = sample_corner_growth(n, REPLICAS, stream()).coords
        b = sample_lpp(n, REPLICAS, stream(), dual=False).V
        reports += _ks_coords(a, b, f"growth-vs-lpp n={n}")
    v = sample_lpp(8, REPLICAS, stream(), dual=False).V
    w = sample_lpp(8, REPLICAS, stream()).W
    reports += _ks_coords(v, w, "V-vs-W n=8")
    reports.append(ks_two_sample(v.max(1), w.max(1), "V-vs-W n=8 max"))
    reports.append(ks_two_sample(v.sum(1), w.sum(1), "V-vs-W n=8 sum"))
    reports.append(ks_two_sample(v[:, 1] + 2 * v[:, 4], w[:, 1] + 2 * w[:, 4], "V-vs-W n=8 V2+2V5"))
    for n in (6, 10):
        u = sample_osp(n, REPLICAS, stream()).coords.max(1)
        vm = sample_lpp(n, REPLICAS, stream(), dual=False).V.max(1)
        reports.append(ks_two_sample(u, vm, f"Umax-vs-Vmax n={n}"))
    reports.append(checks.gamma_exp_joint_test(4, stream(), REPLICAS))
    elapsed = time.perf_counter() - start
    merged = merge_reports("monte-carlo", reports, bonferroni=True)
    failed = [r.name for r in reports if not r.passed]
    ok = merged.passed and elapsed < 600
    record_criterion(6, ok, f"{len(reports)} tests at alpha={ALPHA}, failed={failed}, "
                            f"bonferroni min p={merged.statistics.get('min_p_bonferroni', float('nan')):.3g}, "
                            f"{elapsed:.0f}s")
    assert ok, [r.line() for r in reports if not r.passed]


def test_criterion_7_densities(record_criterion):
    mass = pU4_total_mass()
    rng = np.random.default_rng(SEED)
    points = rng.uniform(0.0, 3.0, size=(20, 3))
    path_err = max(abs(density_from_paths(4, u, model) - pU4_closed_form(*u)) for u in points for model in (OSP, GROWTH))
    rec_err = max(abs(density_V_recursive(4, u) - pU4_closed_form(*u)) for u in points)
    pts3 = rng.uniform(0.0, 4.0, size=(50, 2))
    n3_err = max(abs(density_V_recursive(3, v) - pV3_closed_form(*v)) for v in pts3)
    ok = abs(mass - 1) < 1e-6 and path_err < 1e-9 and rec_err < 1e-4 and n3_err < 1e-8
    record_criterion(7, ok, f"|mass-1|={abs(mass - 1):.2e} path_err={path_err:.2e} "
                            f"recursion_n4_err={rec_err:.2e} recursion_n3_err={n3_err:.2e}")
    assert ok


def test_criterion_8_loe_cdf(record_criterion):
    rows = []
    ok = True
    for i, t in enumerate((0.5, 1.0, 2.0)):
        est, se = loe_cdf(2, t, REPLICAS, RngStream(SEED, 100 + i))
        z = (est - (1 - math.exp(-t))) / se
        ok &= abs(z) <= 3
        rows.append(f"n=2 t={t} z={z:+.2f}")
    umax = sample_osp(4, REPLICAS, RngStream(SEED, 110)).coords.max(1)
    for i, t in enumerate((2.0, 4.0, 6.0)):
        est, se = loe_cdf(4, t, 10 * REPLICAS, RngStream(SEED, 120 + i))
        emp = float((umax <= t).mean())
        se_emp = math.sqrt(max(emp * (1 - emp), 1e-12) / len(umax))
        z = (est - emp) / math.hypot(se, se_emp)
        ok &= abs(z) <= 3
        rows.append(f"n=4 t={t} z={z:+.2f}")
    record_criterion(8, bool(ok), ", ".join(rows))
    assert ok


def test_criterion_9_asymptotic_stability(record_criterion):
    def scaled(n, index):
        vmax = sample_lpp(n, 10_000, RngStream(SEED, index), dual=False).V.max(1)
        return (vmax - 2 * n) / (2 * n) ** (1 / 3)

    a, b = scaled(20, 200), scaled(50, 201)
    report = ks_two_sample(a, b, "scaled Vmax n=20 vs n=50")
    record_criterion(9, report.passed, f"{report.line()} means {a.mean():.3f} vs {b.mean():.3f}")
    assert report.passed, report.line()
