"""Composite verification suites shared by the test-suite and the command line."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .densities import hypoexp_cdf
from .edelman_greene import eg_inverse_search, eg_map, eg_map_literal
from .processes import RngStream, as_generator, exponential, sample_corner_growth, sample_osp
from .report import TestReport
from .rsk import (BURGE, RSK, border_distribution_exact, burge, classical_rsk_rectangle,
                  greene_max, greene_max_bruteforce, rsk)
from .shapes import (Tableau, YoungDiagram, border_strip, enumerate_syt, omega_weights,
                     rectangle_sum, staircase, tableau_params)
from .sortnet import SortingNetwork, enumerate_sorting_networks, network_params
from .stats import ALPHA, chi_square, ks_one_sample, ks_two_sample, sign_test

EXAMPLE_NETWORK = (5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3)


# -- Edelman-Greene ------------------------------------------------------------

def eg_bijection_check(n: int, literal: bool = True) -> TestReport:
    """Exhaustive: EG is injective on SYT(delta_n), lands on every sorting network, and
    (optionally) the fast map agrees with the literal Schuetzenberger iteration."""
    if not 2 <= n <= 5:
        raise ValueError("exhaustive bijection check is limited to n <= 5")
    images: dict[tuple, tuple] = {}
    mismatches = []
    for t in enumerate_syt(staircase(n)):
        s = eg_map(t)
        if literal and eg_map_literal(t) != s:
            mismatches.append(t.to_text())
        images.setdefault(s.swaps, t.flat())
    networks = {s.swaps for s in enumerate_sorting_networks(n)}
    count = sum(1 for _ in enumerate_syt(staircase(n)))
    injective = len(images) == count
    onto = set(images) == networks
    return TestReport(
        name=f"eg-bijection n={n}",
        statistics={"tableaux": count, "distinct_images": len(images), "networks": len(networks),
                    "literal_mismatches": len(mismatches)},
        thresholds={"literal_mismatches": 0},
        passed=injective and onto and not mismatches,
        details={"failing_cases": mismatches[:20]},
    )


def example_network_check() -> TestReport:
    s = SortingNetwork(EXAMPLE_NETWORK, 6)
    t = eg_inverse_search(s)
    sp, tp = network_params(s), tableau_params(t)
    ok = eg_map(t) == s and eg_map_literal(t) == s and sp.last == tp.cor == (10, 13, 15, 14, 11) and sp.pi == tp.sigma
    return TestReport(name="eg-example-network", statistics={"last": sp.last, "cor": tp.cor, "pi": sp.pi, "sigma": tp.sigma},
                      passed=ok, details={"tableau": t.to_text()})


# -- RSK / Burge ---------------------------------------------------------------

def shapes_within(rows: int, cols: int) -> list[YoungDiagram]:
    out = []

    def rec(prefix, bound):
        if prefix:
            out.append(YoungDiagram(tuple(prefix)))
        if len(prefix) == rows:
            return
        for r in range(1, bound + 1):
            rec(prefix + [r], r)

    rec([], cols)
    return out


def _fill(shape: YoungDiagram, values: Sequence[int]) -> Tableau:
    it = iter(values)
    return Tableau(tuple(tuple(next(it) for _ in range(r)) for r in shape.rows))


def _interlaces(t: Tableau) -> bool:
    return t.interlaces()


def _diagonal_total(t: Tableau, m: int, n: int) -> int:
    return sum(t[m - d, n - d] for d in range(min(m, n)))


def rsk_burge_exhaustive(box: int = 3, cap: int = 2, shifts: Iterable[int] = (1, 2),
                         bruteforce: bool = True) -> TestReport:
    """All integer tableaux with entries in 0..cap on every shape inside a box x box square."""
    failures: list[dict] = []
    counts = Counter()

    def fail(kind, x):
        counts[kind] += 1
        if len(failures) < 20:
            failures.append({"check": kind, "input": x.to_text()})

    for shape in shapes_within(box, box):
        strip = border_strip(shape)
        omega = omega_weights(shape)
        rect = len(set(shape.rows)) == 1
        seen = {RSK: set(), BURGE: set()}
        for values in product(range(cap + 1), repeat=shape.size):
            x = _fill(shape, values)
            counts["inputs"] += 1
            outs = {RSK: rsk(x), BURGE: burge(x)}
            total = sum(values)
            for orient, out in outs.items():
                if not _interlaces(out):
                    fail(f"{orient}-interlace", x)
                if sum(omega[c] * v for c, v in out.items()) != total:
                    fail(f"{orient}-omega", x)
                if out.rows in seen[orient]:
                    fail(f"{orient}-injective", x)
                seen[orient].add(out.rows)
                for m, n in strip:
                    if _diagonal_total(out, m, n) != rectangle_sum(x, m, n):
                        fail(f"{orient}-rectangle", x)
                    if bruteforce:
                        for k in range(1, min(m, n) + 1):
                            if greene_max(x, m, n, k, orient) != greene_max_bruteforce(x, m, n, k, orient):
                                fail(f"{orient}-bruteforce", x)
                for k in shifts:
                    shifted = Tableau(tuple(tuple(v + k for v in row) for row in x.rows))
                    f = rsk if orient == RSK else burge
                    expect = Tableau.from_mapping(shape, {(i, j): v + (i + j - 1) * k for (i, j), v in out.items()})
                    if f(shifted) != expect:
                        fail(f"{orient}-shift", x)
            if rect and classical_rsk_rectangle(x)[2] != outs[RSK]:
                fail("classical-rsk", x)
    inputs = counts.pop("inputs")
    return TestReport(
        name=f"rsk-burge exhaustive box={box} cap={cap}",
        statistics={"inputs": inputs, "failures": sum(counts.values()), **{k: v for k, v in counts.items()}},
        thresholds={"failures": 0},
        passed=not counts,
        sample_sizes={"inputs": inputs},
        details={"failing_cases": failures},
    )


# -- exact border-strip laws ------------------------------------------------

def border_law_check(shape: YoungDiagram, p=Fraction(1, 2), cap: int = 4) -> TestReport:
    lhs = border_distribution_exact(shape, Fraction(p), cap, "L")
    rhs = border_distribution_exact(shape, Fraction(p), cap, "Lstar")
    diff = [v for v in set(lhs) | set(rhs) if lhs.get(v, 0) != rhs.get(v, 0)]
    mass = sum(lhs.values(), Fraction(0))
    return TestReport(
        name=f"border-law shape={shape} p={p} cap={cap}",
        statistics={"vectors": len(set(lhs) | set(rhs)), "mismatches": len(diff), "mass_L": float(mass)},
        thresholds={"mismatches": 0},
        passed=not diff,
        details={"border_strip": [tuple(c) for c in border_strip(shape)],
                 "records": [{"vector": v, "L": lhs.get(v, Fraction(0)), "Lstar": rhs.get(v, Fraction(0))}
                             for v in sorted(set(lhs) | set(rhs))][:50],
                 "failing_cases": sorted(diff)[:20]},
    )


def border_law_bernoulli_check(shape: YoungDiagram = YoungDiagram((2, 2)), vector=(2, 3, 1)) -> TestReport:
    """Uniform {0,1} weights break the equality: the expected outcome is a strict inequality."""
    lhs = border_distribution_exact(shape, Fraction(1, 2), max(vector) + 1, "L", weights="bernoulli")
    rhs = border_distribution_exact(shape, Fraction(1, 2), max(vector) + 1, "Lstar", weights="bernoulli")
    pl, pr = lhs.get(tuple(vector), Fraction(0)), rhs.get(tuple(vector), Fraction(0))
    ok = pl == Fraction(1, 16) and pr == 0
    return TestReport(name=f"border-law-bernoulli shape={shape} v={tuple(vector)}",
                      statistics={"P_L": pl, "P_Lstar": pr}, thresholds={"P_L": Fraction(1, 16), "P_Lstar": 0},
                      passed=ok, verdict="EXPECTED-INEQUAL" if ok else "FAIL")


# -- Monte Carlo ---------------------------------------------------------------

def gamma_exp_joint_test(n: int, rng, samples: int, alpha: float = ALPHA) -> TestReport:
    """(U(1), U(n-1)) against (G + X, G' + X) with G, G' ~ Gamma(n-2) and X ~ Exp(1)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    stream = rng if isinstance(rng, RngStream) else RngStream(int(rng))
    u = sample_osp(n, samples, stream.spawn(stream.index * 2 + 0)).coords
    g = as_generator(stream.spawn(stream.index * 2 + 1))
    gam = g.gamma(n - 2, 1.0, size=(samples, 2))
    x = exponential(g, np.ones(samples))
    a, b = gam[:, 0] + x, gam[:, 1] + x
    u1, u2 = u[:, 0], u[:, -1]
    subs = [
        ks_two_sample(u1, a, "U(1)", alpha),
        ks_two_sample(u2, b, f"U({n - 1})", alpha),
        ks_two_sample(np.maximum(u1, u2), np.maximum(a, b), "max", alpha),
        ks_two_sample(u1 - u2, a - b, "difference", alpha),
        sign_test(u1 - u2, "sign", alpha),
    ]
    return TestReport(
        name=f"gamma-exp joint n={n}",
        statistics={r.name + "_p": r.statistics["p"] for r in subs},
        thresholds={"alpha": alpha},
        passed=all(subs),
        sample_sizes={"samples": samples},
        seeds={"seed": stream.seed, "index": stream.index},
        details={"reports": [r.to_record() for r in subs]},
    )


def path_frequency_test(n: int, model: str, replicas: int, rng, alpha: float = ALPHA) -> TestReport:
    """Chi-square of observed path counts against the exact product of inverse out-degrees."""
    if model == "osp":
        batch = sample_osp(n, replicas, rng)
        exact = {s.swaps: network_params(s).path_probability() for s in enumerate_sorting_networks(n)}
    else:
        batch = sample_corner_growth(n, replicas, rng)
        exact = {t.row_word(): tableau_params(t).path_probability() for t in enumerate_syt(staircase(n))}
    observed = Counter(tuple(int(v) for v in row) for row in batch.paths)
    keys = sorted(exact)
    report = chi_square([observed.get(k, 0) for k in keys], [float(exact[k]) for k in keys],
                        f"path-frequency {model} n={n}", alpha)
    report.details["unknown_paths"] = sum(v for k, v in observed.items() if k not in exact)
    report.passed = report.passed and report.details["unknown_paths"] == 0
    report.verdict = "PASS" if report.passed else "FAIL"
    return report


def sojourn_test(n: int, replicas: int, rng, alpha: float = ALPHA) -> TestReport:
    """Condition on the most frequent recorded path and test the first gap against its hypoexponential law."""
    batch = sample_osp(n, replicas, rng)
    words = [tuple(int(v) for v in row) for row in batch.paths]
    word, _ = Counter(words).most_common(1)[0]
    params = network_params(SortingNetwork(word, n))
    mask = np.array([w == word for w in words])
    ordered = np.sort(batch.coords[mask], axis=1)
    gaps = np.diff(np.concatenate([np.zeros((len(ordered), 1)), ordered], axis=1), axis=1)
    reports = []
    for k, block in enumerate(params.factor.blocks):
        rates = tuple(d for d, m in block for _ in range(m))
        reports.append(ks_one_sample(gaps[:, k], lambda t, r=rates: hypoexp_cdf(r, t), f"gap{k + 1}", alpha))
    return TestReport(name=f"sojourn n={n}", statistics={r.name + "_p": r.statistics["p"] for r in reports},
                      thresholds={"alpha": alpha}, passed=all(reports),
                      sample_sizes={"conditioned": int(mask.sum())}, details={"path": word})
