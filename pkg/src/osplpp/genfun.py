"""Exact generating functions F_n (tableaux) and G_n (sorting networks).

Each generating factor is a product of univariate terms 1/(x_k + d)^m, so it
expands into the finite basis of products prod_k 1/(x_k + d_k)^(e_k).  A
``PartialFractionForm`` is a dict from basis keys ``((d_1, e_1), ...,
(d_{n-1}, e_{n-1}))`` to nonzero Fractions; since the basis is linearly
independent, two functions are equal iff their forms are equal dicts.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Iterable, Mapping, Optional, Sequence

from .report import TestReport
from .shapes import GeneratingFactor, iter_syt_params
from .sortnet import iter_network_params

PartialFractionForm = dict  # basis key -> Fraction
GroupVector = dict  # permutation -> PartialFractionForm

CANONICAL = "canonical"
EVALUATION = "evaluation"


def pf_decompose_block(block: Mapping | Iterable) -> dict[tuple, object]:
    """Partial fractions of prod_d 1/(x + d)^(m_d).

    Returns {(d, e): c} with prod_d (x + d)^(-m_d) = sum c / (x + d)^e.  The
    coefficients at pole d are read off the Taylor expansion of the cofactor
    around x = -d.  Integer shifts give Fractions; float shifts give floats.
    """
    items = list(block.items()) if isinstance(block, Mapping) else list(block)
    shifts = [d for d, _ in items]
    if len(set(shifts)) != len(shifts):
        raise ValueError(f"repeated shift in {items}")
    exact = all(isinstance(d, int) for d in shifts)
    one = Fraction(1) if exact else 1.0
    out = {}
    for d, m in items:
        series = [one] + [one * 0] * (m - 1)
        for d2, m2 in items:
            if d2 == d:
                continue
            a = (Fraction(d2) if exact else float(d2)) - d
            term = [comb(m2 + j - 1, j) * (-1) ** j / a ** (m2 + j) for j in range(m)]
            series = [sum(series[i] * term[j - i] for i in range(j + 1)) for j in range(m)]
        for e in range(1, m + 1):
            c = series[m - e]
            if c != 0:
                out[d, e] = c
    return out


@lru_cache(maxsize=None)
def _block_pf(block: tuple) -> tuple:
    return tuple(pf_decompose_block(block).items())


def factor_to_canonical(f: GeneratingFactor, scale=1) -> PartialFractionForm:
    parts = [_block_pf(block) for block in f.blocks]
    out: PartialFractionForm = {}
    for combo in product(*parts):
        key = tuple(k for k, _ in combo)
        out[key] = prod((c for _, c in combo), start=Fraction(scale))
    return out


def evaluate_form(form: PartialFractionForm, xs: Sequence) -> Fraction:
    total = Fraction(0)
    for key, c in form.items():
        term = Fraction(c)
        for x, (d, e) in zip(xs, key):
            term /= Fraction(x + d) ** e
        total += term
    return total


def _add_into(acc: dict, form: Mapping, scale=1):
    for key, c in form.items():
        v = acc.get(key, 0) + scale * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def factor_census(n: int, side: str, prefix: Sequence[int] = ()) -> Counter:
    """Counter of (permutation, factor blocks) over SYT(delta_n) ('F') or SN_n ('G')."""
    if not 2 <= n <= 7:
        raise ValueError("n must be in 2..7")
    source = iter_syt_params if side == "F" else iter_network_params
    census: Counter = Counter()
    for _, params in source(n, prefix):
        census[params.perm, params.factor.blocks] += 1
    return census


def _accumulate(census: Counter) -> GroupVector:
    vec: GroupVector = defaultdict(dict)
    for (perm, blocks), count in census.items():
        _add_into(vec[perm], factor_to_canonical(GeneratingFactor(blocks)), count)
    return {perm: form for perm, form in vec.items() if form}


def accumulate_F(n: int) -> GroupVector:
    return _accumulate(factor_census(n, "F"))


def accumulate_G(n: int) -> GroupVector:
    return _accumulate(factor_census(n, "G"))


# -- evaluation at integer points --------------------------------------------

def _evaluate_census(census: Counter, xs: Sequence[int]) -> dict[tuple, Fraction]:
    """Exact value of every component at the integer point ``xs``."""
    by_perm: dict[tuple, list] = defaultdict(list)
    for (perm, blocks), count in census.items():
        by_perm[perm].append((blocks, count))
    values = {}
    for perm, terms in by_perm.items():
        top: dict[tuple[int, int], int] = {}
        for blocks, _ in terms:
            for k, block in enumerate(blocks):
                for d, m in block:
                    if m > top.get((k, d), 0):
                        top[k, d] = m
        common = prod((xs[k] + d) ** m for (k, d), m in top.items())
        num = 0
        for blocks, count in terms:
            den = prod((xs[k] + d) ** m for k, block in enumerate(blocks) for d, m in block)
            num += count * (common // den)
        values[perm] = Fraction(num, common)
    return values


def random_points(n: int, count: int, seed: int = 0, low: int = 10 ** 6, high: int = 10 ** 9) -> list[tuple[int, ...]]:
    # positive coordinates keep every x_k + d away from the poles at -d
    rng = random.Random(seed)
    return [tuple(rng.randint(low, high) for _ in range(n - 1)) for _ in range(count)]


def verify_identity(n: int, method: str = CANONICAL, points: int = 20, seed: int = 0,
                    census: Optional[tuple[Counter, Counter]] = None) -> TestReport:
    """Check F_n = G_n componentwise, exactly.

    ``canonical`` compares partial-fraction forms (a proof for this n).
    ``evaluation`` compares exact rational values at ``points`` random integer
    points with coordinates in [1e6, 1e9] (a probabilistic certificate: a
    nonzero difference of bounded degree vanishes at a random point with tiny
    probability).
    """
    if not 2 <= n <= 6:
        raise ValueError("n must be in 2..6")
    cf, cg = census or (factor_census(n, "F"), factor_census(n, "G"))
    stats = {"terms_F": sum(cf.values()), "terms_G": sum(cg.values()),
             "distinct_F": len(cf), "distinct_G": len(cg)}
    mismatched: list = []
    if method == CANONICAL:
        F, G = _accumulate(cf), _accumulate(cg)
        perms = set(F) | set(G)
        for perm in sorted(perms):
            if F.get(perm, {}) != G.get(perm, {}):
                mismatched.append(perm)
        stats["components"] = len(perms)
        stats["basis_terms"] = sum(len(f) for f in F.values())
    elif method == EVALUATION:
        pts = random_points(n, points, seed)
        for xs in pts:
            fv, gv = _evaluate_census(cf, xs), _evaluate_census(cg, xs)
            for perm in set(fv) | set(gv):
                if fv.get(perm, 0) != gv.get(perm, 0):
                    mismatched.append((perm, xs))
        stats["points"] = len(pts)
        stats["components"] = len(set(p for p, _ in cf) | set(p for p, _ in cg))
    else:
        raise ValueError(f"unknown method {method!r}")
    stats["mismatches"] = len(mismatched)
    passed = not mismatched
    return TestReport(name=f"identity n={n} ({method})", statistics=stats, thresholds={"mismatches": 0},
                      passed=passed, seeds={"points": seed} if method == EVALUATION else {},
                      details={"mismatched": mismatched[:20]}, verdict="EQUAL" if passed else "NOT-EQUAL")


def eg_limit_check(n: int) -> TestReport:
    """Per-permutation term counts agree: the x -> infinity limit of x^N (F - G)."""
    cf, cg = factor_census(n, "F"), factor_census(n, "G")
    count_f, count_g = Counter(), Counter()
    for (perm, _), c in cf.items():
        count_f[perm] += c
    for (perm, _), c in cg.items():
        count_g[perm] += c
    passed = count_f == count_g
    return TestReport(name=f"eg-limit n={n}", statistics={"total_F": sum(count_f.values()),
                                                          "total_G": sum(count_g.values()),
                                                          "components": len(count_f)},
                      passed=passed, details={"counts": {",".join(map(str, p)): c for p, c in sorted(count_f.items())}})


# -- recombination over a common denominator ---------------------------------

def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = defaultdict(Fraction)
    for ka, va in a.items():
        for kb, vb in b.items():
            out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
    return {k: v for k, v in out.items() if v}


def _linear_power(nvars: int, k: int, d: int, power: int) -> dict:
    """(x_k + d)^power as a monomial dict."""
    out = {}
    for j in range(power + 1):
        exps = [0] * nvars
        exps[k] = j
        out[tuple(exps)] = Fraction(comb(power, j) * d ** (power - j))
    return out


def recombine(form: PartialFractionForm) -> tuple[dict, dict[tuple[int, int], int]]:
    """Write a form as numerator / prod (x_k + d)^m with the least common denominator.

    Returns (numerator as {exponent tuple: coefficient}, {(k, d): m}) with
    1-based variable index k.  Common factors are then cancelled one linear
    factor at a time.
    """
    if not form:
        return {}, {}
    nvars = len(next(iter(form)))
    den: dict[tuple[int, int], int] = {}
    for key in form:
        for k, (d, e) in enumerate(key):
            if d is not None and e > den.get((k, d), 0):
                den[k, d] = e
    num: dict = defaultdict(Fraction)
    for key, c in form.items():
        term = {(0,) * nvars: Fraction(c)}
        for (k, d), m in den.items():
            own = key[k][1] if key[k][0] == d else 0
            if m - own:
                term = _poly_mul(term, _linear_power(nvars, k, d, m - own))
        for mono, v in term.items():
            num[mono] += v
    num = {k: v for k, v in num.items() if v}
    # cancel (x_k + d) while it divides the numerator: x_k = -d makes it vanish
    for (k, d) in sorted(den):
        while den[k, d] and _vanishes(num, k, -d):
            num = _divide_linear(num, k, d)
            den[k, d] -= 1
    return num, {(k + 1, d): m for (k, d), m in sorted(den.items()) if m}


def _vanishes(num: dict, k: int, value: int) -> bool:
    rest: dict = defaultdict(Fraction)
    for mono, c in num.items():
        other = mono[:k] + (0,) + mono[k + 1:]
        rest[other] += c * Fraction(value) ** mono[k]
    return all(v == 0 for v in rest.values())


def _divide_linear(num: dict, k: int, d: int) -> dict:
    """Exact quotient of num by (x_k + d), by synthetic division in x_k."""
    groups: dict = defaultdict(dict)
    for mono, c in num.items():
        groups[mono[:k] + (0,) + mono[k + 1:]][mono[k]] = c
    out = {}
    for other, coeffs in groups.items():
        deg = max(coeffs)
        carry = Fraction(0)
        quotient = {}
        for p in range(deg, 0, -1):
            carry = coeffs.get(p, 0) + carry
            quotient[p - 1] = carry
            carry = -d * carry
        for p, c in quotient.items():
            if c:
                out[other[:k] + (p,) + other[k + 1:]] = c
    return out


def format_rational(num: dict, den: Mapping[tuple[int, int], int]) -> str:
    def mono(m):
        parts = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        return "*".join(parts)

    terms = []
    for m, c in sorted(num.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        body = mono(m)
        coef = str(c) if (c != 1 or not body) else ""
        terms.append(f"{coef}{'*' if coef and body else ''}{body}")
    numerator = " + ".join(terms).replace("+ -", "- ") or "0"
    denominator = "*".join(f"(x{k}+{d})" + (f"^{m}" if m > 1 else "") for (k, d), m in sorted(den.items()))
    return f"({numerator}) / ({denominator})"


def format_form(form: PartialFractionForm) -> list[str]:
    """Normalised text: one line per basis key, ``d:e;d:e;... num/den``, sorted."""
    lines = []
    for key in sorted(form):
        c = Fraction(form[key])
        lines.append(";".join(f"{d}:{e}" for d, e in key) + f" {c.numerator}/{c.denominator}")
    return lines
