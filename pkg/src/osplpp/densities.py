"""Joint densities of the last-swap and corner-addition vectors.

``density_from_paths`` sums, over all paths of the embedded jump chain, the
path probability times the conditional density: on the chamber fixed by the
path's ordering, the gaps between consecutive order statistics are
independent hypoexponential variables whose rates are the out-degrees met
along the corresponding block of jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np
from scipy import integrate, special

from .genfun import pf_decompose_block
from .shapes import PathParams, inverse_permutation, iter_syt_params
from .sortnet import iter_network_params

OSP = "osp"
GROWTH = "growth"


class ToleranceNotReached(RuntimeError):
    pass


@dataclass(frozen=True)
class HypoexpSpec:
    rates: tuple

    def __post_init__(self):
        if not self.rates or any(r <= 0 for r in self.rates):
            raise ValueError("rates must be positive")

    def blocks(self) -> tuple:
        counts: dict = {}
        for r in self.rates:
            counts[r] = counts.get(r, 0) + 1
        return tuple(sorted(counts.items()))


@lru_cache(maxsize=None)
def _hypoexp_terms(block: tuple) -> tuple:
    # Laplace transform prod rho/(s+rho) -> partial fractions -> sum of Erlang-like kernels
    scale = math.prod(r ** m for r, m in block)
    return tuple((float(d), e, float(c) * scale / math.factorial(e - 1))
                 for (d, e), c in pf_decompose_block(block).items())


def hypoexp_density(spec, x):
    """Density of a sum of independent exponentials with the given rates."""
    if not isinstance(spec, HypoexpSpec):
        spec = HypoexpSpec(tuple(spec))
    x = np.asarray(x, dtype=float)
    xp = np.maximum(x, 0.0)
    out = np.zeros_like(xp)
    for d, e, c in _hypoexp_terms(spec.blocks()):
        out = out + c * xp ** (e - 1) * np.exp(-d * xp)
    out = np.where(x < 0, 0.0, out)
    return float(out) if out.ndim == 0 else out


def hypoexp_cdf(spec, x):
    """CDF matching ``hypoexp_density``; each Erlang-like term integrates to a regularized gamma."""
    if not isinstance(spec, HypoexpSpec):
        spec = HypoexpSpec(tuple(spec))
    xp = np.maximum(np.asarray(x, dtype=float), 0.0)
    out = np.zeros_like(xp)
    for d, e, c in _hypoexp_terms(spec.blocks()):
        out = out + c * math.factorial(e - 1) / d ** e * special.gammainc(e, d * xp)
    return float(out) if out.ndim == 0 else out


def chamber(u: Sequence[float]) -> tuple[int, ...]:
    """The permutation gamma with u_{gamma^-1(1)} <= ... ; ties keep the smaller index first."""
    order = sorted(range(len(u)), key=lambda j: (u[j], j))
    gamma = [0] * len(u)
    for rank, j in enumerate(order, 1):
        gamma[j] = rank
    return tuple(gamma)


def _path_blocks(params: PathParams) -> tuple[tuple, ...]:
    return tuple(tuple(sorted(blk)) for blk in params.factor.blocks)


@lru_cache(maxsize=None)
def _path_table(n: int, model: str) -> dict:
    """perm -> list of (path probability, per-gap rate blocks)."""
    source = iter_network_params if model == OSP else iter_syt_params
    table: dict = {}
    for _, params in source(n):
        table.setdefault(params.perm, []).append((float(params.path_probability()), params.factor.blocks))
    return table


def density_from_paths(n: int, u: Sequence[float], model: str = OSP) -> float:
    if not 2 <= n <= 4:
        raise ValueError("path-sum densities are limited to n <= 4")
    if model not in (OSP, GROWTH):
        raise ValueError(model)
    u = [float(v) for v in u]
    if len(u) != n - 1 or min(u) < 0:
        return 0.0
    gamma = chamber(u)
    inv = inverse_permutation(gamma)
    ordered = [0.0] + [u[j - 1] for j in inv]
    gaps = [b - a for a, b in zip(ordered, ordered[1:])]
    total = 0.0
    for prob, blocks in _path_table(n, model).get(gamma, ()):
        term = prob
        for gap, block in zip(gaps, blocks):
            term *= hypoexp_density(HypoexpSpec(tuple(d for d, m in block for _ in range(m))), gap)
        total += term
    return total


def pU4_closed_form(u1: float, u2: float, u3: float) -> float:
    """Piecewise closed form of the n = 4 last-swap density, one branch per chamber."""
    if min(u1, u2, u3) < 0:
        return 0.0
    e = math.exp
    if u1 <= u2 <= u3:
        inner = e(u1 + u2) - (u1 - 1) * e(u1) - (u1 + 1) * e(u2) - 1
    elif u2 <= u1 <= u3 or u2 <= u3 <= u1:
        inner = e(2 * u2) - 2 * u2 * e(u2) - 1
    elif u1 <= u3 <= u2:
        inner = e(u1 + u3) - (u1 - 1) * e(u1) - (u1 + 1) * e(u3) - 1
    elif u3 <= u1 <= u2:
        inner = e(u1 + u3) - (u3 - 1) * e(u3) - (u3 + 1) * e(u1) - 1
    else:
        inner = e(u2 + u3) - (u3 - 1) * e(u3) - (u3 + 1) * e(u2) - 1
    return e(-(u1 + u2 + u3)) * inner


def pU4_closed_form_array(u: np.ndarray) -> np.ndarray:
    """Vectorised ``pU4_closed_form`` over the last axis of ``u`` (shape (..., 3))."""
    u = np.asarray(u, dtype=float)
    u1, u2, u3 = u[..., 0], u[..., 1], u[..., 2]

    def ordered(a, b):
        # e^{a+b} - (a-1)e^a - (a+1)e^b - 1 with a the smaller outer coordinate
        return np.exp(a + b) - (a - 1) * np.exp(a) - (a + 1) * np.exp(b) - 1

    middle_low = np.exp(2 * u2) - 2 * u2 * np.exp(u2) - 1
    inner = np.select(
        [(u1 <= u2) & (u2 <= u3), (u2 <= u1) & (u2 <= u3), (u1 <= u3) & (u3 <= u2), (u3 <= u1) & (u1 <= u2)],
        [ordered(u1, u2), middle_low, ordered(u1, u3), ordered(u3, u1)],
        default=ordered(u3, u2),
    )
    out = np.exp(-(u1 + u2 + u3)) * inner
    return np.where((u1 < 0) | (u2 < 0) | (u3 < 0), 0.0, out)


def pU4_bin_probabilities(edges: Sequence[float], nodes: int = 12) -> np.ndarray:
    """Probability of every box of the product grid ``edges``^3 (a finite last edge truncates the tail).

    The density is smooth inside each ordering chamber, so every box is split
    by the orderings of its coordinates and each piece is integrated with an
    iterated Gauss-Legendre rule whose inner limits follow the chamber walls.
    """
    from itertools import permutations

    edges = np.asarray(edges, dtype=float)
    x, w = np.polynomial.legendre.leggauss(nodes)
    x, w = (x + 1) / 2, w / 2  # rule on [0, 1]
    bins = len(edges) - 1
    out = np.zeros((bins,) * 3)
    for box in product(range(bins), repeat=3):
        total = 0.0
        for a, b, c in permutations(range(3)):
            ia, ib, ic = box[a], box[b], box[c]
            if not ia <= ib <= ic:
                continue
            ua = edges[ia] + (edges[ia + 1] - edges[ia]) * x
            wa = (edges[ia + 1] - edges[ia]) * w
            lo_b = ua if ib == ia else np.full_like(ua, edges[ib])
            ub = lo_b[:, None] + (edges[ib + 1] - lo_b)[:, None] * x[None, :]
            wb = wa[:, None] * (edges[ib + 1] - lo_b)[:, None] * w[None, :]
            lo_c = ub if ic == ib else np.full_like(ub, edges[ic])
            uc = lo_c[..., None] + (edges[ic + 1] - lo_c)[..., None] * x
            wc = wb[..., None] * (edges[ic + 1] - lo_c)[..., None] * w
            pts = np.empty(uc.shape + (3,))
            pts[..., a] = ua[:, None, None]
            pts[..., b] = ub[:, :, None]
            pts[..., c] = uc
            total += float((pU4_closed_form_array(pts) * wc).sum())
        out[box] = total
    return out


def _pV3(v1: float, v2: float) -> float:
    if v1 < 0 or v2 < 0:
        return 0.0
    return math.exp(-v1 - v2) * math.expm1(min(v1, v2))


def pV3_closed_form(v1: float, v2: float) -> float:
    return _pV3(v1, v2)


def pV2(v: float) -> float:
    return math.exp(-v) if v >= 0 else 0.0


def density_V_recursive(n: int, v: Sequence[float], tol: float = 1e-10) -> float:
    """Joint density of the corner-addition vector from the LPP recursion, by nested quadrature.

    p_n(v) = int over y_k in [0, min(v_k, v_{k+1})] of
             exp(sum_k [max(y_{k-1}, y_k) - v_k]) p_{n-1}(y),  y_0 = y_{n-1} = 0.
    """
    v = [float(a) for a in v]
    if len(v) != n - 1:
        raise ValueError("need n-1 coordinates")
    if min(v) < 0:
        return 0.0
    if n == 2:
        return pV2(v[0])
    if n == 3:
        return _integrate_1d(lambda y: math.exp(2 * y - v[0] - v[1]) * pV2(y), 0.0, min(v), tol)
    if n == 4:
        v1, v2, v3 = v

        def inner(y1):
            def f(y2):
                return math.exp(y1 - v1 + max(y1, y2) - v2 + y2 - v3) * _pV3(y1, y2)
            hi = min(v2, v3)
            if 0 < y1 < hi:
                return _integrate_1d(f, 0.0, y1, tol) + _integrate_1d(f, y1, hi, tol)
            return _integrate_1d(f, 0.0, hi, tol)

        return _integrate_1d(inner, 0.0, min(v1, v2), tol)
    raise ValueError("the recursion is implemented for n <= 4 only")


def _integrate_1d(f, a: float, b: float, tol: float) -> float:
    if b <= a:
        return 0.0
    val, err, *rest = integrate.quad(f, a, b, epsabs=tol, epsrel=0, limit=200, full_output=1)
    if err > max(tol, 1e-15) * 10 and len(rest) > 1:
        raise ToleranceNotReached(f"quad error {err:.3g} exceeds {tol:.3g}: {rest[1]}")
    return val


def _chamber_integral(branch, order: tuple[int, int, int], tail: float) -> float:
    # integrate over u_a <= u_b <= u_c with u in [0, tail]
    a, b, c = order

    def f(uc, ub, ua):
        u = [0.0, 0.0, 0.0]
        u[a], u[b], u[c] = ua, ub, uc
        return branch(*u)

    val, _ = integrate.tplquad(f, 0, tail, lambda ua: ua, lambda ua: tail,
                               lambda ua, ub: ub, lambda ua, ub: tail, epsabs=1e-11, epsrel=1e-11)
    return val


def pU4_total_mass(tail: float = 40.0) -> float:
    """Integral of the closed form over the orthant, chamber by chamber (tail mass below 1e-10)."""
    from itertools import permutations

    return sum(_chamber_integral(pU4_closed_form, order, tail) for order in permutations(range(3)))


def loe_cdf(n: int, t: float, samples: int, rng) -> tuple[float, float]:
    """Estimate P(U_max <= t) = E[w 1{max y <= t}] / E[w], w = prod_{i<j} |y_i - y_j|, y iid Exp(1).

    Returns (estimate, delta-method standard error).
    """
    from .processes import as_generator, exponential

    if n < 2:
        raise ValueError("n must be >= 2")
    g = as_generator(rng)
    y = exponential(g, np.ones((samples, n - 1)))
    w = np.ones(samples)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            w *= np.abs(y[:, i] - y[:, j])
    a = w * (y.max(axis=1) <= t)
    ma, mw = a.mean(), w.mean()
    ratio = ma / mw
    # var of (a - ratio * w) / mean(w)
    resid = a - ratio * w
    se = resid.std(ddof=1) / (mw * np.sqrt(samples))
    return float(ratio), float(se)
