"""LPP tableaux, Greene maxima, and the RSK / Burge maps on Young-diagram-shaped arrays.

RSK and Burge are defined through their non-intersecting-path maxima: for a
border box (m, n) of the shape, the k-th partial sum along the diagonal ending
at (m, n) equals the best total weight of k disjoint paths.  The maxima come
from a row-transfer dynamic program; ``greene_max_bruteforce`` is an
independent enumeration used to cross-check it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .shapes import Cell, Tableau, YoungDiagram, border_strip

RSK = "rsk"
BURGE = "burge"


@dataclass(frozen=True)
class Environment:
    """Weights on a Young diagram plus a tag describing how they were drawn."""

    weights: Tableau
    distribution: str = "fixed"
    params: tuple = ()

    @property
    def shape(self) -> YoungDiagram:
        return self.weights.shape


def as_tableau(x) -> Tableau:
    if isinstance(x, Environment):
        return x.weights
    if isinstance(x, Tableau):
        return x
    return Tableau(tuple(tuple(r) for r in x))


def lpp_tableau(x) -> Tableau:
    """L[i,j] = L(1,1; i,j) via the max-plus recursion with zero boundary."""
    x = as_tableau(x)
    rows = []
    for i, row in enumerate(x.rows):
        out = []
        for j, v in enumerate(row):
            above = rows[i - 1][j] if i > 0 else 0
            left = out[j - 1] if j > 0 else 0
            out.append(max(above, left) + v)
        rows.append(tuple(out))
    return Tableau(tuple(rows))


def _point_to_point_up(x: Tableau, start_row: int, end_col: int):
    """max weight of an up/right path from (start_row, 1) to (1, end_col)."""
    g = [[0] * end_col for _ in range(start_row)]
    for a in range(start_row - 1, -1, -1):
        for b in range(end_col):
            below = g[a + 1][b] if a + 1 < start_row else None
            left = g[a][b - 1] if b > 0 else None
            prev = [v for v in (below, left) if v is not None]
            g[a][b] = (max(prev) if prev else 0) + x.rows[a][b]
    return g[0][end_col - 1]


def dual_lpp_tableau(x) -> Tableau:
    """L*[i,j] = L(i,1; 1,j): start row varies with the cell."""
    x = as_tableau(x)
    return Tableau(tuple(tuple(_point_to_point_up(x, i, j) for j in range(1, r + 1))
                         for i, r in enumerate(x.shape.rows, 1)))


def _check_box(x: Tableau, m: int, n: int, k: int):
    if Cell(m, n) not in x.shape:
        raise ValueError(f"({m},{n}) is not in the shape")
    # rectangle closure: every cell of [1,m]x[1,n] lies in the diagram
    assert x.shape.rows[m - 1] >= n
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k={k} outside 1..{min(m, n)}")


def _rect_rows(x: Tableau, m: int, n: int, orientation: str) -> list[tuple]:
    rows = [x.rows[i][:n] for i in range(m)]
    if orientation == BURGE:
        rows.reverse()
    elif orientation != RSK:
        raise ValueError(f"unknown orientation {orientation!r}")
    return rows


def greene_max(x, m: int, n: int, k: int, orientation: str = RSK):
    """Best total weight of k disjoint directed paths in [1,m]x[1,n].

    RSK: path i runs from (1, i) to (m, n-k+i).  Burge: from (m, i) to
    (1, n-k+i).  Per row, path i covers the column segment from its entry
    column (the previous row's exit) to its exit column; the DP state is the
    strictly increasing tuple of exit columns.
    """
    x = as_tableau(x)
    _check_box(x, m, n, k)
    rows = _rect_rows(x, m, n, orientation)
    prefix = [[0] for _ in rows]
    for r, row in enumerate(rows):
        for v in row:
            prefix[r].append(prefix[r][-1] + v)

    def seg(r, a, b):  # 0-based inclusive columns a..b of row r
        return prefix[r][b + 1] - prefix[r][a]

    # first row: path i enters at column i-1 (0-based), paths 1..k-1 cannot move right
    states = {}
    for last in range(k - 1, n):
        exits = tuple(range(k - 1)) + (last,)
        states[exits] = sum(seg(0, i, i) for i in range(k - 1)) + seg(0, k - 1, last)
    for r in range(1, m):
        nxt: dict[tuple, object] = {}
        for prev, val in states.items():
            bounds = [(prev[i], (prev[i + 1] - 1) if i + 1 < k else n - 1) for i in range(k)]
            for exits in product(*(range(a, b + 1) for a, b in bounds)):
                gain = sum(seg(r, prev[i], exits[i]) for i in range(k))
                tot = val + gain
                if exits not in nxt or tot > nxt[exits]:
                    nxt[exits] = tot
        states = nxt
    return states[tuple(range(n - k, n))]


@lru_cache(maxsize=None)
def _monotone_paths(m: int, n: int, start_col: int, end_col: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All down/right paths from (0, start_col) to (m-1, end_col), as cell tuples."""
    return tuple(_walk_paths(m, start_col, end_col))


def _walk_paths(m, start_col, end_col):
    if end_col < start_col:
        return
    downs, rights = m - 1, end_col - start_col
    for choice in combinations(range(downs + rights), downs):
        a, b = 0, start_col
        cells = [(a, b)]
        chosen = set(choice)
        for step in range(downs + rights):
            if step in chosen:
                a += 1
            else:
                b += 1
            cells.append((a, b))
        yield tuple(cells)


def greene_max_bruteforce(x, m: int, n: int, k: int, orientation: str = RSK):
    """Exhaustive search over k-tuples of paths; only for m, n <= 4."""
    x = as_tableau(x)
    if m > 4 or n > 4:
        raise ValueError("brute force is capped at 4x4 rectangles")
    _check_box(x, m, n, k)
    rows = _rect_rows(x, m, n, orientation)
    families = [_monotone_paths(m, n, i, n - k + i) for i in range(k)]
    best = None
    for fam in product(*families):
        seen = set()
        ok = True
        for path in fam:
            for c in path:
                if c in seen:
                    ok = False
                    break
                seen.add(c)
            if not ok:
                break
        if ok:
            tot = sum(rows[a][b] for a, b in seen)
            if best is None or tot > best:
                best = tot
    return best


def _greene_transform(x, orientation: str) -> Tableau:
    x = as_tableau(x)
    out: dict[tuple[int, int], object] = {}
    for m, n in border_strip(x.shape):
        prev = 0
        for k in range(1, min(m, n) + 1):
            cur = greene_max(x, m, n, k, orientation)
            out[m - k + 1, n - k + 1] = cur - prev
            prev = cur
    return Tableau.from_mapping(x.shape, out)


def _require_integer(x: Tableau):
    if not all(isinstance(v, (int, np.integer)) and v >= 0 for v in x.flat()):
        raise ValueError("RSK/Burge need non-negative integer entries")


def rsk(x) -> Tableau:
    x = as_tableau(x)
    _require_integer(x)
    return _greene_transform(x, RSK)


def burge(x) -> Tableau:
    x = as_tableau(x)
    _require_integer(x)
    return _greene_transform(x, BURGE)


# -- classical RSK on rectangles ---------------------------------------------

def _row_insert(p: list[list[int]], value: int) -> int:
    """Insert into P by row bumping; return the row index where a box was created."""
    r = 0
    while True:
        if r == len(p):
            p.append([value])
            return r
        row = p[r]
        # leftmost entry strictly larger than value
        pos = next((c for c, v in enumerate(row) if v > value), None)
        if pos is None:
            row.append(value)
            return r
        row[pos], value = value, row[pos]
        r += 1


def classical_rsk_rectangle(x) -> tuple[list[list[int]], list[list[int]], Tableau]:
    """Row-insertion RSK of an m x n matrix, plus its diagonal re-encoding.

    The two-line array lists pair (i, j) x[i][j] times in lexicographic order;
    column indices are inserted into P and row indices recorded in Q.  The
    diagonal through (k, n) carries shape(Q restricted to entries <= k) and the
    diagonal through (m, l) carries shape(P restricted to entries <= l).
    """
    x = as_tableau(x)
    m = len(x.rows)
    n = len(x.rows[0]) if m else 0
    if any(len(r) != n for r in x.rows):
        raise ValueError("classical RSK needs a rectangular array")
    p: list[list[int]] = []
    q: list[list[int]] = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for _ in range(x[i, j]):
                r = _row_insert(p, j)
                if r == len(q):
                    q.append([])
                q[r].append(i)

    def sub_shape(tab, bound):
        return [sum(1 for v in row if v <= bound) for row in tab]

    out = {}
    for k in range(1, m + 1):
        mu = sub_shape(q, k)
        for d in range(min(k, n)):
            out[k - d, n - d] = mu[d] if d < len(mu) else 0
    for l in range(1, n):
        mu = sub_shape(p, l)
        for d in range(min(m, l)):
            out[m - d, l - d] = mu[d] if d < len(mu) else 0
    return p, q, Tableau.from_mapping(x.shape, out)


# -- exact border-strip laws for geometric weights --------------------------

def _lpp_batch(x: np.ndarray, shape: YoungDiagram) -> np.ndarray:
    """Vectorised L over a batch: x has shape (B, rows, cols) with zero padding."""
    out = np.zeros_like(x)
    for i, r in enumerate(shape.rows):
        for j in range(r):
            above = out[:, i - 1, j] if i > 0 else 0
            left = out[:, i, j - 1] if j > 0 else 0
            out[:, i, j] = np.maximum(above, left) + x[:, i, j]
    return out


def _dual_lpp_batch(x: np.ndarray, shape: YoungDiagram, cells: Sequence[Cell]) -> np.ndarray:
    vals = []
    for ci, cj in cells:
        g = np.zeros((x.shape[0], ci, cj), dtype=x.dtype)
        for a in range(ci - 1, -1, -1):
            for b in range(cj):
                below = g[:, a + 1, b] if a + 1 < ci else None
                left = g[:, a, b - 1] if b > 0 else None
                if below is None and left is None:
                    prev = 0
                elif below is None:
                    prev = left
                elif left is None:
                    prev = below
                else:
                    prev = np.maximum(below, left)
                g[:, a, b] = prev + x[:, a, b]
        vals.append(g[:, 0, cj - 1])
    return np.stack(vals, axis=1)


def border_distribution_exact(shape: YoungDiagram, p: Fraction, cap: int, which: str = "L",
                              weights: str = "geometric") -> dict[tuple[int, ...], Fraction]:
    """P(tableau restricted to the border strip = v) for every v with max(v) <= cap.

    Every entry satisfies x[i,j] <= L or L* at some border box, so only inputs
    with entries <= cap contribute.  ``weights='geometric'`` uses
    P(X = m) = p (1-p)^m on m >= 0; ``weights='bernoulli'`` makes entries
    uniform on {0, 1} (``p`` ignored).
    """
    size = shape.size
    if size > 9 or cap > 6:
        raise ValueError("exact oracle is capped at |shape| <= 9 and cap <= 6")
    p = Fraction(p)
    cells = shape.cells()
    strip = border_strip(shape)
    top = 1 if weights == "bernoulli" else cap
    base = top + 1
    rows, cols = len(shape.rows), shape.rows[0]
    counts: dict[tuple, int] = defaultdict(int)
    chunk = base ** min(size, 6)
    total = base ** size
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.stack([(codes // base ** e) % base for e in range(size)], axis=1)
        x = np.zeros((len(codes), rows, cols), dtype=np.int64)
        for e, (i, j) in enumerate(cells):
            x[:, i - 1, j - 1] = digits[:, e]
        if which == "L":
            full = _lpp_batch(x, shape)
            vec = np.stack([full[:, i - 1, j - 1] for i, j in strip], axis=1)
        elif which == "Lstar":
            vec = _dual_lpp_batch(x, shape, strip)
        else:
            raise ValueError(which)
        keep = vec.max(axis=1) <= cap
        sums = digits.sum(axis=1)
        keyed = np.concatenate([vec[keep], sums[keep, None]], axis=1)
        uniq, mult = np.unique(keyed, axis=0, return_counts=True)
        for row, c in zip(uniq.tolist(), mult.tolist()):
            counts[tuple(row)] += c
    law: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for key, c in counts.items():
        *vec, s = key
        if weights == "bernoulli":
            law[tuple(vec)] += Fraction(c, 2 ** size)
        else:
            law[tuple(vec)] += c * p ** size * (1 - p) ** s
    return dict(law)
