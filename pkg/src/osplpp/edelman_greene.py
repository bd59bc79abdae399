"""Schützenberger operator and the Edelman-Greene map SYT(delta_n) -> SN_n."""

from __future__ import annotations

from functools import lru_cache

from .report import TestReport
from .shapes import Cell, StandardTableau, iter_syt_params, staircase, tableau_params, _syt_words
from .sortnet import SortingNetwork, network_params


def _grid(t: StandardTableau) -> list[list[int]]:
    return [list(row) for row in t.rows]


def _max_cell(grid) -> tuple[int, int]:
    best, at = -1, (0, 0)
    for i, row in enumerate(grid):
        for j, v in enumerate(row):
            if v > best:
                best, at = v, (i, j)
    return at


def _path_from(grid, start) -> list[tuple[int, int]]:
    # out-of-shape neighbours count as 0; ties go left
    a, b = start
    path = [(a, b)]
    while (a, b) != (0, 0):
        up = grid[a - 1][b] if a > 0 else 0
        left = grid[a][b - 1] if b > 0 else 0
        if up > left:
            a -= 1
        else:
            b -= 1
        path.append((a, b))
    return path


def evacuation_path(t: StandardTableau) -> list[Cell]:
    grid = _grid(t)
    return [Cell(a + 1, b + 1) for a, b in _path_from(grid, _max_cell(grid))]


def schuetzenberger_step(t: StandardTableau) -> StandardTableau:
    """Slide outward along the evacuation path, vacate (1,1) with 0, then add 1 everywhere."""
    grid = _grid(t)
    path = _path_from(grid, _max_cell(grid))
    for (a, b), (c, d) in zip(path, path[1:]):
        grid[a][b] = grid[c][d]
    grid[0][0] = 0
    return StandardTableau(tuple(tuple(v + 1 for v in row) for row in grid))


def _jmax(t: StandardTableau) -> int:
    return _max_cell(t.rows)[1] + 1


def eg_map_literal(t: StandardTableau) -> SortingNetwork:
    """EG(t)_m = j_max(Phi^(N-m)(t)), by iterating the operator itself."""
    n = t.order
    big_n = t.shape.size
    cols = []
    for _ in range(big_n):
        cols.append(_jmax(t))
        t = schuetzenberger_step(t)
    return SortingNetwork(tuple(reversed(cols)), n)


def _eg_word(rows, n: int) -> tuple[int, ...]:
    # Emptying: never increment, evacuated cells hold 0.  A slide stops as soon
    # as the path would enter the evacuated region, which only ever holds zeros.
    grid = [list(r) for r in rows]
    cols = []
    value = sum(len(r) for r in rows)
    where = {}
    for a, row in enumerate(grid):
        for b, v in enumerate(row):
            where[v] = (a, b)
    for _ in range(value):
        # locate the current maximum original label
        while value not in where:
            value -= 1
        a, b = where.pop(value)
        cols.append(b + 1)
        while True:
            up = grid[a - 1][b] if a > 0 else 0
            left = grid[a][b - 1] if b > 0 else 0
            if up == 0 and left == 0:
                grid[a][b] = 0
                break
            if up > left:
                grid[a][b] = up
                where[up] = (a, b)
                a -= 1
            else:
                grid[a][b] = left
                where[left] = (a, b)
                b -= 1
    cols.reverse()
    return tuple(cols)


def eg_map(t: StandardTableau) -> SortingNetwork:
    n = t.order
    if n < 2:
        raise ValueError(f"expected a staircase tableau, got shape {t.shape}")
    return SortingNetwork(_eg_word(t.rows, n), n)


def _word_rows(word, n):
    rows = [[] for _ in range(n - 1)]
    for k, i in enumerate(word, 1):
        rows[i - 1].append(k)
    return rows


@lru_cache(maxsize=None)
def _eg_index(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """EG swap word -> tableau row word, over all of SYT(delta_n)."""
    index = {}
    for word, _ in _syt_words(staircase(n).rows):
        index[_eg_word(_word_rows(word, n), n)] = word
    return index


def eg_inverse_search(s: SortingNetwork) -> StandardTableau:
    if s.order > 6:
        raise ValueError("inverse search is limited to order <= 6")
    word = _eg_index(s.order).get(s.swaps)
    if word is None:
        raise LookupError(f"no tableau maps to {s}")
    return StandardTableau.from_row_word(word)


def verify_eg_params(n: int) -> TestReport:
    """Check last_{EG(t)} = cor_t and pi_{EG(t)} = sigma_t for every t in SYT(delta_n)."""
    if not 2 <= n <= 6:
        raise ValueError("n must be in 2..6")
    total = 0
    failures = []
    for word, tp in iter_syt_params(n):
        total += 1
        swaps = _eg_word(_word_rows(word, n), n)
        last = [0] * (n - 1)
        for j, s in enumerate(swaps, 1):
            last[s - 1] = j
        if tuple(last) != tp.cor:
            failures.append({"tableau": word, "network": swaps, "cor": tp.cor, "last": tuple(last)})
        # pi = sigma follows from last = cor via the shared ranking
    return TestReport(
        name=f"eg-params n={n}",
        statistics={"checked": total, "failures": len(failures)},
        thresholds={"failures": 0},
        passed=not failures,
        sample_sizes={"tableaux": total},
        details={"failing_cases": failures[:20]},
    )


def verify_eg_params_full(n: int) -> TestReport:
    """Slower variant building full parameter objects on both sides (including pi = sigma)."""
    total, bad = 0, []
    for word, tp in iter_syt_params(n):
        total += 1
        sp = network_params(SortingNetwork(_eg_word(_word_rows(word, n), n), n))
        if sp.last != tp.cor or sp.pi != tp.sigma:
            bad.append(word)
    return TestReport(name=f"eg-params-full n={n}", statistics={"checked": total, "failures": len(bad)},
                      thresholds={"failures": 0}, passed=not bad, sample_sizes={"tableaux": total},
                      details={"failing_cases": bad[:20]})
