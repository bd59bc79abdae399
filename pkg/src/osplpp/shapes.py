"""Young diagrams, tableaux, staircase standard tableaux and their parameters.

Cells are 1-based ``(row, col)`` pairs in English notation.  Permutations are
tuples in one-line notation with values ``1..m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence


class InvalidOrder(ValueError):
    pass


class InvalidShape(ValueError):
    pass


class InvalidTableau(ValueError):
    pass


class Cell(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class YoungDiagram:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows if r)
        if any(r < 0 for r in self.rows):
            raise InvalidShape(f"negative row length in {self.rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidShape(f"rows must be weakly decreasing: {self.rows}")
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= i <= len(self.rows) and 1 <= j <= self.rows[i - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.rows))

    @classmethod
    def parse(cls, text: str) -> "YoungDiagram":
        text = text.strip().strip("()")
        return cls(tuple(int(s) for s in text.split(",") if s.strip()))

    @property
    def size(self) -> int:
        return sum(self.rows)

    def cells(self) -> list[Cell]:
        return [Cell(i, j) for i, r in enumerate(self.rows, 1) for j in range(1, r + 1)]

    def conjugate(self) -> "YoungDiagram":
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r >= j) for j in range(1, self.rows[0] + 1)))

    def is_hook(self) -> bool:
        return Cell(2, 2) not in self


def staircase(n: int) -> YoungDiagram:
    """The staircase shape (n-1, n-2, ..., 1) of order n."""
    if n < 2:
        raise InvalidOrder(f"staircase order must be >= 2, got {n}")
    return YoungDiagram(tuple(range(n - 1, 0, -1)))


def border_strip(shape: YoungDiagram) -> list[Cell]:
    """Last box of every diagonal, walked from the top-right end to the bottom-left end.

    Consecutive cells differ by one step left or one step down, so the list is
    a connected line-to-line path.
    """
    if not shape.rows:
        return []
    cells = []
    i, j = 1, shape.rows[0]
    while True:
        cells.append(Cell(i, j))
        if Cell(i + 1, j) in shape:
            i += 1
        elif j > 1:
            j -= 1
        else:
            break
    return cells


def corners(shape: YoungDiagram) -> list[Cell]:
    """Removable boxes, bottom-left first (strictly decreasing row)."""
    rows = shape.rows
    out = [Cell(i, r) for i, r in enumerate(rows, 1) if i == len(rows) or rows[i] < r]
    return out[::-1]


def omega_weights(shape: YoungDiagram) -> dict[Cell, int]:
    """Diagonal weights in {-1, 0, 1} turning the telescoping rectangle sums into the global sum."""
    cs = corners(shape)
    plus = {c.col - c.row for c in cs}
    minus = {cs[k - 1].col - cs[k].row for k in range(1, len(cs))}
    return {c: (1 if c.col - c.row in plus else -1 if c.col - c.row in minus else 0) for c in shape.cells()}


def rectangle_sum(values: "Tableau", m: int, n: int):
    return sum(values[i, j] for i in range(1, m + 1) for j in range(1, n + 1))


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram; ``rows`` is a ragged tuple of tuples."""

    rows: tuple[tuple, ...]
    shape: YoungDiagram = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", YoungDiagram(tuple(len(r) for r in rows)))

    @classmethod
    def from_mapping(cls, shape: YoungDiagram, entries) -> "Tableau":
        return cls(tuple(tuple(entries[i, j] for j in range(1, r + 1)) for i, r in enumerate(shape.rows, 1)))

    @classmethod
    def zeros(cls, shape: YoungDiagram, value=0) -> "Tableau":
        return cls(tuple((value,) * r for r in shape.rows))

    def __getitem__(self, cell):
        i, j = cell
        if i < 1 or j < 1:
            raise IndexError(cell)
        return self.rows[i - 1][j - 1]

    def get(self, cell, default=0):
        return self[cell] if cell in self.shape else default

    def items(self) -> Iterator[tuple[Cell, object]]:
        for i, row in enumerate(self.rows, 1):
            for j, v in enumerate(row, 1):
                yield Cell(i, j), v

    def flat(self) -> tuple:
        return tuple(v for row in self.rows for v in row)

    def total(self):
        return sum(self.flat())

    def map(self, fn) -> "Tableau":
        return Tableau(tuple(tuple(fn(v) for v in row) for row in self.rows))

    def restrict(self, cells: Sequence[Cell]) -> tuple:
        return tuple(self[c] for c in cells)

    def interlaces(self) -> bool:
        """Weakly increasing along rows and down columns."""
        for (i, j), v in self.items():
            if i > 1 and self[i - 1, j] > v:
                return False
            if j > 1 and self[i, j - 1] > v:
                return False
        return True

    def __str__(self) -> str:
        return "/".join(",".join(map(str, row)) for row in self.rows)

    def to_text(self) -> str:
        """Shape and row-major entries, e.g. ``3,2,1:1,2,4,3,5,6``."""
        return f"{self.shape}:{','.join(map(str, self.flat()))}"

    @classmethod
    def from_text(cls, text: str, kind=int) -> "Tableau":
        shape_part, entries_part = text.strip().split(":")
        shape = YoungDiagram.parse(shape_part)
        values = [kind(v) for v in entries_part.split(",")]
        rows, pos = [], 0
        for r in shape.rows:
            rows.append(tuple(values[pos:pos + r]))
            pos += r
        return cls(tuple(rows))


class StandardTableau(Tableau):
    """Bijective filling by 1..N, strictly increasing along rows and columns."""

    def __post_init__(self):
        super().__post_init__()
        values = self.flat()
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidTableau(f"entries are not a permutation of 1..{len(values)}")
        for (i, j), v in self.items():
            if (i > 1 and self[i - 1, j] >= v) or (j > 1 and self[i, j - 1] >= v):
                raise InvalidTableau(f"not increasing at {(i, j)}")

    @property
    def order(self) -> int:
        """n such that the shape is the staircase of order n (0 if not a staircase)."""
        rows = self.shape.rows
        if rows == tuple(range(len(rows), 0, -1)):
            return len(rows) + 1
        return 0

    def cell_of(self, value: int) -> Cell:
        for c, v in self.items():
            if v == value:
                return c
        raise KeyError(value)

    def row_word(self) -> tuple[int, ...]:
        """Row (1-based) of each entry 1..N, i.e. the rows in which boxes are added."""
        word = [0] * self.shape.size
        for (i, _), v in self.items():
            word[v - 1] = i
        return tuple(word)

    @classmethod
    def from_row_word(cls, word: Sequence[int]) -> "StandardTableau":
        rows: list[list[int]] = []
        for k, i in enumerate(word, 1):
            while len(rows) < i:
                rows.append([])
            rows[i - 1].append(k)
        return cls(tuple(tuple(r) for r in rows))


def hook_length_count(shape: YoungDiagram) -> int:
    conj = shape.conjugate().rows
    hooks = prod(shape.rows[i - 1] - j + conj[j - 1] - i + 1 for i, j in shape.cells())
    return factorial(shape.size) // hooks


def staircase_syt_count(n: int) -> int:
    """N! / (1^(n-1) 3^(n-2) ... (2n-3)^1)."""
    big_n = n * (n - 1) // 2
    return factorial(big_n) // prod((2 * k - 1) ** (n - k) for k in range(1, n))


# -- enumeration -------------------------------------------------------------

def _syt_words(bound: tuple[int, ...], prefix: Sequence[int] = ()) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (row word, out-degree sequence) for every SYT of ``bound``.

    Boxes are added top row first at each step, so the order is lexicographic
    in the row word.  ``deg[k]`` counts the boxes addable to the k-th diagram
    inside ``bound``; the final (full) diagram is not recorded.
    """
    nrows = len(bound)
    total = sum(bound)
    lengths = [0] * nrows
    word: list[int] = []
    degs: list[int] = []

    def addable():
        out = []
        for i in range(nrows):
            li = lengths[i]
            if li < bound[i] and (i == 0 or lengths[i - 1] > li):
                out.append(i)
        return out

    for r in prefix:
        opts = addable()
        if r - 1 not in opts:
            return
        degs.append(len(opts))
        word.append(r)
        lengths[r - 1] += 1

    def rec():
        if len(word) == total:
            yield tuple(word), tuple(degs)
            return
        opts = addable()
        degs.append(len(opts))
        for i in opts:
            lengths[i] += 1
            word.append(i + 1)
            yield from rec()
            word.pop()
            lengths[i] -= 1
        degs.pop()

    yield from rec()


def enumerate_syt(shape: YoungDiagram, prefix: Sequence[int] = ()) -> Iterator[StandardTableau]:
    """Every standard tableau of ``shape`` exactly once, in a fixed order.

    ``prefix`` restricts the stream to tableaux whose row word starts with it;
    splitting on prefixes partitions the enumeration for parallel consumers.
    """
    for word, _ in _syt_words(shape.rows, prefix):
        yield StandardTableau.from_row_word(word)


def growth_sequence(t: Tableau) -> tuple[YoungDiagram, ...]:
    if not isinstance(t, StandardTableau):
        t = StandardTableau(t.rows)
    word = t.row_word()
    lengths = [0] * len(t.shape)
    seq = [YoungDiagram(())]
    for i in word:
        lengths[i - 1] += 1
        seq.append(YoungDiagram(tuple(lengths)))
    return tuple(seq)


# -- parameters --------------------------------------------------------------

def rank_permutation(values: Sequence[int]) -> tuple[int, ...]:
    """The permutation ranking ``values`` (distinct): result[j] < result[k] iff values[j] < values[k]."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, j in enumerate(order, 1):
        ranks[j] = r
    return tuple(ranks)


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for j, v in enumerate(perm, 1):
        inv[v - 1] = j
    return tuple(inv)


@dataclass(frozen=True)
class GeneratingFactor:
    """Product of 1/(x_k + d)^m over ``blocks``.

    ``blocks[k-1]`` is the sorted tuple of ``(d, m)`` pairs for variable x_k.
    """

    blocks: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_path(cls, bar: Sequence[int], deg: Sequence[int]) -> "GeneratingFactor":
        """Jump j (1-based) lies in block k when bar[k-1] < j <= bar[k]; its rate is deg[j-1]."""
        blocks = []
        for k in range(1, len(bar)):
            counts: dict[int, int] = {}
            for j in range(bar[k - 1] + 1, bar[k] + 1):
                d = deg[j - 1]
                counts[d] = counts.get(d, 0) + 1
            blocks.append(tuple(sorted(counts.items())))
        return cls(tuple(blocks))

    @property
    def nvars(self) -> int:
        return len(self.blocks)

    def exponents(self) -> dict[tuple[int, int], int]:
        """Map (variable index k, shift d) -> multiplicity."""
        return {(k, d): m for k, block in enumerate(self.blocks, 1) for d, m in block}

    def degree(self) -> int:
        return sum(m for block in self.blocks for _, m in block)

    def rates(self, k: int) -> list[int]:
        return [d for d, m in self.blocks[k - 1] for _ in range(m)]

    def __call__(self, *xs):
        value = Fraction(1) if all(isinstance(x, (int, Fraction)) for x in xs) else 1.0
        for x, block in zip(xs, self.blocks):
            for d, m in block:
                value /= (x + d) ** m
        return value

    def __str__(self) -> str:
        parts = []
        for k, block in enumerate(self.blocks, 1):
            for d, m in block:
                parts.append(f"(x{k}+{d})" + (f"^{m}" if m > 1 else ""))
        return "1/(" + "*".join(parts) + ")"


@dataclass(frozen=True)
class PathParams:
    """Parameters shared by staircase tableaux and sorting networks.

    ``marks`` is cor_t (tableaux) or last_s (networks); ``perm`` the ranking
    of ``marks``; ``bar`` its increasing rearrangement with ``bar[0] == 0``;
    ``deg[k]`` the out-degree after k steps, k = 0..N-1.
    """

    marks: tuple[int, ...]
    perm: tuple[int, ...]
    bar: tuple[int, ...]
    deg: tuple[int, ...]
    factor: GeneratingFactor

    @classmethod
    def build(cls, marks: Sequence[int], deg: Sequence[int]) -> "PathParams":
        marks = tuple(marks)
        bar = (0,) + tuple(sorted(marks))
        return cls(marks, rank_permutation(marks), bar, tuple(deg), GeneratingFactor.from_path(bar, deg))

    def path_probability(self) -> Fraction:
        return Fraction(1, prod(self.deg))


@dataclass(frozen=True)
class TableauParams(PathParams):
    @property
    def cor(self):
        return self.marks

    @property
    def sigma(self):
        return self.perm

    @property
    def diag_bar(self):
        return self.bar


def _params_from_word(word: Sequence[int], deg: Sequence[int], n: int) -> TableauParams:
    # corner (n-k, k) is the last box of row n-k
    last = {}
    for step, i in enumerate(word, 1):
        last[i] = step
    cor = tuple(last[n - k] for k in range(1, n))
    return TableauParams.build(cor, deg)


def staircase_out_degrees(word: Sequence[int], n: int) -> tuple[int, ...]:
    bound = staircase(n).rows
    lengths = [0] * len(bound)
    deg = []
    for step in range(len(word)):
        deg.append(sum(1 for r in range(len(bound))
                       if lengths[r] < bound[r] and (r == 0 or lengths[r - 1] > lengths[r])))
        lengths[word[step] - 1] += 1
    return tuple(deg)


def tableau_params(t: Tableau) -> TableauParams:
    if not isinstance(t, StandardTableau):
        t = StandardTableau(t.rows)
    n = t.order
    if n < 2:
        raise InvalidShape(f"expected a staircase shape, got {t.shape}")
    word = t.row_word()
    return _params_from_word(word, staircase_out_degrees(word, n), n)


def iter_syt_params(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[tuple[int, ...], TableauParams]]:
    """Fast joint enumeration of (row word, params) over SYT(delta_n)."""
    for word, deg in _syt_words(staircase(n).rows, prefix):
        yield word, _params_from_word(word, deg, n)
