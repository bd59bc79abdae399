"""Sorting networks: reduced words for the reverse permutation.

A permutation is the arrangement of particle labels by position, in one-line
notation.  Swap ``s`` exchanges the labels in positions ``s`` and ``s + 1``,
so ``apply_prefix(s, k)`` is the state of the oriented swap process after its
first k swaps.  A swap is allowed only at an ascent (label at ``s`` smaller
than label at ``s + 1``), which is exactly the reduced-word condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .shapes import PathParams


class NotReduced(ValueError):
    pass


@dataclass(frozen=True)
class SortingNetwork:
    swaps: tuple[int, ...]
    order: int

    def __post_init__(self):
        object.__setattr__(self, "swaps", tuple(int(s) for s in self.swaps))
        n = self.order
        if len(self.swaps) != n * (n - 1) // 2:
            raise NotReduced(f"length {len(self.swaps)} != {n * (n - 1) // 2}")
        perm = list(range(1, n + 1))
        for k, s in enumerate(self.swaps, 1):
            if not 1 <= s < n or perm[s - 1] > perm[s]:
                raise NotReduced(f"swap {k} at position {s} is not an ascent")
            perm[s - 1], perm[s] = perm[s], perm[s - 1]

    @classmethod
    def parse(cls, text: str) -> "SortingNetwork":
        swaps = tuple(int(v) for v in text.strip().strip("()").split(","))
        n = 2
        while n * (n - 1) // 2 < len(swaps):
            n += 1
        return cls(swaps, n)

    def __len__(self) -> int:
        return len(self.swaps)

    def __str__(self) -> str:
        return ",".join(map(str, self.swaps))

    def wiring_diagram(self) -> dict[int, list[tuple[int, int]]]:
        """Track of each particle label as (time step, position) pairs."""
        n = self.order
        perm = list(range(1, n + 1))
        tracks = {label: [(0, label)] for label in perm}
        for k, s in enumerate(self.swaps, 1):
            perm[s - 1], perm[s] = perm[s], perm[s - 1]
            for pos, label in enumerate(perm, 1):
                tracks[label].append((k, pos))
        return tracks


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def reverse(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def ascents(perm: Sequence[int]) -> list[int]:
    return [j for j in range(1, len(perm)) if perm[j - 1] < perm[j]]


def apply_prefix(s: SortingNetwork, k: int) -> tuple[int, ...]:
    if not 0 <= k <= len(s.swaps):
        raise IndexError(f"prefix length {k} outside 0..{len(s.swaps)}")
    perm = list(range(1, s.order + 1))
    for j in s.swaps[:k]:
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
    return tuple(perm)


def _network_words(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (swap word, ascent-count sequence) by DFS over ascents, smallest position first."""
    total = n * (n - 1) // 2
    perm = list(range(1, n + 1))
    word: list[int] = []
    degs: list[int] = []

    for s in prefix:
        asc = [j for j in range(1, n) if perm[j - 1] < perm[j]]
        if s not in asc:
            return
        degs.append(len(asc))
        word.append(s)
        perm[s - 1], perm[s] = perm[s], perm[s - 1]

    def rec():
        if len(word) == total:
            yield tuple(word), tuple(degs)
            return
        asc = [j for j in range(1, n) if perm[j - 1] < perm[j]]
        degs.append(len(asc))
        for j in asc:
            perm[j - 1], perm[j] = perm[j], perm[j - 1]
            word.append(j)
            yield from rec()
            word.pop()
            perm[j - 1], perm[j] = perm[j], perm[j - 1]
        degs.pop()

    yield from rec()


def enumerate_sorting_networks(n: int, prefix: Sequence[int] = ()) -> Iterator[SortingNetwork]:
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    for word, _ in _network_words(n, prefix):
        yield SortingNetwork(word, n)


def _last_positions(word: Sequence[int], n: int) -> tuple[int, ...]:
    last = [0] * (n - 1)
    for j, s in enumerate(word, 1):
        last[s - 1] = j
    return tuple(last)


@dataclass(frozen=True)
class NetworkParams(PathParams):
    @property
    def last(self):
        return self.marks

    @property
    def pi(self):
        return self.perm

    @property
    def fin_bar(self):
        return self.bar


def network_params(s: SortingNetwork) -> NetworkParams:
    perm = list(range(1, s.order + 1))
    deg = []
    for j in s.swaps:
        deg.append(sum(1 for a, b in zip(perm, perm[1:]) if a < b))
        if perm[j - 1] > perm[j]:
            raise NotReduced(f"{s} is not reduced")
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
    return NetworkParams.build(_last_positions(s.swaps, s.order), deg)


def iter_network_params(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[tuple[int, ...], NetworkParams]]:
    for word, deg in _network_words(n, prefix):
        yield word, NetworkParams.build(_last_positions(word, n), deg)
