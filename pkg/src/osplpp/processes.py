"""Simulators for the oriented swap process, the staircase corner growth, and exponential LPP.

All samplers are vectorised over independent replicas.  The production OSP
and growth samplers run the embedded jump chain: from a state with ``a``
available moves, wait an Exp(a) time, then pick one of the moves uniformly.
``sample_osp_clocks`` instead rings every bond at rate 1 and ignores failed
swaps; it exists to cross-check the embedded-chain sampler.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .shapes import StandardTableau
from .sortnet import SortingNetwork


@dataclass(frozen=True)
class RngStream:
    """Counter-based generator keyed by (seed, stream index)."""

    seed: int
    index: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(np.random.SeedSequence([self.seed, self.index])))

    def spawn(self, index: int) -> "RngStream":
        return RngStream(self.seed, index)


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return RngStream(int(rng)).generator()


def exponential(rng: np.random.Generator, rate) -> np.ndarray:
    """Exp(rate) draws by inverting the CDF."""
    rate = np.asarray(rate, dtype=float)
    return -np.log1p(-rng.random(rate.shape)) / rate


def _pick(mask: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Uniformly pick one True column per row; returns (column index, number of Trues)."""
    counts = mask.sum(axis=1)
    choice = np.floor(rng.random(len(mask)) * counts).astype(np.int64)
    pos = (np.cumsum(mask, axis=1) <= choice[:, None]).sum(axis=1)
    return pos, counts


@dataclass
class TrajectorySample:
    model: str
    path: object
    jump_times: np.ndarray
    coords: np.ndarray
    finishing_times: Optional[np.ndarray] = None

    @property
    def max(self) -> float:
        return float(self.coords.max())


@dataclass
class TrajectoryBatch:
    """Replicas of one model: ``paths[r]`` is the swap word (OSP) or row word (growth)."""

    model: str
    order: int
    paths: np.ndarray
    jump_times: np.ndarray
    coords: np.ndarray
    degrees: np.ndarray = field(repr=False, default=None)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def max(self) -> np.ndarray:
        return self.coords.max(axis=1)

    def finishing_times(self) -> np.ndarray:
        """Particle k finishes at max(U(n-k), U(n-k+1)), with U(0) = U(n) = 0."""
        if not self.model.startswith("osp"):
            raise ValueError("finishing times are defined for the swap process only")
        n = self.order
        padded = np.zeros((len(self), n + 1))
        padded[:, 1:n] = self.coords
        return np.stack([np.maximum(padded[:, n - k], padded[:, n - k + 1]) for k in range(1, n + 1)], axis=1)

    def __getitem__(self, r: int) -> TrajectorySample:
        word = tuple(int(v) for v in self.paths[r])
        if self.model.startswith("osp"):
            path = SortingNetwork(word, self.order)
            fin = self.finishing_times()[r]
        else:
            path = StandardTableau.from_row_word(word)
            fin = None
        return TrajectorySample(self.model, path, self.jump_times[r].copy(), self.coords[r].copy(), fin)


def sample_osp(n: int, replicas: int, rng) -> TrajectoryBatch:
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = as_generator(rng)
    big_n = n * (n - 1) // 2
    rows = np.arange(replicas)
    perm = np.tile(np.arange(1, n + 1), (replicas, 1))
    paths = np.empty((replicas, big_n), dtype=np.int16)
    times = np.empty((replicas, big_n))
    degs = np.empty((replicas, big_n), dtype=np.int16)
    last = np.zeros((replicas, n - 1))
    clock = np.zeros(replicas)
    for step in range(big_n):
        asc = perm[:, :-1] < perm[:, 1:]
        counts = asc.sum(axis=1)
        clock = clock + exponential(rng, counts)
        pos, _ = _pick(asc, rng)
        a = perm[rows, pos].copy()
        perm[rows, pos] = perm[rows, pos + 1]
        perm[rows, pos + 1] = a
        last[rows, pos] = clock
        paths[:, step] = pos + 1
        times[:, step] = clock
        degs[:, step] = counts
    return TrajectoryBatch("osp", n, paths, times, last, degs)


def sample_osp_clocks(n: int, replicas: int, rng) -> TrajectoryBatch:
    """Literal dynamics: total ring rate n-1, a uniformly chosen bond attempts a swap."""
    rng = as_generator(rng)
    big_n = n * (n - 1) // 2
    perm = np.tile(np.arange(1, n + 1), (replicas, 1))
    paths = np.zeros((replicas, big_n), dtype=np.int16)
    times = np.zeros((replicas, big_n))
    last = np.zeros((replicas, n - 1))
    clock = np.zeros(replicas)
    done = np.zeros(replicas, dtype=np.int64)
    active = np.arange(replicas)
    while len(active):
        clock[active] += exponential(rng, np.full(len(active), n - 1.0))
        bond = np.floor(rng.random(len(active)) * (n - 1)).astype(np.int64)
        left, right = perm[active, bond], perm[active, bond + 1]
        ok = left < right
        r, b = active[ok], bond[ok]
        perm[r, b], perm[r, b + 1] = right[ok], left[ok]
        last[r, b] = clock[r]
        paths[r, done[r]] = b + 1
        times[r, done[r]] = clock[r]
        done[r] += 1
        active = active[done[active] < big_n]
    return TrajectoryBatch("osp-clocks", n, paths, times, last)


def sample_corner_growth(n: int, replicas: int, rng) -> TrajectoryBatch:
    """Random growth from the empty diagram to the staircase of order n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = as_generator(rng)
    big_n = n * (n - 1) // 2
    rows = np.arange(replicas)
    bound = np.arange(n - 1, 0, -1)
    lengths = np.zeros((replicas, n - 1), dtype=np.int64)
    paths = np.empty((replicas, big_n), dtype=np.int16)
    times = np.empty((replicas, big_n))
    degs = np.empty((replicas, big_n), dtype=np.int16)
    corner = np.zeros((replicas, n - 1))
    clock = np.zeros(replicas)
    for step in range(big_n):
        room = lengths < bound
        room[:, 1:] &= lengths[:, :-1] > lengths[:, 1:]
        counts = room.sum(axis=1)
        clock = clock + exponential(rng, counts)
        row, _ = _pick(room, rng)
        lengths[rows, row] += 1
        # row r (0-based) is complete when it holds box (r+1, n-1-r), i.e. corner k = n-1-r
        full = lengths[rows, row] == bound[row]
        corner[rows[full], n - 2 - row[full]] = clock[full]
        paths[:, step] = row + 1
        times[:, step] = clock
        degs[:, step] = counts
    return TrajectoryBatch("growth", n, paths, times, corner, degs)


def simulate_osp(n: int, rng) -> TrajectorySample:
    return sample_osp(n, 1, rng)[0]


def simulate_osp_clocks(n: int, rng) -> TrajectorySample:
    return sample_osp_clocks(n, 1, rng)[0]


def simulate_corner_growth(n: int, rng) -> TrajectorySample:
    return sample_corner_growth(n, 1, rng)[0]


# -- LPP ---------------------------------------------------------------------

def staircase_weights(n: int, replicas: int, rng) -> np.ndarray:
    """Exp(1) weights of shape (replicas, n-1, n-1); cells outside the staircase are zero."""
    rng = as_generator(rng)
    x = exponential(rng, np.ones((replicas, n - 1, n - 1)))
    i, j = np.indices((n - 1, n - 1))
    x[:, i + j > n - 2] = 0.0
    return x


def point_to_line(x: np.ndarray, n: int) -> np.ndarray:
    """V(k) = L(1,1; n-k, k) for a batch of staircase weights."""
    L = np.zeros((x.shape[0], n, n))
    for i in range(1, n):
        for j in range(1, n - i + 1):
            L[:, i, j] = np.maximum(L[:, i - 1, j], L[:, i, j - 1]) + x[:, i - 1, j - 1]
    return np.stack([L[:, n - k, k] for k in range(1, n)], axis=1)


def line_to_line(x: np.ndarray, n: int) -> np.ndarray:
    """W(k) = L(n-k,1; 1,k) for a batch of staircase weights."""
    out = []
    for k in range(1, n):
        start = n - k
        g = np.zeros((x.shape[0], start + 1, k + 1))  # padded: row start and col 0 are boundary
        for a in range(start - 1, -1, -1):
            for b in range(1, k + 1):
                below = g[:, a + 1, b] if a + 1 < start else np.full(x.shape[0], -np.inf)
                left = g[:, a, b - 1] if b > 1 else np.full(x.shape[0], -np.inf)
                prev = np.maximum(below, left)
                if a == start - 1 and b == 1:
                    prev = np.zeros(x.shape[0])
                g[:, a, b] = prev + x[:, a, b - 1]
        out.append(g[:, 0, k])
    return np.stack(out, axis=1)


def vw_vectors(env, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(V_n, W_n) computed from the same staircase weights."""
    from .rsk import as_tableau

    t = as_tableau(env)
    x = np.zeros((1, n - 1, n - 1))
    for (i, j), v in t.items():
        x[0, i - 1, j - 1] = v
    return point_to_line(x, n)[0], line_to_line(x, n)[0]


@dataclass
class LppBatch:
    order: int
    weights: np.ndarray
    V: np.ndarray
    W: Optional[np.ndarray]


def sample_lpp(n: int, replicas: int, rng, dual: bool = True) -> LppBatch:
    x = staircase_weights(n, replicas, rng)
    return LppBatch(n, x, point_to_line(x, n), line_to_line(x, n) if dual else None)


# -- chunked sampling --------------------------------------------------------

CHUNK = 10_000
MODELS = ("osp", "osp-clocks", "growth", "lpp")


def _sample_chunk(model: str, n: int, size: int, seed: int, index: int) -> dict[str, np.ndarray]:
    stream = RngStream(seed, index)
    if model == "osp":
        return {"U": sample_osp(n, size, stream).coords}
    if model == "osp-clocks":
        return {"U": sample_osp_clocks(n, size, stream).coords}
    if model == "growth":
        return {"V": sample_corner_growth(n, size, stream).coords}
    if model == "lpp":
        b = sample_lpp(n, size, stream)
        return {"V": b.V, "W": b.W}
    raise ValueError(f"unknown model {model!r}")


def sample_coordinates(model: str, n: int, replicas: int, seed: int, workers: int = 1,
                       chunk: int = CHUNK) -> dict[str, np.ndarray]:
    """Coordinate vectors for ``replicas`` runs, split into fixed chunks with one stream each.

    Chunk ``c`` always uses stream index ``c``, so the output does not depend
    on ``workers``.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if n < 2:
        raise ValueError("n must be >= 2")
    jobs = [(model, n, min(chunk, replicas - start), seed, c)
            for c, start in enumerate(range(0, replicas, chunk))]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sample_chunk, *zip(*jobs)))
    else:
        parts = [_sample_chunk(*job) for job in jobs]
    if not parts:
        return {}
    return {key: np.concatenate([p[key] for p in parts]) for key in parts[0]}
