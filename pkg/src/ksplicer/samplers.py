"""Uniform spanning-tree samplers for K_n behind one seeded interface."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graph_core import Edge, SpanningTree, tree_validate
from .prufer import decode_pairs

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RngStream:
    """A reproducible random substream identified by ``(seed, stream_id)``.

    ``generator()`` always returns a fresh PCG64 generator positioned at the
    start of the stream, so functions handed the same RngStream draw the
    same values.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def key(self) -> int:
        return splitmix64(splitmix64(self.seed) ^ (self.stream_id & _MASK))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.key()))

    def child(self, index: int) -> "RngStream":
        return RngStream(self.seed, splitmix64(self.key() ^ splitmix64(index)))


class SamplerKind(enum.Enum):
    PRUFER = "prufer"
    ALDOUS_BRODER = "aldous-broder"
    WILSON = "wilson"

    @classmethod
    def parse(cls, value: "str | SamplerKind") -> "SamplerKind":
        return value if isinstance(value, cls) else cls(value)


RandomSource = Union[RngStream, np.random.Generator]


class _Draws:
    """Buffered uniform integers in [0, bound) from a numpy generator."""

    def __init__(self, gen: np.random.Generator, bound: int, chunk: int):
        self.gen, self.bound, self.chunk = gen, bound, max(chunk, 16)
        self.buf: list[int] = []
        self.pos = 0

    def __call__(self) -> int:
        if self.pos == len(self.buf):
            self.buf = self.gen.integers(0, self.bound, size=self.chunk).tolist()
            self.pos = 0
        x = self.buf[self.pos]
        self.pos += 1
        return x


def _step(cur: int, draw: _Draws) -> int:
    # uniform over [n] \ {cur}
    r = draw()
    return r if r < cur else r + 1


def prufer_pairs(n: int, gen: np.random.Generator) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    return decode_pairs(gen.integers(0, n, size=n - 2).tolist(), n)


def aldous_broder_pairs(n: int, gen: np.random.Generator) -> list[tuple[int, int]]:
    draw = _Draws(gen, n - 1, 4 * n)
    cur = int(gen.integers(0, n))
    visited = [False] * n
    visited[cur] = True
    remaining = n - 1
    pairs = []
    while remaining:
        nxt = _step(cur, draw)
        if not visited[nxt]:
            visited[nxt] = True
            remaining -= 1
            pairs.append((cur, nxt) if cur < nxt else (nxt, cur))
        cur = nxt
    return pairs


def wilson_pairs(n: int, gen: np.random.Generator) -> list[tuple[int, int]]:
    draw = _Draws(gen, n - 1, 4 * n)
    root = int(gen.integers(0, n))
    in_tree = [False] * n
    in_tree[root] = True
    succ = [-1] * n
    for start in range(n):
        # random walk until the tree is hit; overwriting succ erases loops
        u = start
        while not in_tree[u]:
            succ[u] = _step(u, draw)
            u = succ[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = succ[u]
    return [(v, succ[v]) if v < succ[v] else (succ[v], v) for v in range(n) if v != root]


_PAIR_SAMPLERS = {
    SamplerKind.PRUFER: prufer_pairs,
    SamplerKind.ALDOUS_BRODER: aldous_broder_pairs,
    SamplerKind.WILSON: wilson_pairs,
}


def sample_pairs(n: int, kind: SamplerKind, gen: np.random.Generator) -> list[tuple[int, int]]:
    """Edge pairs of one uniform tree; no object construction."""
    return _PAIR_SAMPLERS[kind](n, gen)


def _as_generator(rng: RandomSource) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngStream) else rng


def sample_tree(n: int, kind: SamplerKind | str = SamplerKind.PRUFER,
                rng: RandomSource | None = None) -> SpanningTree:
    """Draw one uniformly random spanning tree of K_n.

    ``rng`` may be an :class:`RngStream` (pure: same stream, same tree) or a
    numpy Generator (advanced in place).
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    kind = SamplerKind.parse(kind)
    gen = _as_generator(rng if rng is not None else RngStream(0))
    return tree_validate((Edge(u, v) for u, v in sample_pairs(n, kind, gen)), n)


def sample_k_trees(n: int, k: int, kind: SamplerKind | str = SamplerKind.PRUFER,
                   rng: RngStream | None = None) -> list[SpanningTree]:
    """``k`` independent uniform trees, tree ``i`` drawn from ``rng.child(i)``."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    rng = rng if rng is not None else RngStream(0)
    return [sample_tree(n, kind, rng.child(i)) for i in range(k)]
