"""Turn k sampled spanning trees into pairwise edge-disjoint ones.

Every edge of tree ``i`` that already occurs in an earlier tree is swapped
for an edge absent from the running union. The swap reconnects the two
halves of the tree, so each tree stays spanning. When no such edge exists
(all pairs across the cut are taken), the duplicate is kept and logged as a
fallback.
"""
from __future__ import annotations

import math
import warnings
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Collection, NamedTuple, Sequence

from .graph_core import Edge, GraphError, SimpleGraph, SpanningTree, graph_union, tree_validate
from .samplers import RngStream, SamplerKind, sample_k_trees


@dataclass(frozen=True)
class Swap:
    tree: int
    removed: Edge
    inserted: Edge

    @property
    def fallback(self) -> bool:
        return self.removed == self.inserted


@dataclass
class RepairLog:
    n: int
    k: int
    swaps: list[Swap] = field(default_factory=list)

    @property
    def repeats_found(self) -> int:
        return len(self.swaps)

    @property
    def fallbacks(self) -> int:
        return sum(s.fallback for s in self.swaps)

    @property
    def repaired(self) -> int:
        return self.repeats_found - self.fallbacks

    def per_tree(self) -> list[list[Swap]]:
        out: list[list[Swap]] = [[] for _ in range(self.k)]
        for s in self.swaps:
            out[s.tree].append(s)
        return out

    def to_dict(self) -> dict:
        # tree indices and vertices rendered 1-based
        return {
            "n": self.n, "k": self.k,
            "repeats_found": self.repeats_found, "repaired": self.repaired,
            "fallbacks": self.fallbacks,
            "swaps": [{"tree": s.tree + 1,
                       "removed": [s.removed.u + 1, s.removed.v + 1],
                       "inserted": [s.inserted.u + 1, s.inserted.v + 1],
                       "fallback": s.fallback} for s in self.swaps],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RepairLog":
        swaps = [Swap(s["tree"] - 1, Edge(s["removed"][0] - 1, s["removed"][1] - 1),
                      Edge(s["inserted"][0] - 1, s["inserted"][1] - 1)) for s in d["swaps"]]
        log = cls(d["n"], d["k"], swaps)
        if (log.repeats_found, log.repaired, log.fallbacks) != (d["repeats_found"], d["repaired"], d["fallbacks"]):
            raise ValueError("repair log totals disagree with its swap list")
        return log


def _split(n: int, adjacency: Sequence[Collection[int]], e: Edge) -> tuple[list[bool], int]:
    """Side mask of tree - e (True = side of e.u) and the size of that side."""
    side = [False] * n
    side[e.u] = True
    size = 1
    queue = deque([e.u])
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if side[y] or (x == e.u and y == e.v):
                continue
            side[y] = True
            size += 1
            queue.append(y)
    return side, size


def split_components(tree: SpanningTree, e: Edge) -> tuple[frozenset[int], frozenset[int]]:
    """The two components of ``tree - e``; the first holds ``e.u``."""
    if e not in tree.edges:
        raise GraphError(f"{e} is not an edge of the tree")
    side, _ = _split(tree.n, tree.adjacency, e)
    c1 = frozenset(v for v in range(tree.n) if side[v])
    return c1, frozenset(range(tree.n)) - c1


def _replacement(g_adj: Sequence[Collection[int]], side: list[bool], c2_size: int, e: Edge) -> Edge:
    n = len(side)
    best_v, best_deg = -1, math.inf
    for v in range(n):
        if not side[v]:
            continue
        deg = sum(1 for w in g_adj[v] if not side[w])
        if deg < best_deg:
            best_v, best_deg = v, deg
            if deg == 0:
                break
    if best_deg == c2_size:
        return e
    nbrs = g_adj[best_v]
    w = next(w for w in range(n) if not side[w] and w not in nbrs)
    return Edge(best_v, w)


def get_replacement_edge(g: SimpleGraph, tree: SpanningTree, e: Edge) -> Edge:
    """Edge to put in place of ``e`` in ``tree`` without reusing an edge of ``g``.

    Picks the vertex of the ``e.u`` side with the fewest ``g``-neighbours on
    the other side (smallest index on ties) and joins it to its
    smallest-index non-neighbour there. Returns ``e`` itself when ``g``
    already contains every edge across the cut.
    """
    if e not in tree.edges:
        raise GraphError(f"{e} is not an edge of the tree")
    if g.n != tree.n:
        raise GraphError("graph and tree have different vertex counts")
    side, c1_size = _split(tree.n, tree.adjacency, e)
    return _replacement(g.adjacency, side, tree.n - c1_size, e)


def disjointify(trees: Sequence[SpanningTree]) -> tuple[list[SpanningTree], RepairLog]:
    """Repair repeated edges tree by tree; the first tree is never touched.

    Repeats of tree ``i`` are the edges it shares with the already-repaired
    trees ``0..i-1``, handled in sorted edge order. Each inserted edge is
    added to the running union immediately so no two repairs pick the same
    edge. With zero fallbacks the returned trees are pairwise edge-disjoint.
    """
    if not trees:
        raise GraphError("need at least one tree")
    n = trees[0].n
    if any(t.n != n for t in trees):
        raise GraphError("trees are defined on different vertex counts")
    log = RepairLog(n, len(trees))
    union_adj: list[set[int]] = [set(a) for a in graph_union(trees).adjacency]
    earlier: Counter = Counter(trees[0].edges)
    out = [trees[0]]
    for i, tree in enumerate(trees[1:], start=1):
        repeats = sorted(e for e in tree.edges if earlier[e])
        if not repeats:
            out.append(tree)
            earlier.update(tree.edges)
            continue
        adj = [set(a) for a in tree.adjacency]
        edges = set(tree.edges)
        for e in repeats:
            side, c1_size = _split(n, adj, e)
            new = _replacement(union_adj, side, n - c1_size, e)
            log.swaps.append(Swap(i, e, new))
            if new == e:
                continue
            edges.discard(e)
            adj[e.u].discard(e.v)
            adj[e.v].discard(e.u)
            edges.add(new)
            adj[new.u].add(new.v)
            adj[new.v].add(new.u)
            union_adj[new.u].add(new.v)
            union_adj[new.v].add(new.u)
            if __debug__:
                tree_validate(edges, n)
        repaired = tree_validate(edges, n)
        out.append(repaired)
        earlier.update(repaired.edges)
    return out, log


class Generated(NamedTuple):
    graph: SimpleGraph
    log: RepairLog
    trees: list[SpanningTree]


def generate_k_connected(n: int, k: int, kind: SamplerKind | str = SamplerKind.PRUFER,
                         rng: RngStream | None = None) -> Generated:
    """Sample k uniform trees of K_n, make them edge-disjoint, return their union.

    K_n holds k disjoint spanning trees only if k(n-1) <= n(n-1)/2, i.e.
    k <= n/2; beyond that a warning is issued and fallbacks are certain.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    if k * (n - 1) > n * (n - 1) // 2:
        warnings.warn(f"k={k} edge-disjoint spanning trees do not fit in K_{n}; "
                      "duplicates will remain", RuntimeWarning, stacklevel=2)
    trees = sample_k_trees(n, k, kind, rng if rng is not None else RngStream(0))
    repaired, log = disjointify(trees)
    return Generated(graph_union(repaired), log, repaired)
