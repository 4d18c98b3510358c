"""Edge connectivity by unit-capacity max flow, with a cut certificate."""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass

from .graph_core import Edge, SimpleGraph

BRUTE_FORCE_MAX_EDGES = 20
BRUTE_FORCE_MAX_CUT = 4


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectivityCertificate:
    """``lam`` is the edge connectivity; removing ``witness_cut`` disconnects."""

    lam: int
    witness_cut: frozenset[Edge]
    method: str = "maxflow"

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "method": self.method,
            "witness_cut": [[e.u + 1, e.v + 1] for e in sorted(self.witness_cut)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ConnectivityCertificate":
        cut = frozenset(Edge(u - 1, v - 1) for u, v in d["witness_cut"])
        return cls(d["lambda"], cut, d["method"])


def max_flow(g: SimpleGraph, s: int, t: int, limit: int | None = None) -> tuple[int, list[bool]]:
    """Unit-capacity s-t max flow by BFS augmenting paths.

    Each undirected edge carries one unit in either direction. Returns the
    flow value and, when the flow is maximum, the residual-reachable set
    from ``s`` (the source side of a minimum cut). With ``limit`` the search
    stops as soon as the flow reaches it; the side mask is then meaningless.
    """
    n = g.n
    adj = g.adjacency
    flow: dict[tuple[int, int], int] = {}
    value = 0
    while limit is None or value < limit:
        prev = [-1] * n
        prev[s] = s
        queue = deque([s])
        while queue and prev[t] == -1:
            x = queue.popleft()
            for y in adj[x]:
                # residual capacity of x->y is 1 - flow(x, y)
                if prev[y] == -1 and flow.get((x, y), 0) < 1:
                    prev[y] = x
                    queue.append(y)
        if prev[t] == -1:
            return value, [p != -1 for p in prev]
        y = t
        while y != s:
            x = prev[y]
            flow[(x, y)] = flow.get((x, y), 0) + 1
            flow[(y, x)] = flow.get((y, x), 0) - 1
            y = x
        value += 1
    return value, []


def _cut(g: SimpleGraph, side: list[bool]) -> frozenset[Edge]:
    return frozenset(Edge(u, v) for u in range(g.n) if side[u] for v in g.adjacency[u] if not side[v])


def count_disjoint_paths(g: SimpleGraph, u: int, v: int) -> int:
    """Maximum number of pairwise edge-disjoint u-v paths."""
    if u == v:
        raise ValueError("endpoints must differ")
    for x in (u, v):
        if not 0 <= x < g.n:
            raise ValueError(f"vertex {x} out of range for n={g.n}")
    return max_flow(g, u, v)[0]


def edge_connectivity(g: SimpleGraph) -> ConnectivityCertificate:
    """Global edge connectivity as the minimum over t of maxflow(0, t)."""
    if g.n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    best = None
    best_side: list[bool] = []
    for t in range(1, g.n):
        value, side = max_flow(g, 0, t, limit=best)
        if best is None or value < best:
            best, best_side = value, side
            if best == 0:
                break
    return ConnectivityCertificate(best, _cut(g, best_side), "maxflow")


def _connected_without(n: int, masks: list[int]) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << n) - 1


def brute_force_connectivity(g: SimpleGraph) -> int:
    """Smallest number of edges whose removal disconnects ``g``.

    Tries every edge subset by increasing size. Allowed for at most 20
    edges, or beyond that only while the subset size stays <= 4.
    """
    n = g.n
    if n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    edges = g.edges()
    m = len(edges)
    base = [0] * n
    for e in edges:
        base[e.u] |= 1 << e.v
        base[e.v] |= 1 << e.u
    for j in range(m + 1):
        if m > BRUTE_FORCE_MAX_EDGES and j > BRUTE_FORCE_MAX_CUT:
            raise SizeGuardError(f"{m} edges and no cut of size <= {BRUTE_FORCE_MAX_CUT}")
        for subset in itertools.combinations(edges, j):
            masks = base[:]
            for e in subset:
                masks[e.u] &= ~(1 << e.v)
                masks[e.v] &= ~(1 << e.u)
            if not _connected_without(n, masks):
                return j
    raise AssertionError("removing every edge always disconnects n >= 2 vertices")
