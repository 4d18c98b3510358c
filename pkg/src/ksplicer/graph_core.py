"""Vertex, edge, tree and graph types shared across the package.

Vertices are 0-based integers internally; the text formats in
:mod:`ksplicer.formats` render them 1-based.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for malformed graph or tree input."""


class SelfLoopError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class WrongEdgeCountError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class TooFewEdgesError(WrongEdgeCountError, DisconnectedError):
    """Fewer than n - 1 edges: wrong count and necessarily disconnected."""


@dataclass(frozen=True, order=True, slots=True)
class Edge:
    """Undirected edge stored with ``u < v``.

    ``Edge(3, 1) == Edge(1, 3)``; the constructor canonicalizes.
    """

    u: int
    v: int

    def __post_init__(self):
        u, v = int(self.u), int(self.v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise VertexRangeError(f"negative vertex in edge ({u}, {v})")
        if u > v:
            u, v = v, u
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of {self}")

    def adjacent_to(self, other: "Edge") -> bool:
        """True when the two (distinct) edges share exactly one endpoint."""
        return self != other and bool({self.u, self.v} & {other.u, other.v})

    def __iter__(self):
        yield self.u
        yield self.v


def edge_new(u: int, v: int, n: int | None = None) -> Edge:
    e = Edge(u, v)
    if n is not None and e.v >= n:
        raise VertexRangeError(f"vertex {e.v} out of range for n={n}")
    return e


def _components(n: int, adj: Sequence[Iterable[int]]) -> list[int]:
    """Component label per vertex (labels are the smallest vertex reached first)."""
    comp = [-1] * n
    for s in range(n):
        if comp[s] != -1:
            continue
        comp[s] = s
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if comp[y] == -1:
                    comp[y] = s
                    queue.append(y)
    return comp


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree of K_n. Build through :func:`tree_validate`."""

    n: int
    edges: frozenset[Edge]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __contains__(self, e: Edge) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)


def _adjacency(n: int, edges: Iterable[Edge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    for nbrs in adj:
        nbrs.sort()
    return adj


def tree_validate(edges: Iterable[Edge | tuple[int, int]], n: int) -> SpanningTree:
    """Check that ``edges`` span [n] as a tree and wrap them.

    Raises VertexRangeError, WrongEdgeCountError or DisconnectedError.
    """
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    es = frozenset(e if isinstance(e, Edge) else Edge(*e) for e in edges)
    for e in es:
        if e.v >= n:
            raise VertexRangeError(f"vertex {e.v} out of range for n={n}")
    if len(es) < n - 1:
        raise TooFewEdgesError(f"expected {n - 1} edges, got {len(es)}")
    if len(es) > n - 1:
        raise WrongEdgeCountError(f"expected {n - 1} edges, got {len(es)}")
    adj = _adjacency(n, es)
    comp = _components(n, adj)
    if any(c != 0 for c in comp):
        raise DisconnectedError("edge set does not connect all vertices")
    return SpanningTree(n, es, tuple(tuple(a) for a in adj))


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    adjacency: tuple[frozenset[int], ...] = field(repr=False)
    edge_count: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge | tuple[int, int]]) -> "SimpleGraph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            e = e if isinstance(e, Edge) else Edge(*e)
            if e.v >= n:
                raise VertexRangeError(f"vertex {e.v} out of range for n={n}")
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return cls._from_sets(n, adj)

    @classmethod
    def _from_sets(cls, n: int, adj: Sequence[set[int]]) -> "SimpleGraph":
        frozen = tuple(frozenset(a) for a in adj)
        return cls(n, frozen, sum(len(a) for a in frozen) // 2)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[Edge]:
        return [Edge(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def with_edge(self, e: Edge) -> "SimpleGraph":
        adj = [set(a) for a in self.adjacency]
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
        return SimpleGraph._from_sets(self.n, adj)

    def without_edges(self, removed: Iterable[Edge]) -> "SimpleGraph":
        adj = [set(a) for a in self.adjacency]
        for e in removed:
            adj[e.u].discard(e.v)
            adj[e.v].discard(e.u)
        return SimpleGraph._from_sets(self.n, adj)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return all(c == 0 for c in _components(self.n, self.adjacency))


def graph_union(trees: Sequence[SpanningTree]) -> SimpleGraph:
    """Simple graph on the union of the trees' edge sets; duplicates collapse."""
    if not trees:
        raise GraphError("graph_union needs at least one tree")
    n = trees[0].n
    if any(t.n != n for t in trees):
        raise GraphError("trees are defined on different vertex counts")
    return SimpleGraph.from_edges(n, (e for t in trees for e in t.edges))
