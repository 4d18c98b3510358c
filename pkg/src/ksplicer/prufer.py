"""Prüfer codes for labeled trees on [n] and the degree-count formula."""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Iterator, Sequence

from .graph_core import Edge, GraphError, SpanningTree, tree_validate


class PruferError(GraphError):
    pass


def _check(seq: Sequence[int], n: int) -> None:
    if n < 2:
        raise PruferError(f"n must be at least 2, got {n}")
    if len(seq) != n - 2:
        raise PruferError(f"sequence length {len(seq)} != n - 2 = {n - 2}")
    for x in seq:
        if not 0 <= x < n:
            raise PruferError(f"label {x} out of range for n={n}")


def decode_pairs(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Linear-time decode to canonical ``(u, v)`` pairs, no validation.

    Hot path for Monte Carlo loops; :func:`prufer_decode` is the checked API.
    """
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ptr = degree.index(1)
    leaf = ptr
    pairs = []
    for v in seq:
        pairs.append((leaf, v) if leaf < v else (v, leaf))
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    pairs.append((leaf, n - 1))
    return pairs


def prufer_decode(seq: Sequence[int], n: int) -> SpanningTree:
    _check(seq, n)
    return tree_validate((Edge(u, v) for u, v in decode_pairs(seq, n)), n)


def prufer_encode(tree: SpanningTree) -> list[int]:
    n = tree.n
    if n < 2:
        raise PruferError("trees on fewer than 2 vertices have no code")
    # root at n - 1 so that vertex is never removed as a leaf
    parent = [-1] * n
    stack = [n - 1]
    seen = [False] * n
    seen[n - 1] = True
    while stack:
        x = stack.pop()
        for y in tree.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                stack.append(y)
    degree = [len(a) for a in tree.adjacency]
    ptr = degree.index(1)
    leaf = ptr
    seq = []
    for _ in range(n - 2):
        nxt = parent[leaf]
        seq.append(nxt)
        degree[nxt] -= 1
        if degree[nxt] == 1 and nxt < ptr:
            leaf = nxt
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    return seq


def count_trees_with_degree(n: int, d: int) -> int:
    """Number of labeled trees on [n] in which a fixed vertex has degree ``d``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 1 <= d <= n - 1:
        raise ValueError(f"degree {d} outside [1, {n - 1}]")
    return comb(n - 2, d - 1) * (n - 1) ** (n - 1 - d)


def all_sequences(n: int) -> Iterator[tuple[int, ...]]:
    return product(range(n), repeat=n - 2)


def all_trees(n: int) -> Iterator[SpanningTree]:
    """Every labeled tree on [n], in lexicographic order of its code."""
    for seq in all_sequences(n):
        yield prufer_decode(seq, n)
