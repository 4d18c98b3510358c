import math
from collections import Counter

import numpy as np
import pytest

from ksplicer.graph_core import Edge
from ksplicer.prufer import all_trees
from ksplicer.samplers import (
    RngStream, SamplerKind, sample_k_trees, sample_pairs, sample_tree, splitmix64,
)

KINDS = list(SamplerKind)


def test_splitmix_reference_values():
    # first outputs of the reference splitmix64 generator seeded with 0
    state = 0
    outs = []
    for _ in range(3):
        outs.append(splitmix64(state))
        state = (state + 0x9E3779B97F4A7C15) % 2 ** 64
    assert outs == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_streams_are_reproducible_and_distinct():
    a = RngStream(42, 3).generator().integers(0, 2 ** 32, size=8)
    b = RngStream(42, 3).generator().integers(0, 2 ** 32, size=8)
    c = RngStream(42, 4).generator().integers(0, 2 ** 32, size=8)
    assert (a == b).all() and not (a == c).all()
    assert RngStream(1).child(0) != RngStream(1).child(1)


def test_seed_must_be_u64():
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(2 ** 64)


@pytest.mark.parametrize("kind", KINDS)
def test_two_vertices(kind):
    assert sample_tree(2, kind, RngStream(5)).edges == {Edge(0, 1)}


def test_rejects_tiny_n():
    with pytest.raises(ValueError):
        sample_tree(1)
    with pytest.raises(ValueError):
        sample_k_trees(4, 0)


def test_kind_parsing():
    assert SamplerKind.parse("aldous-broder") is SamplerKind.ALDOUS_BRODER
    with pytest.raises(ValueError):
        SamplerKind.parse("kruskal")


@pytest.mark.parametrize("kind", KINDS)
def test_k_trees_structure_and_determinism(kind):
    trees = sample_k_trees(5, 3, kind, RngStream(9))
    assert len(trees) == 3 and all(len(t.edges) == 4 for t in trees)
    again = sample_k_trees(5, 3, kind, RngStream(9))
    assert [t.sorted_edges() for t in trees] == [t.sorted_edges() for t in again]


def _frequencies(n, kind, draws, seed):
    gen = RngStream(seed).generator()
    return Counter(frozenset(sample_pairs(n, kind, gen)) for _ in range(draws))


@pytest.mark.parametrize("kind", KINDS)
def test_three_vertices_uniform(kind):
    counts = _frequencies(3, kind, 30_000, seed=3)
    assert len(counts) == 3
    for c in counts.values():
        assert abs(c / 30_000 - 1 / 3) <= 0.01


@pytest.mark.parametrize("kind", KINDS)
def test_four_vertices_exact_support(kind):
    draws = 40_000
    counts = _frequencies(4, kind, draws, seed=4)
    support = {frozenset((e.u, e.v) for e in t.edges) for t in all_trees(4)}
    assert set(counts) == support
    p = 1 / 16
    se = math.sqrt(p * (1 - p) / draws)
    assert all(abs(c / draws - p) <= 5 * se for c in counts.values())


def test_edge_probability_at_ten_vertices():
    trees = sample_k_trees(10, 100_000, SamplerKind.PRUFER, RngStream(11))
    freq = sum(Edge(0, 1) in t.edges for t in trees) / len(trees)
    assert abs(freq - 0.2) <= 0.005


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [5, 10, 50])
def test_edge_and_pair_marginals(kind, n):
    draws = 20_000 if n < 50 else 6_000
    gen = RngStream(100 + n).generator()
    e, adj, non = (0, 1), (0, 2), (n - 2, n - 1)
    hits = np.zeros(4)
    for _ in range(draws):
        t = set(sample_pairs(n, kind, gen))
        hits += (e in t, non in t, e in t and adj in t, e in t and non in t)
    expected = [2 / n, 2 / n, 3 / n ** 2, 4 / n ** 2]
    for h, p in zip(hits, expected):
        se = math.sqrt(p * (1 - p) / draws)
        assert abs(h / draws - p) <= 5 * se, (kind, n, h / draws, p)
