import itertools

import pytest

from ksplicer.graph_core import GraphError, SimpleGraph, tree_validate

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def trees_by_subsets(n):
    """All spanning trees of K_n from (n-1)-edge subsets; avoids Prüfer codes."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for subset in itertools.combinations(pairs, n - 1):
        try:
            out.append(tree_validate(subset, n))
        except GraphError:
            pass
    return out


def complete_graph(n):
    return SimpleGraph.from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n):
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def k4():
    return complete_graph(4)
