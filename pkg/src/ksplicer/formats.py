"""Graph serialization: edge list, JSON and DOT. Vertices are 1-based on disk."""
from __future__ import annotations

import json
import re

from .graph_core import Edge, GraphError, SimpleGraph

FORMATS = ("edgelist", "json", "dot")

_HEADER = re.compile(r"#\s*n\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$")


class FormatError(GraphError):
    pass


def write_edgelist(g: SimpleGraph) -> str:
    lines = [f"# n={g.n} m={g.edge_count}"]
    lines += [f"{e.u + 1} {e.v + 1}" for e in g.edges()]
    return "\n".join(lines) + "\n"


def read_edgelist(text: str) -> SimpleGraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty edge list")
    header = _HEADER.match(lines[0])
    if not header:
        raise FormatError(f"bad header line {lines[0]!r}, expected '# n=<n> m=<m>'")
    n, m = int(header.group(1)), int(header.group(2))
    edges = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FormatError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex out of range in {ln!r} for n={n}")
        edges.append(Edge(u - 1, v - 1))
    if len(set(edges)) != m:
        raise FormatError(f"header says m={m}, found {len(set(edges))} distinct edges")
    return SimpleGraph.from_edges(n, edges)


def graph_to_dict(g: SimpleGraph) -> dict:
    return {"n": g.n, "m": g.edge_count, "edges": [[e.u + 1, e.v + 1] for e in g.edges()]}


def graph_from_dict(d: dict) -> SimpleGraph:
    try:
        n = int(d["n"])
        edges = [Edge(int(u) - 1, int(v) - 1) for u, v in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph JSON: {exc}") from exc
    g = SimpleGraph.from_edges(n, edges)
    if "m" in d and d["m"] != g.edge_count:
        raise FormatError(f"JSON says m={d['m']}, found {g.edge_count} distinct edges")
    return g


def write_json(g: SimpleGraph) -> str:
    return json.dumps(graph_to_dict(g)) + "\n"


def read_json(text: str) -> SimpleGraph:
    try:
        return graph_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def write_dot(g: SimpleGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v + 1};" for v in range(g.n)]
    lines += [f"  {e.u + 1} -- {e.v + 1};" for e in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r"^(\d+)\s*--\s*(\d+)\s*;?$")
_DOT_NODE = re.compile(r"^(\d+)\s*;?$")


def read_dot(text: str) -> SimpleGraph:
    """Parse the undirected subset written by :func:`write_dot`."""
    body = text.strip()
    if not body.startswith("graph") or not body.endswith("}"):
        raise FormatError("expected an undirected 'graph { ... }' block")
    inner = body[body.index("{") + 1:-1]
    n = 0
    edges = []
    for stmt in inner.replace("\n", ";").split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        if m := _DOT_EDGE.match(stmt):
            u, v = int(m.group(1)), int(m.group(2))
            edges.append(Edge(u - 1, v - 1))
            n = max(n, u, v)
        elif m := _DOT_NODE.match(stmt):
            n = max(n, int(m.group(1)))
        else:
            raise FormatError(f"unsupported DOT statement {stmt!r}")
    return SimpleGraph.from_edges(n, edges)


WRITERS = {"edgelist": write_edgelist, "json": write_json, "dot": write_dot}


def dumps(g: SimpleGraph, fmt: str) -> str:
    return WRITERS[fmt](g)


def loads(text: str) -> SimpleGraph:
    """Parse any supported format, detected from the first character."""
    head = text.lstrip()
    if head.startswith("{"):
        return read_json(text)
    if head.startswith("graph"):
        return read_dot(text)
    return read_edgelist(text)
