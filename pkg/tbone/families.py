"""Named small graphs used by tests, sweeps and the command line."""

import re

import networkx as nx

from .exceptions import GraphFormatError
from .graph import Graph


def cycle(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def path(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def complete(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    """Side one is 0..a-1, side two a..a+b-1."""
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def grid(rows: int, cols: int) -> Graph:
    """Vertex r*cols + c sits at row r, column c."""
    G = nx.grid_2d_graph(rows, cols)
    G = nx.relabel_nodes(G, {(r, c): r * cols + c for r, c in G.nodes()})
    return Graph.from_networkx(G)


def gem() -> Graph:
    """P4 0-1-2-3 plus the universal vertex 4."""
    return Graph(5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)])


def double_apex_cycle() -> Graph:
    """The 4-cycle 0-1-2-3 plus vertices 4 and 5 adjacent to all four."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    edges += [(a, v) for a in (4, 5) for v in range(4)]
    return Graph(6, edges)


def diamond() -> Graph:
    """K4 minus the edge 0-3; 1 and 2 have degree three."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


_PATTERNS = [
    (re.compile(r'^c(\d+)$'), lambda m: cycle(int(m[1]))),
    (re.compile(r'^p(\d+)$'), lambda m: path(int(m[1]))),
    (re.compile(r'^k(\d+)$'), lambda m: complete(int(m[1]))),
    (re.compile(r'^k(\d+),(\d+)$'), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r'^grid(\d+)x(\d+)$'), lambda m: grid(int(m[1]), int(m[2]))),
    (re.compile(r'^gem$'), lambda m: gem()),
    (re.compile(r'^diamond$'), lambda m: diamond()),
    (re.compile(r'^double-apex$'), lambda m: double_apex_cycle()),
]


def by_name(name: str) -> Graph:
    """Build a graph from a short name such as 'c4', 'k3,3' or 'grid2x3'."""
    key = name.strip().lower()
    for pattern, build in _PATTERNS:
        match = pattern.match(key)
        if match:
            return build(match)
    raise GraphFormatError(f"unknown graph family {name!r}")
