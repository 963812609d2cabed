"""
Immutable simple graphs with dense integer vertex ids.

Everything else in the toolkit is built on this module:
- Graph: adjacency as frozensets, hop distances cached on first use
- DistanceMatrix: read-only numpy matrix with a sentinel for unreachable pairs
- contraction and induced subgraphs, both returning id maps
- edge-list text format, DOT export, networkx conversion
"""

import json
import logging
from collections import namedtuple
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .exceptions import (
    DisconnectedGraphError,
    GraphFormatError,
    NotAnEdgeError,
    SelfLoopError,
)

logger = logging.getLogger(__name__)

UNREACHABLE = -1

Edge = Tuple[int, int]

# graph: the contracted Graph; id_map: old vertex id -> new vertex id
Contraction = namedtuple('Contraction', ['graph', 'id_map'])

# graph: the induced Graph; vertices: new vertex id -> original vertex id
Induced = namedtuple('Induced', ['graph', 'vertices'])


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class DistanceMatrix:
    """All-pairs hop distances. Unreachable pairs hold UNREACHABLE."""

    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.int64)
        matrix.setflags(write=False)
        self.matrix = matrix

    def __len__(self):
        return self.matrix.shape[0]

    def __getitem__(self, pair):
        u, v = pair
        return int(self.matrix[u, v])

    def ball(self, v: int, r: int) -> FrozenSet[int]:
        row = self.matrix[v]
        return frozenset(int(x) for x in np.flatnonzero((row >= 0) & (row <= r)))

    def eccentricity_to(self, v: int, vertices: Iterable[int]) -> int:
        """Largest distance from v to the given vertices (UNREACHABLE if any is)."""
        idx = sorted(vertices)
        if not idx:
            return 0
        row = self.matrix[v, idx]
        if (row < 0).any():
            return UNREACHABLE
        return int(row.max())

    def radius(self, vertices: Iterable[int]) -> Tuple[int, Optional[int]]:
        """
        Smallest r such that some vertex of the graph is within r of every
        given vertex, with the smallest such center.

        Returns (UNREACHABLE, None) when the set spans several components.
        """
        idx = sorted(vertices)
        if not idx:
            return 0, None
        block = self.matrix[:, idx]
        reachable = (block >= 0).all(axis=1)
        if not reachable.any():
            return UNREACHABLE, None
        ecc = np.where(reachable, block.max(axis=1), np.iinfo(np.int64).max)
        center = int(np.argmin(ecc))
        return int(ecc[center]), center

    def diameter(self, vertices: Iterable[int]) -> int:
        idx = sorted(vertices)
        if len(idx) < 2:
            return 0
        block = self.matrix[np.ix_(idx, idx)]
        if (block < 0).any():
            return UNREACHABLE
        return int(block.max())

    def is_symmetric(self) -> bool:
        return bool((self.matrix == self.matrix.T).all())


class Graph:
    """
    Finite simple undirected graph on vertices 0..n-1.

    Instances are immutable and hashable. Connectivity is not required at
    construction; algorithms that need it call require_connected().
    """

    def __init__(self, n: int, edges: Iterable[Edge] = (), labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphFormatError(f"negative vertex count {n}")
        adj: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: Tuple[FrozenSet[int], ...] = tuple(frozenset(a) for a in adj)
        if labels is not None and len(labels) != n:
            raise GraphFormatError(f"{len(labels)} labels for {n} vertices")
        self._labels = tuple(str(x) for x in labels) if labels is not None else None

    # ----- basic structure -----

    @property
    def n(self) -> int:
        return len(self._adj)

    vertex_count = n

    @property
    def labels(self) -> Tuple[str, ...]:
        if self._labels is None:
            return tuple(str(v) for v in range(self.n))
        return self._labels

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> FrozenSet[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self._adj[u] if u < v))

    @property
    def m(self) -> int:
        return len(self.edges)

    edge_count = m

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def common_neighbors(self, *vertices: int) -> FrozenSet[int]:
        result = self._adj[vertices[0]]
        for v in vertices[1:]:
            result = result & self._adj[v]
        return result

    def dominates(self, v: int, vertices: Iterable[int]) -> bool:
        """True if every given vertex is v or a neighbour of v."""
        closed = self.closed_neighborhood(v)
        return all(x in closed for x in vertices)

    # ----- connectivity and distances -----

    def components(self, within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
        """Connected components of the subgraph induced by `within` (default: all), by smallest vertex."""
        view = self._networkx if within is None else self._networkx.subgraph(within)
        return sorted((frozenset(c) for c in nx.connected_components(view)), key=min)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def require_connected(self, what: str = 'operation') -> None:
        if not self.is_connected():
            raise DisconnectedGraphError(f"{what} requires a connected graph")

    @cached_property
    def distances(self) -> DistanceMatrix:
        n = self.n
        matrix = np.full((n, n), UNREACHABLE, dtype=np.int64)
        for source, lengths in nx.all_pairs_shortest_path_length(self.to_networkx()):
            for target, d in lengths.items():
                matrix[source, target] = d
        return DistanceMatrix(matrix)

    def distance(self, u: int, v: int) -> int:
        return self.distances[u, v]

    def ball(self, v: int, r: int) -> FrozenSet[int]:
        return self.distances.ball(v, r)

    # ----- derived graphs -----

    def induced_subgraph(self, vertices: Iterable[int]) -> Induced:
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = [self.labels[v] for v in keep] if self._labels is not None else None
        return Induced(Graph(len(keep), edges, labels), tuple(keep))

    def contract_edge(self, u: int, v: int) -> Contraction:
        """
        Merge the endpoints of edge uv into the lower id.

        Vertex ids above the removed one shift down by one; id_map maps every
        old id (both endpoints included) to its new id.
        """
        if not self.has_edge(u, v):
            raise NotAnEdgeError(f"({u}, {v}) is not an edge")
        keep, drop = min(u, v), max(u, v)
        id_map = {}
        for x in self.vertices():
            if x == drop:
                id_map[x] = keep
            else:
                id_map[x] = x if x < drop else x - 1
        edges = set()
        for a, b in self.edges:
            na, nb = id_map[a], id_map[b]
            if na != nb:
                edges.add(_normalize_edge(na, nb))
        labels = None
        if self._labels is not None:
            labels = [lab for x, lab in enumerate(self._labels) if x != drop]
        return Contraction(Graph(self.n - 1, edges, labels), id_map)

    def with_edges(self, extra: Iterable[Edge]) -> 'Graph':
        return Graph(self.n, list(self.edges) + list(extra), self._labels)

    def complement_pairs(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if v not in self._adj[u]]

    # ----- conversion -----

    @cached_property
    def _networkx(self) -> nx.Graph:
        return nx.freeze(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices())
        G.add_edges_from(self.edges)
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> 'Graph':
        """Relabel G's nodes densely, in sorted order when the nodes are sortable."""
        nodes = list(G.nodes())
        try:
            nodes = sorted(nodes)
        except TypeError:
            pass
        index = {x: i for i, x in enumerate(nodes)}
        if any(u == v for u, v in G.edges()):
            raise SelfLoopError("networkx graph has a self-loop")
        return cls(len(nodes), [(index[u], index[v]) for u, v in G.edges()], [str(x) for x in nodes])

    # ----- value semantics -----

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return g.distances


def contract_edge(g: Graph, e: Edge) -> Contraction:
    return g.contract_edge(*e)


# ===== Edge-list text format =====

def _content_lines(source: str):
    """Yield (line_number, tokens) for non-blank, non-comment lines."""
    for number, raw in enumerate(source.splitlines(), start=1):
        text = raw.split('#', 1)[0].strip()
        if text:
            yield number, text.split()


def _parse_ints(tokens, count, number):
    if len(tokens) != count:
        raise GraphFormatError(f"expected {count} integers, got {len(tokens)}", number)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {' '.join(tokens)!r}", number) from None


def parse_edge_block(lines) -> Graph:
    """Build a Graph from an iterator of (line_number, tokens) pairs."""
    lines = list(lines)
    if not lines:
        raise GraphFormatError("missing 'n m' header")
    number, tokens = lines[0]
    n, m = _parse_ints(tokens, 2, number)
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", number)
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for number, tokens in body:
        u, v = _parse_ints(tokens, 2, number)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", number)
        if u == v:
            raise SelfLoopError(f"self-loop on vertex {u}", number)
        edges.append((u, v))
    return Graph(n, edges)


def load_graph(source: str) -> Graph:
    """Parse the edge-list format: an 'n m' header, then m 'u v' lines."""
    return parse_edge_block(_content_lines(source))


def dump_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return '\n'.join(lines) + '\n'


def to_dot(g: Graph, name: str = 'G') -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in g.vertices() if g.degree(v) == 0)
    lines.extend(f"  {u} -- {v};" for u, v in g.edges)
    lines.append('}')
    return '\n'.join(lines) + '\n'


def relabel_map(vertices: Sequence[int]) -> Dict[int, int]:
    """Inverse of an Induced.vertices tuple: original id -> induced id."""
    return {v: i for i, v in enumerate(vertices)}


def dump_graph_json(g: Graph) -> str:
    return json.dumps({'n': g.n, 'edges': [[u, v] for u, v in g.edges]})


def load_graph_json(text: str) -> Graph:
    """Inverse of dump_graph_json."""
    try:
        data = json.loads(text)
        n = int(data['n'])
        edges = [(int(u), int(v)) for u, v in data.get('edges', [])]
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from exc
    return Graph(n, edges)
