"""
Plane embeddings, intermediate graphs and separator cycles.

The embedding comes from networkx.check_planarity (left-right planarity test);
faces are read off the rotation system by walking every half-edge once.
"""

import logging
from collections import namedtuple
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from ..chordal import is_minimal_separator
from ..exceptions import NotMinimalSeparatorError, NotPlanarError, PreconditionError
from ..graph import Graph

logger = logging.getLogger(__name__)

# graph: original vertices 0..n-1 then one vertex per face; faces: face id -> vertex id in graph
IntermediateGraph = namedtuple('IntermediateGraph', ['graph', 'face_vertices'])


@dataclass(frozen=True)
class PlaneEmbedding:
    graph: Graph
    # vertex -> neighbours in clockwise order
    rotation: Dict[int, Tuple[int, ...]]
    # boundary walks, each a tuple of vertices in traversal order
    faces: Tuple[Tuple[int, ...], ...]
    outer: int

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + self.face_count

    def face_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(f) for f in self.faces]


def _faces(P: nx.PlanarEmbedding) -> List[Tuple[int, ...]]:
    seen = set()
    faces = []
    for v, w in sorted(P.edges()):
        if (v, w) in seen:
            continue
        walk = P.traverse_face(v, w, mark_half_edges=seen)
        faces.append(tuple(walk))
    return faces


def planar_embed(g: Graph) -> Optional[PlaneEmbedding]:
    """A plane embedding of the connected graph g, or None when g is not planar."""
    g.require_connected('planar_embed')
    is_planar, P = nx.check_planarity(g.to_networkx())
    if not is_planar:
        return None
    rotation = {v: tuple(P.neighbors_cw_order(v)) for v in g.vertices()}
    faces = _faces(P)
    if not faces:
        # a single vertex still bounds the unbounded face
        faces = [tuple(g.vertices())]
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    return PlaneEmbedding(g, rotation, tuple(faces), outer)


def require_embedding(g: Graph) -> PlaneEmbedding:
    e = planar_embed(g)
    if e is None:
        raise NotPlanarError(f"{g!r} is not planar")
    return e


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(g.to_networkx())[0]


def intermediate_graph(e: PlaneEmbedding) -> IntermediateGraph:
    """Original edges plus one vertex per face, joined to every vertex on that face."""
    n = e.graph.n
    edges = list(e.graph.edges)
    face_vertices = {}
    for i, face in enumerate(e.faces):
        f = n + i
        face_vertices[i] = f
        edges.extend((v, f) for v in sorted(set(face)))
    labels = list(e.graph.labels) + [f"face{i}" for i in range(len(e.faces))]
    return IntermediateGraph(Graph(n + len(e.faces), edges, labels), face_vertices)


def make_separator_cycle(g: Graph, s: Iterable[int], embedding: Optional[PlaneEmbedding] = None) -> Graph:
    """
    Planar supergraph of g in which the minimal separator s induces an edge or a cycle.

    Every face meeting s in exactly two vertices contributes the chord between
    them. `embedding` defaults to a fresh embedding of g.
    """
    s = frozenset(s)
    if not nx.is_biconnected(g.to_networkx()):
        raise PreconditionError("make_separator_cycle needs a biconnected graph")
    if not is_minimal_separator(g, s):
        raise NotMinimalSeparatorError(f"{sorted(s)} is not a minimal separator")
    e = embedding if embedding is not None else require_embedding(g)
    chords = set()
    for face in e.face_sets():
        meet = sorted(face & s)
        if len(meet) == 2 and not g.has_edge(*meet):
            chords.add(tuple(meet))
        elif len(meet) > 2:
            logger.warning("face meets separator %s in %d vertices", sorted(s), len(meet))
    logger.debug("make_separator_cycle: %d chords for %s", len(chords), sorted(s))
    return g.with_edges(chords)


def induces_cycle(g: Graph, s: Iterable[int]) -> bool:
    """Whether s induces a single edge (|s| = 2) or a chordless cycle."""
    s = frozenset(s)
    if len(s) == 2:
        return g.has_edge(*s)
    sub = g.induced_subgraph(s).graph
    return sub.is_connected() and all(sub.degree(v) == 2 for v in sub.vertices())


def cycle_neighbors(g: Graph, s: Iterable[int], v: int) -> List[int]:
    """Neighbours of v inside s, smallest first."""
    return sorted(g.neighbors(v) & frozenset(s))
