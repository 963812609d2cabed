"""
Leaf-vertices: the vertices the planar recognizer peels off or rewires.

- Type 1: N(v) induces a path a..c with at least four vertices, and some
  d != v is adjacent to all of N(v)
- Type 2: N(v) induces the path (a, b, c)
- Type 3: N(v) = {a, c} with a, c non-adjacent and a common neighbour b != v

The search tests every vertex against each type in turn, straight from the
neighbourhood sets: one call costs a neighbourhood test per vertex and type,
and nothing is kept between calls.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from ..graph import Graph

logger = logging.getLogger(__name__)


class LeafType(int, Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3


@dataclass(frozen=True)
class LeafVertex:
    vertex: int
    kind: LeafType
    # Induced path on N(v) from a to c; (a, b, c) for Types 2 and 3
    path: Tuple[int, ...]
    # Type 1 only
    dominator: Optional[int] = None

    @property
    def a(self) -> int:
        return self.path[0]

    @property
    def b(self) -> int:
        return self.path[1]

    @property
    def c(self) -> int:
        return self.path[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.path[1:-1]

    def to_dict(self):
        out = {'vertex': self.vertex, 'type': int(self.kind), 'path': list(self.path)}
        if self.dominator is not None:
            out['dominator'] = self.dominator
        return out


def induced_path(g: Graph, vertices) -> Optional[Tuple[int, ...]]:
    """The vertices as an induced path read from its smaller end, or None."""
    vertices = frozenset(vertices)
    if len(vertices) < 2:
        return None
    inner = {v: g.neighbors(v) & vertices for v in vertices}
    ends = sorted(v for v in vertices if len(inner[v]) == 1)
    if len(ends) != 2 or any(len(inner[v]) > 2 for v in vertices):
        return None
    path = [ends[0]]
    prev = None
    while len(path) < len(vertices):
        nxt = [w for w in inner[path[-1]] if w != prev]
        if not nxt:
            return None
        prev = path[-1]
        path.append(nxt[0])
    if path[-1] != ends[1]:
        return None
    return tuple(path)


def _type1(g: Graph, v: int) -> Optional[LeafVertex]:
    nbrs = g.neighbors(v)
    if len(nbrs) < 4:
        return None
    path = induced_path(g, nbrs)
    if path is None:
        return None
    for d in sorted(g.common_neighbors(*nbrs)):
        if d != v:
            return LeafVertex(v, LeafType.TYPE1, path, d)
    return None


def _type2(g: Graph, v: int) -> Optional[LeafVertex]:
    if g.degree(v) != 3:
        return None
    path = induced_path(g, g.neighbors(v))
    if path is None:
        return None
    return LeafVertex(v, LeafType.TYPE2, path)


def _type3(g: Graph, v: int) -> Optional[LeafVertex]:
    if g.degree(v) != 2:
        return None
    a, c = sorted(g.neighbors(v))
    if g.has_edge(a, c):
        return None
    middle = sorted(g.common_neighbors(a, c) - {v})
    if not middle:
        return None
    return LeafVertex(v, LeafType.TYPE3, (a, middle[0], c))


_DETECTORS = {
    LeafType.TYPE1: _type1,
    LeafType.TYPE2: _type2,
    LeafType.TYPE3: _type3,
}


def classify(g: Graph, v: int) -> Optional[LeafVertex]:
    """The leaf-vertex witness for v, trying Types 1, 2, 3 in order."""
    for kind in LeafType:
        leaf = _DETECTORS[kind](g, v)
        if leaf is not None:
            return leaf
    return None


def find_leaf_vertex(g: Graph) -> Optional[LeafVertex]:
    """The smallest Type 1 leaf-vertex, else the smallest Type 2, else Type 3."""
    for kind in LeafType:
        detect = _DETECTORS[kind]
        for v in g.vertices():
            leaf = detect(g, v)
            if leaf is not None:
                logger.debug("leaf-vertex %d of type %d", v, kind.value)
                return leaf
    return None
