"""
Shared pieces of the tree-breadth-one recognizers.

Both recognizers split the input along clique minimal separators, decide each
atom on its own, and glue the atom certificates back together: a bag holding
the separator on one side is joined to a bag holding it on the other.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from .chordal import AtomDecomposition
from .decomposition import Decomposition, helly_intersection, reduce_to_star
from .exceptions import CertificateError
from .graph import Graph, Induced

logger = logging.getLogger(__name__)


@dataclass
class Recognition:
    """Answer of a recognizer; a yes carries a star-decomposition of the input."""
    answer: bool
    decomposition: Optional[Decomposition] = None
    detail: str = ''
    traces: List = field(default_factory=list)

    def __bool__(self):
        return self.answer


def map_over_atoms(func: Callable, items: Sequence, jobs: int = 1) -> List:
    """Apply func to every item, in order, optionally on a thread pool."""
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def glue_atom_decompositions(g: Graph, decomposition: AtomDecomposition,
                             pieces: Sequence[Induced], certificates: Sequence[Decomposition]) -> Decomposition:
    """
    Join per-atom star-decompositions into one of g.

    pieces[i] is the induced subgraph of atom i and certificates[i] a
    decomposition of pieces[i].graph. The result is reduced, so subset bags
    created by gluing disappear.
    """
    bags = {}
    edges = []
    offsets = []
    next_id = 0
    for piece, cert in zip(pieces, certificates):
        local = {}
        for t in cert.nodes:
            local[t] = next_id
            bags[next_id] = {piece.vertices[v] for v in cert.bags[t]}
            next_id += 1
        edges.extend((local[a], local[b]) for a, b in cert.edges)
        offsets.append(local)
    combined = Decomposition(g, bags, edges)
    for i, j, k in decomposition.glue:
        s = decomposition.separators[k]
        left = _node_holding(combined, offsets[i], s)
        right = _node_holding(combined, offsets[j], s)
        if left is None or right is None:
            raise CertificateError(f"no bag holds separator {sorted(s)}")
        edges.append((left, right))
    combined = Decomposition(g, bags, edges)
    return reduce_to_star(combined)


def _node_holding(d: Decomposition, local, s):
    sub = Decomposition(d.host, {t: d.bags[t] for t in local.values()})
    return helly_intersection(sub, s)
