"""
Tree-breadth one on bipartite graphs.

A prime bipartite graph has tree-breadth one iff, for one of its two sides,
the closed neighbourhoods of that side's vertices are exactly the maximal
cliques of a chordal completion. General bipartite graphs are handled atom by
atom and the atom certificates glued along the clique separators.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional

import networkx as nx

from .chordal import atoms, constrained_bags
from .conf import setting
from .decomposition import Decomposition, evaluate
from .exceptions import CertificateError, NotBipartiteError
from .graph import Graph
from .recognition import Recognition, glue_atom_decompositions, map_over_atoms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BipartitionWitness:
    side0: FrozenSet[int]
    side1: FrozenSet[int]

    def side_of(self, v: int) -> int:
        return 0 if v in self.side0 else 1


def bipartition(g: Graph) -> BipartitionWitness:
    try:
        colors = nx.bipartite.color(g.to_networkx())
    except nx.NetworkXError as exc:
        raise NotBipartiteError(str(exc)) from exc
    side0 = frozenset(v for v, c in colors.items() if c == 0)
    return BipartitionWitness(side0, frozenset(g.vertices()) - side0)


def normalize_family(family: Iterable[Iterable[int]]) -> List[FrozenSet[int]]:
    """Drop duplicates and sets properly contained in another member."""
    sets = sorted({frozenset(x) for x in family}, key=lambda s: (len(s), sorted(s)))
    return [x for x in sets if not any(x < y for y in sets)]


def _decide_atom(g: Graph, sides: BipartitionWitness) -> Optional[Decomposition]:
    """Star-decomposition of a prime bipartite graph, or None."""
    n = g.n
    if n <= 2 or any(g.degree(v) == n - 1 for v in g.vertices()):
        return Decomposition.from_bags(g, [range(n)])
    for side in (sides.side0, sides.side1):
        family = normalize_family(g.closed_neighborhood(v) for v in sorted(side))
        found = constrained_bags(g, family)
        if found is not None:
            return found
    return None


def recognize_bipartite_tb1(g: Graph, jobs: Optional[int] = None) -> Recognition:
    """Decide tb(g) = 1 for a connected bipartite graph."""
    g.require_connected('recognize_bipartite_tb1')
    sides = bipartition(g)
    jobs = setting('TBONE_JOBS') if jobs is None else jobs
    split = atoms(g)
    pieces = [g.induced_subgraph(a) for a in split.atoms]

    def decide(piece):
        local = BipartitionWitness(
            frozenset(i for i, v in enumerate(piece.vertices) if v in sides.side0),
            frozenset(i for i, v in enumerate(piece.vertices) if v in sides.side1),
        )
        return _decide_atom(piece.graph, local)

    certificates = map_over_atoms(decide, pieces, jobs)
    for i, cert in enumerate(certificates):
        if cert is None:
            logger.info("bipartite: atom %d (%d vertices) has tree-breadth > 1", i, pieces[i].graph.n)
            return Recognition(False, detail=f"atom {sorted(split.atoms[i])} rejects both families")

    star = glue_atom_decompositions(g, split, pieces, certificates)
    if not evaluate(star).is_star:
        raise CertificateError("glued bipartite certificate is not a star-decomposition")
    logger.info("bipartite: tb = 1 over %d atoms", len(pieces))
    return Recognition(True, star)
