"""
Chordal graphs and clique separators.

- Lex-BFS ordering and the perfect elimination ordering check
- maximal cliques and clique trees of chordal graphs
- clique-minimal-separator decomposition into atoms, driven by a minimal
  triangulation (MCS-M, networkx.complete_to_chordal_graph)
- the constrained-bag problem: is there a tree decomposition whose bags are
  exactly a given family?
"""

import logging
from collections import namedtuple
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .decomposition import Decomposition
from .exceptions import NotChordalError, PreconditionError
from .graph import Graph

logger = logging.getLogger(__name__)

ChordalityResult = namedtuple('ChordalityResult', ['chordal', 'ordering'])


@dataclass(frozen=True)
class EliminationOrdering:
    order: Tuple[int, ...]
    is_perfect: bool


@dataclass
class AtomDecomposition:
    """Atoms of a graph, the clique separators used, and the glue tree between atoms."""
    atoms: List[FrozenSet[int]] = field(default_factory=list)
    separators: List[FrozenSet[int]] = field(default_factory=list)
    # (atom index, atom index, separator index)
    glue: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def is_prime(self) -> bool:
        return len(self.atoms) == 1

    def to_dict(self):
        return {
            'atoms': [sorted(a) for a in self.atoms],
            'separators': [sorted(s) for s in self.separators],
            'glue': [list(e) for e in self.glue],
        }


# ===== Orderings =====

def lex_bfs(g: Graph) -> List[int]:
    """Lexicographic breadth-first search; ties go to the smallest vertex id."""
    n = g.n
    labels = {v: [] for v in g.vertices()}
    order = []
    remaining = set(g.vertices())
    for step in range(n):
        v = max(sorted(remaining), key=lambda x: labels[x])
        order.append(v)
        remaining.discard(v)
        for w in g.neighbors(v):
            if w in remaining:
                labels[w].append(n - step)
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    """Each vertex's later neighbours must form a clique."""
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if position[w] > position[v]]
        if not later:
            continue
        parent = min(later, key=position.__getitem__)
        if any(w != parent and not g.has_edge(parent, w) for w in later):
            return False
    return True


def chordality(g: Graph) -> ChordalityResult:
    """The reverse Lex-BFS order is a perfect elimination ordering iff g is chordal."""
    order = tuple(reversed(lex_bfs(g)))
    perfect = is_perfect_elimination_ordering(g, order)
    return ChordalityResult(perfect, EliminationOrdering(order, perfect))


def is_chordal(g: Graph) -> bool:
    return chordality(g).chordal


def maximal_cliques(h: Graph) -> List[FrozenSet[int]]:
    """Maximal cliques of a chordal graph, read off a perfect elimination ordering."""
    result = chordality(h)
    if not result.chordal:
        raise NotChordalError("maximal_cliques needs a chordal graph")
    order = result.ordering.order
    position = {v: i for i, v in enumerate(order)}
    candidates = []
    for v in order:
        candidates.append(frozenset({v} | {w for w in h.neighbors(v) if position[w] > position[v]}))
    candidates = sorted(set(candidates), key=lambda c: (-len(c), sorted(c)))
    cliques = []
    for c in candidates:
        if not any(c < k for k in cliques):
            cliques.append(c)
    return sorted(cliques, key=sorted)


def clique_tree(h: Graph, host: Optional[Graph] = None) -> Decomposition:
    """
    Tree decomposition of a chordal graph whose bags are its maximal cliques.

    The skeleton is a maximum-weight spanning tree of the clique intersection
    graph. `host` (default h) is the graph the decomposition is attached to.
    """
    cliques = maximal_cliques(h)
    host = h if host is None else host
    if len(cliques) == 1:
        return Decomposition.from_bags(host, cliques)
    K = nx.Graph()
    K.add_nodes_from(range(len(cliques)))
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            K.add_edge(i, j, weight=len(cliques[i] & cliques[j]))
    tree = nx.maximum_spanning_tree(K, weight='weight')
    return Decomposition.from_bags(host, cliques, tree.edges())


# ===== Separators =====

def full_components(g: Graph, s: Iterable[int], within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
    """Components of g[within] - s whose neighbourhood is all of s."""
    s = frozenset(s)
    allowed = set(g.vertices()) if within is None else set(within)
    comps = g.components(allowed - s)
    out = []
    for comp in comps:
        boundary = set()
        for x in comp:
            boundary |= g.neighbors(x) & s
        if boundary == s:
            out.append(comp)
    return out


def is_minimal_separator(g: Graph, s: Iterable[int], within: Optional[Iterable[int]] = None) -> bool:
    return len(full_components(g, s, within)) >= 2


def minimal_triangulation(g: Graph) -> Graph:
    H, _ = nx.complete_to_chordal_graph(g.to_networkx())
    return Graph(g.n, H.edges())


def _clique_minimal_separators(g: Graph, within: FrozenSet[int]) -> List[FrozenSet[int]]:
    """Clique minimal separators of g[within], smallest first."""
    sub = g.induced_subgraph(within)
    if sub.graph.n <= 2:
        return []
    tri = minimal_triangulation(sub.graph)
    tree = clique_tree(tri)
    seps = set()
    for a, b in tree.edges:
        s = tree.bags[a] & tree.bags[b]
        if s and sub.graph.is_clique(s):
            seps.add(frozenset(sub.vertices[x] for x in s))
    return sorted(seps, key=lambda s: (len(s), sorted(s)))


def atoms(g: Graph) -> AtomDecomposition:
    """Split g along clique minimal separators until every piece is prime."""
    g.require_connected('atoms')
    result = AtomDecomposition()

    def split(piece: FrozenSet[int]) -> List[int]:
        seps = _clique_minimal_separators(g, piece)
        if not seps:
            result.atoms.append(piece)
            return [len(result.atoms) - 1]
        s = seps[0]
        full = full_components(g, s, piece)
        a = min(full, key=min)
        left = split(a | s)
        right = split(piece - a)
        result.separators.append(s)
        k = len(result.separators) - 1
        i = next(x for x in left if s <= result.atoms[x])
        j = next(x for x in right if s <= result.atoms[x])
        result.glue.append((i, j, k))
        return left + right

    split(frozenset(g.vertices()))
    logger.debug("atoms: %d atoms, %d separators", len(result.atoms), len(result.separators))
    return result


def is_prime(g: Graph) -> bool:
    """No clique separator (checked on the connected graph g)."""
    return g.n <= 2 or not _clique_minimal_separators(g, frozenset(g.vertices()))


# ===== Constrained bags =====

def constrained_bags(g: Graph, family: Iterable[Iterable[int]]) -> Optional[Decomposition]:
    """
    A tree decomposition of g whose bag multiset equals `family`, or None.

    Every set is completed to a clique; a decomposition exists iff the result
    is chordal and its maximal cliques are exactly the family's sets.
    """
    sets = [frozenset(x) for x in family]
    if not sets:
        return None
    for i, x in enumerate(sets):
        for j, y in enumerate(sets):
            if i != j and x < y:
                raise PreconditionError(f"family member {sorted(x)} is contained in {sorted(y)}")
    distinct = sorted(set(sets), key=sorted)
    fill = set()
    for x in distinct:
        xs = sorted(x)
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                fill.add((xs[i], xs[j]))
    h = g.with_edges(fill)
    if not is_chordal(h):
        return None
    if set(maximal_cliques(h)) != set(distinct):
        return None
    tree = clique_tree(h, host=g)
    # Repeated sets hang off their first copy.
    bags = dict(tree.bags)
    edges = list(tree.edges)
    first = {bag: t for t, bag in sorted(tree.bags.items())}
    seen = {bag: 0 for bag in distinct}
    next_id = len(bags)
    for x in sets:
        seen[x] += 1
        if seen[x] > 1:
            bags[next_id] = x
            edges.append((first[x], next_id))
            next_id += 1
    return Decomposition(g, bags, edges)
