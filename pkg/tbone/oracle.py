"""
Exponential-time ground truth for small graphs.

Tree parameters are computed with a dynamic program over sets of eliminated
vertices: eliminating v after the set S creates the clique {v} plus every
vertex outside S reachable from v through S, and tb/tl <= k iff some
elimination ordering keeps every such clique within breadth/length k.
Path parameters use the same program with vertex-separation bags ({v} plus the
already placed vertices that still have an unplaced neighbour).

The direct definition (enumerate chordal or interval supergraphs and test
their maximal cliques) is kept as method="supergraphs" to cross-check the
program on tiny graphs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .chordal import clique_tree, is_chordal, maximal_cliques
from .conf import setting
from .decomposition import Decomposition, contract_subset_bags, reduce_to_star
from .exceptions import LimitExceededError, PreconditionError
from .graph import Graph

logger = logging.getLogger(__name__)


class Parameter(str, Enum):
    TREE_BREADTH = 'tb'
    TREE_LENGTH = 'tl'
    PATH_BREADTH = 'pb'
    PATH_LENGTH = 'pl'

    @property
    def is_path(self) -> bool:
        return self in (Parameter.PATH_BREADTH, Parameter.PATH_LENGTH)

    @property
    def is_breadth(self) -> bool:
        return self in (Parameter.TREE_BREADTH, Parameter.PATH_BREADTH)


@dataclass(frozen=True)
class ParameterQuery:
    which: Parameter
    limit: int = field(default_factory=lambda: setting('TBONE_ORACLE_LIMIT'))

    def __post_init__(self):
        object.__setattr__(self, 'which', Parameter(self.which))
        if self.limit < 1:
            raise PreconditionError(f"oracle limit must be at least 1, got {self.limit}")


@dataclass(frozen=True)
class OracleResult:
    value: int
    decomposition: Decomposition


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _adjacency_masks(g: Graph) -> List[int]:
    return [sum(1 << w for w in g.neighbors(v)) for v in g.vertices()]


def _reach(adj: Sequence[int], v: int, inside: int) -> int:
    """Vertices outside `inside` and v reachable from v along paths with interior in `inside`."""
    outside = ~inside & ~(1 << v)
    result = adj[v] & outside
    expand = adj[v] & inside
    seen = 0
    while expand:
        seen |= expand
        nxt = 0
        for x in _bits(expand):
            nxt |= adj[x]
        result |= nxt & outside
        expand = nxt & inside & ~seen
    return result


def _boundary(adj: Sequence[int], placed: int) -> int:
    """Placed vertices that still have a neighbour outside `placed`."""
    out = 0
    for u in _bits(placed):
        if adj[u] & ~placed:
            out |= 1 << u
    return out


class _BagTest:
    """Memoized breadth/length test on vertex masks."""

    def __init__(self, g: Graph, breadth: bool, k: int):
        self.dist = g.distances
        self.breadth = breadth
        self.k = k
        self.cache: Dict[int, bool] = {}

    def __call__(self, mask: int) -> bool:
        hit = self.cache.get(mask)
        if hit is None:
            vertices = list(_bits(mask))
            if self.breadth:
                hit = self.dist.radius(vertices)[0] <= self.k
            else:
                hit = self.dist.diameter(vertices) <= self.k
            self.cache[mask] = hit
        return hit


def _ordering_search(g: Graph, which: Parameter, k: int) -> Optional[List[int]]:
    """An ordering whose bags all pass the k-test, or None."""
    n = g.n
    adj = _adjacency_masks(g)
    test = _BagTest(g, which.is_breadth, k)
    size = 1 << n
    parent = [-1] * size
    feasible = bytearray(size)
    feasible[0] = 1
    for S in range(1, size):
        for v in _bits(S):
            prev = S & ~(1 << v)
            if not feasible[prev]:
                continue
            if which.is_path:
                bag = (1 << v) | _boundary(adj, prev)
            else:
                bag = (1 << v) | _reach(adj, v, prev)
            if test(bag):
                feasible[S] = 1
                parent[S] = v
                break
    full = size - 1
    if not feasible[full]:
        return None
    order = []
    S = full
    while S:
        v = parent[S]
        order.append(v)
        S &= ~(1 << v)
    order.reverse()
    return order


def _witness(g: Graph, which: Parameter, order: Sequence[int]) -> Decomposition:
    adj = _adjacency_masks(g)
    placed = 0
    bags = []
    for v in order:
        if which.is_path:
            bag = (1 << v) | _boundary(adj, placed)
        else:
            bag = (1 << v) | _reach(adj, v, placed)
        bags.append(frozenset(_bits(bag)))
        placed |= 1 << v
    if which.is_path:
        d = Decomposition.path(g, bags)
        work_bags = dict(d.bags)
        skeleton = {t: set(s) for t, s in d.skeleton.items()}
        contract_subset_bags(work_bags, skeleton)
        edges = {(min(a, b), max(a, b)) for a in skeleton for b in skeleton[a]}
        return Decomposition(g, work_bags, edges, d.shape)
    fill = set()
    for bag in bags:
        for a, b in combinations(sorted(bag), 2):
            fill.add((a, b))
    return clique_tree(g.with_edges(fill), host=g)


def _bounds(g: Graph, which: Parameter):
    dist = g.distances
    if which.is_breadth:
        return 1, max(1, dist.radius(g.vertices())[0])
    lower = 0 if g.n == 1 else 1
    return lower, dist.diameter(g.vertices())


def _check(g: Graph, q: ParameterQuery):
    if g.n > q.limit:
        raise LimitExceededError(f"oracle {q.which.value}", g.n, q.limit)
    if g.n == 0:
        raise PreconditionError("oracle needs at least one vertex")
    g.require_connected('oracle')


def optimal_decomposition(g: Graph, q: ParameterQuery) -> OracleResult:
    """The exact parameter value and a decomposition attaining it."""
    _check(g, q)
    lower, upper = _bounds(g, q.which)
    for k in range(lower, upper + 1):
        order = _ordering_search(g, q.which, k)
        if order is not None:
            logger.debug("oracle %s: value %d on %r", q.which.value, k, g)
            return OracleResult(k, _witness(g, q.which, order))
    # The single bag V always attains the upper bound.
    raise AssertionError("no ordering met the trivial upper bound")


def _supergraph_value(g: Graph, which: Parameter) -> int:
    lower, upper = _bounds(g, which)
    nonedges = g.complement_pairs()
    for k in range(lower, upper + 1):
        test = _BagTest(g, which.is_breadth, k)
        for size in range(len(nonedges) + 1):
            for extra in combinations(nonedges, size):
                h = g.with_edges(extra)
                if not is_chordal(h):
                    continue
                if which.is_path and not nx.is_at_free(h.to_networkx()):
                    continue
                if all(test(sum(1 << x for x in c)) for c in maximal_cliques(h)):
                    return k
    return upper


def exact_parameter(g: Graph, q: ParameterQuery, method: str = 'orderings') -> int:
    """
    Smallest k with a tree (or path) decomposition of breadth/length k.

    method="orderings" runs the subset program; "supergraphs" enumerates
    chordal (interval) supergraphs directly and is only practical for n <= 6.
    """
    if method == 'orderings':
        return optimal_decomposition(g, q).value
    if method == 'supergraphs':
        _check(g, q)
        return _supergraph_value(g, q.which)
    raise PreconditionError(f"unknown oracle method {method!r}")


def star_decomposition(g: Graph, limit: Optional[int] = None) -> Optional[Decomposition]:
    """A star-decomposition of g when tb(g) = 1, else None."""
    q = ParameterQuery(Parameter.TREE_BREADTH) if limit is None else ParameterQuery(Parameter.TREE_BREADTH, limit)
    result = optimal_decomposition(g, q)
    if result.value != 1:
        return None
    return reduce_to_star(result.decomposition)


# ===== Treewidth =====

def _check_treewidth_limit(g: Graph, limit: Optional[int]):
    limit = setting('TBONE_TREEWIDTH_LIMIT') if limit is None else limit
    if g.n > limit:
        raise LimitExceededError('treewidth', g.n, limit)


def treewidth_exact(g: Graph, limit: Optional[int] = None) -> int:
    """Branch and bound over elimination orderings, seeded with the min-fill-in bound."""
    _check_treewidth_limit(g, limit)
    if g.n <= 1:
        return 0
    upper, _ = treewidth_min_fill_in(g.to_networkx())
    best = [upper]
    seen: Dict[frozenset, int] = {}

    def search(adj: Dict[int, set], width: int):
        if width >= best[0]:
            return
        if len(adj) - 1 <= width:
            best[0] = width
            return
        key = frozenset(adj)
        if seen.get(key, best[0] + 1) <= width:
            return
        seen[key] = width
        for v in sorted(adj, key=lambda x: (len(adj[x]), x)):
            w = max(width, len(adj[v]))
            if w >= best[0]:
                continue
            nbrs = adj[v]
            rest = {x: (adj[x] | nbrs) - {x, v} if x in nbrs else set(adj[x]) for x in adj if x != v}
            search(rest, w)

    search({v: set(g.neighbors(v)) for v in g.vertices()}, 0)
    return best[0]


def treewidth_dp(g: Graph, limit: Optional[int] = None) -> int:
    """Treewidth by dynamic programming over sets of eliminated vertices."""
    _check_treewidth_limit(g, limit)
    if g.n <= 1:
        return 0
    adj = _adjacency_masks(g)
    size = 1 << g.n
    best = [0] * size
    for S in range(1, size):
        value = g.n
        for v in _bits(S):
            prev = S & ~(1 << v)
            value = min(value, max(best[prev], bin(_reach(adj, v, prev)).count('1')))
        best[S] = value
    return best[size - 1]


# ===== Domination elimination orderings =====

def _dominated_in(adj: Dict[int, set], v: int) -> Optional[int]:
    for u in sorted(adj):
        if u != v and adj[v] <= adj[u] | {u}:
            return u
    return None


def is_domination_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != list(g.vertices()):
        return False
    for i in range(len(order) - 1):
        later = set(order[i + 1:])
        wanted = g.neighbors(order[i]) & later
        if not any(wanted <= g.closed_neighborhood(u) for u in later):
            return False
    return True


def _remove(adj: Dict[int, set], v: int) -> Dict[int, set]:
    return {x: adj[x] - {v} for x in adj if x != v}


def domination_elimination_ordering(g: Graph, backtrack_limit: Optional[int] = None) -> Optional[List[int]]:
    """
    Greedy: repeatedly remove the smallest v with N(v) inside some N[u].

    When the greedy pass gets stuck, graphs up to backtrack_limit vertices
    are searched exhaustively before answering None.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    order = []
    while len(adj) > 1:
        v = next((x for x in sorted(adj) if _dominated_in(adj, x) is not None), None)
        if v is None:
            break
        order.append(v)
        adj = _remove(adj, v)
    if len(adj) <= 1:
        return order + sorted(adj)

    limit = setting('TBONE_DEO_BACKTRACK_LIMIT') if backtrack_limit is None else backtrack_limit
    logger.warning("greedy domination elimination stuck on %r", g)
    if g.n > limit:
        return None
    dead = set()

    def search(adj):
        if len(adj) <= 1:
            return sorted(adj)
        key = frozenset(adj)
        if key in dead:
            return None
        for v in sorted(adj):
            if _dominated_in(adj, v) is not None:
                tail = search(_remove(adj, v))
                if tail is not None:
                    return [v] + tail
        dead.add(key)
        return None

    return search({v: set(g.neighbors(v)) for v in g.vertices()})
