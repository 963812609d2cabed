"""
Reduction instances and their witness decompositions.

- Betweenness: the gadget graph whose path-breadth is one (path-length two)
  exactly when the ordering instance is satisfiable, the path decomposition
  built from a satisfying ordering, and the ordering read back from a
  length-two path decomposition
- Chordal Sandwich: the gadget graph whose tree-breadth is one exactly when
  a chordal sandwich exists, and the star-decomposition built from one
- Ball augmentation: a clique of r-ball dominators turning tb(G) <= r into
  tb(G') <= 1, with decompositions carried in both directions
"""

import logging
import random
from collections import namedtuple
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .chordal import clique_tree, is_chordal
from .conf import setting
from .decomposition import Decomposition, Shape, contract_subset_bags, evaluate, validate
from .exceptions import (
    BetweennessViolation,
    CertificateError,
    GraphFormatError,
    LimitExceededError,
    NotChordalError,
    PreconditionError,
    SandwichStructureError,
)
from .graph import Graph, _content_lines, _parse_ints, dump_edge_list, parse_edge_block

logger = logging.getLogger(__name__)

GadgetGraph = namedtuple('GadgetGraph', ['graph', 'gadget_map'])

Triple = Tuple[int, int, int]


class GadgetMap:
    """Role name -> vertex id for a generated graph. Total and injective."""

    def __init__(self, roles: Dict[str, int]):
        if len(set(roles.values())) != len(roles):
            raise PreconditionError("gadget map assigns one vertex to two roles")
        self.roles = dict(roles)

    def __getitem__(self, role: str) -> int:
        return self.roles[role]

    def __contains__(self, role: str) -> bool:
        return role in self.roles

    def __len__(self):
        return len(self.roles)

    def role_of(self, vertex: int) -> str:
        for role, v in self.roles.items():
            if v == vertex:
                return role
        raise KeyError(vertex)

    def to_dict(self):
        return dict(sorted(self.roles.items(), key=lambda kv: kv[1]))


# ===== Betweenness =====

@dataclass(frozen=True)
class BetweennessInstance:
    n: int
    triples: Tuple[Triple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'triples', tuple(tuple(t) for t in self.triples))
        if self.n < 0:
            raise PreconditionError(f"negative ground set size {self.n}")
        for t in self.triples:
            if len(t) != 3 or len(set(t)) != 3:
                raise PreconditionError(f"triple {t} needs three distinct entries")
            if not all(0 <= x < self.n for x in t):
                raise PreconditionError(f"triple {t} out of range 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.triples)

    def satisfied_by(self, ordering: Sequence[int]) -> Optional[Triple]:
        """First triple the ordering violates, or None."""
        position = {x: p for p, x in enumerate(ordering)}
        for i, j, k in self.triples:
            if not (position[i] < position[j] < position[k] or position[k] < position[j] < position[i]):
                return (i, j, k)
        return None


def chain_triples(n: int, m: int) -> List[Triple]:
    """m consecutive windows (i, i+1, i+2), cycling through the n - 2 windows."""
    if n < 3 and m:
        raise PreconditionError("chained triples need at least three elements")
    return [(t % (n - 2), t % (n - 2) + 1, t % (n - 2) + 2) for t in range(m)]


def random_betweenness_instance(n: int, m: int, rng: random.Random) -> BetweennessInstance:
    return BetweennessInstance(n, [tuple(rng.sample(range(n), 3)) for _ in range(m)])


def betweenness_graph(inst: BetweennessInstance) -> GadgetGraph:
    """
    Clique u_0..u_{n-1}, pendant partners v_i, and two length-3 paths per
    triple (i, j, k): v_i a b v_j and v_j c d v_k. a, b see every u_l with
    l != k; c, d see every u_l with l != i.
    """
    n = inst.n
    roles = {}
    for i in range(n):
        roles[f"u{i}"] = i
        roles[f"v{i}"] = n + i
    edges = [(a, b) for a, b in combinations(range(n), 2)]
    edges += [(i, n + i) for i in range(n)]
    for t, (i, j, k) in enumerate(inst.triples):
        a, b, c, d = (2 * n + 4 * t + x for x in range(4))
        roles.update({f"a{t}": a, f"b{t}": b, f"c{t}": c, f"d{t}": d})
        edges += [(n + i, a), (a, b), (b, n + j), (n + j, c), (c, d), (d, n + k)]
        edges += [(x, l) for x in (a, b) for l in range(n) if l != k]
        edges += [(x, l) for x in (c, d) for l in range(n) if l != i]
    graph = Graph(2 * n + 4 * inst.m, edges)
    return GadgetGraph(graph, GadgetMap(roles))


def betweenness_witness(inst: BetweennessInstance, ordering: Sequence[int]) -> Decomposition:
    """Path decomposition with one bag per element, each bag inside N[u_i]."""
    if sorted(ordering) != list(range(inst.n)):
        raise PreconditionError("ordering is not a permutation of the ground set")
    violated = inst.satisfied_by(ordering)
    if violated is not None:
        raise BetweennessViolation(violated)
    graph, roles = betweenness_graph(inst)
    n = inst.n
    position = {x: p for p, x in enumerate(ordering)}
    bags = [set(range(n)) | {roles[f"v{x}"]} for x in ordering]
    for t, (i, j, k) in enumerate(inst.triples):
        lo, hi = sorted((position[i], position[j]))
        for p in range(lo, hi + 1):
            bags[p] |= {roles[f"a{t}"], roles[f"b{t}"]}
        lo, hi = sorted((position[j], position[k]))
        for p in range(lo, hi + 1):
            bags[p] |= {roles[f"c{t}"], roles[f"d{t}"]}
    return Decomposition.path(graph, bags)


def betweenness_ordering(inst: BetweennessInstance, d: Decomposition) -> List[int]:
    """
    Read a satisfying ordering off a path decomposition of length at most 2
    of the gadget graph: elements in order of first appearance of v_i.
    """
    if d.shape != Shape.PATH:
        raise PreconditionError("betweenness_ordering needs a path decomposition")
    metrics = evaluate(d)
    if metrics.length > 2:
        raise PreconditionError(f"decomposition has length {metrics.length}, need at most 2")
    _, roles = betweenness_graph(inst)
    first = {}
    for step, t in enumerate(d.path_order()):
        for x in range(inst.n):
            if x not in first and roles[f"v{x}"] in d.bags[t]:
                first[x] = step
    ordering = sorted(range(inst.n), key=lambda x: (first[x], x))
    violated = inst.satisfied_by(ordering)
    if violated is not None:
        raise BetweennessViolation(violated)
    return ordering


def solve_betweenness(inst: BetweennessInstance, limit: Optional[int] = None) -> Optional[List[int]]:
    """Lexicographically first satisfying ordering, by exhaustive search."""
    limit = setting('TBONE_BETWEENNESS_LIMIT') if limit is None else limit
    if inst.n > limit:
        raise LimitExceededError('solve_betweenness', inst.n, limit)
    for ordering in permutations(range(inst.n)):
        if inst.satisfied_by(ordering) is None:
            return list(ordering)
    return None


def load_betweenness(source: str) -> BetweennessInstance:
    lines = list(_content_lines(source))
    if not lines:
        raise GraphFormatError("missing 'n m' header")
    number, tokens = lines[0]
    n, m = _parse_ints(tokens, 2, number)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} triples, found {len(lines) - 1}")
    triples = [tuple(_parse_ints(tokens, 3, number)) for number, tokens in lines[1:]]
    try:
        return BetweennessInstance(n, triples)
    except PreconditionError as exc:
        raise GraphFormatError(str(exc)) from exc


def dump_betweenness(inst: BetweennessInstance) -> str:
    lines = [f"{inst.n} {inst.m}"]
    lines.extend(f"{i} {j} {k}" for i, j, k in inst.triples)
    return '\n'.join(lines) + '\n'


# ===== Chordal Sandwich =====

GADGET_ROLES = ('s', 't', 'c', 'x', 'y', 'w', 'z')

# Internal edges of one gadget copy. With s, t also joined to u, v, u', v',
# the gadget decomposes into leaf bags {x,s,t}, {y,s,w}, {z,s,w} around the
# bag {c,s,t,w}, and N[c] & N[x] = {s, t}.
GADGET_EDGES = (
    ('s', 'x'), ('t', 'x'), ('s', 'c'), ('t', 'c'), ('c', 'w'),
    ('t', 'w'), ('s', 'y'), ('y', 'w'), ('w', 'z'), ('s', 'z'),
)


@dataclass(frozen=True)
class SandwichInstance:
    g1: Graph
    g2: Graph

    def __post_init__(self):
        if self.g1.n != self.g2.n:
            raise SandwichStructureError("g1 and g2 have different vertex sets")
        if not set(self.g1.edges) <= set(self.g2.edges):
            raise SandwichStructureError("g1 has an edge missing from g2")
        if self.g1.n % 2:
            raise SandwichStructureError("vertex count must be even")
        for v in self.g2.vertices():
            if self.g2.degree(v) != self.g2.n - 2:
                raise SandwichStructureError(f"forbidden pairs are not a perfect matching at vertex {v}")

    @property
    def n(self) -> int:
        return self.g1.n

    @property
    def forbidden_pairs(self) -> List[Tuple[int, int]]:
        return self.g2.complement_pairs()

    def partner(self, v: int) -> int:
        return next(w for w in self.g2.vertices() if w != v and not self.g2.has_edge(v, w))

    def is_sandwich(self, h: Graph) -> bool:
        edges = set(h.edges)
        return h.n == self.n and set(self.g1.edges) <= edges <= set(self.g2.edges)


def sandwich_instance(g1: Graph, pairs: Sequence[Tuple[int, int]]) -> SandwichInstance:
    """Instance whose forbidden pairs are exactly `pairs`."""
    forbidden = {(min(a, b), max(a, b)) for a, b in pairs}
    g2 = Graph(g1.n, [(a, b) for a, b in combinations(range(g1.n), 2) if (a, b) not in forbidden])
    return SandwichInstance(g1, g2)


def random_sandwich_instance(n: int, edge_probability: float, rng: random.Random) -> SandwichInstance:
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[2 * i], order[2 * i + 1]) for i in range(n // 2)]
    forbidden = {(min(a, b), max(a, b)) for a, b in pairs}
    edges = [e for e in combinations(range(n), 2) if e not in forbidden and rng.random() < edge_probability]
    return sandwich_instance(Graph(n, edges), pairs)


def solve_sandwich(inst: SandwichInstance, limit: Optional[int] = None) -> Optional[Graph]:
    """
    A chordal graph between g1 and g2, or None.

    A sandwich exists iff some elimination ordering of g1 only creates fill
    inside g2; orderings are searched over sets of eliminated vertices.
    """
    limit = setting('TBONE_SANDWICH_LIMIT') if limit is None else limit
    n = inst.n
    if n > limit:
        raise LimitExceededError('solve_sandwich', n, limit)
    g1, g2 = inst.g1, inst.g2

    def elimination_clique(v, placed):
        reach, seen, stack = set(), {v}, [v]
        while stack:
            x = stack.pop()
            for y in g1.neighbors(x):
                if y in seen:
                    continue
                seen.add(y)
                if y in placed:
                    stack.append(y)
                else:
                    reach.add(y)
        return reach | {v}

    parent: Dict[frozenset, int] = {frozenset(): -1}
    layer = [frozenset()]
    for _ in range(n):
        nxt = []
        for placed in layer:
            for v in g1.vertices():
                if v in placed:
                    continue
                grown = placed | {v}
                if grown in parent:
                    continue
                if g2.is_clique(elimination_clique(v, placed)):
                    parent[grown] = v
                    nxt.append(grown)
        layer = sorted(nxt, key=sorted)
    full = frozenset(g1.vertices())
    if full not in parent:
        return None
    order = []
    current = full
    while current:
        v = parent[current]
        order.append(v)
        current = current - {v}
    order.reverse()
    fill = set(g1.edges)
    placed = set()
    for v in order:
        fill |= {(min(a, b), max(a, b)) for a, b in combinations(sorted(elimination_clique(v, placed)), 2)}
        placed.add(v)
    return Graph(n, fill)


def sandwich_graph(inst: SandwichInstance) -> GadgetGraph:
    """
    g1 plus a clique V' of copies v', each v joined to every copy but its
    partner's, plus one seven-vertex gadget per forbidden pair.
    """
    n = inst.n
    roles = {f"v{v}": v for v in range(n)}
    roles.update({f"v{v}'": n + v for v in range(n)})
    edges = list(inst.g1.edges)
    edges += [(n + a, n + b) for a, b in combinations(range(n), 2)]
    edges += [(v, n + w) for v in range(n) for w in range(n) if w != inst.partner(v)]
    for q, (u, v) in enumerate(inst.forbidden_pairs):
        base = 2 * n + 7 * q
        local = {name: base + i for i, name in enumerate(GADGET_ROLES)}
        for name, vertex in local.items():
            roles[f"{name}_{u}_{v}"] = vertex
        edges += [(local[a], local[b]) for a, b in GADGET_EDGES]
        for end in (local['s'], local['t']):
            edges += [(end, u), (end, v), (end, n + u), (end, n + v)]
    graph = Graph(2 * n + 7 * len(inst.forbidden_pairs), edges)
    return GadgetGraph(graph, GadgetMap(roles))


def maximal_sandwich(inst: SandwichInstance, h: Graph) -> Graph:
    """Add g2 edges one at a time while h stays chordal, lexicographic with restarts."""
    changed = True
    while changed:
        changed = False
        for a, b in inst.g2.edges:
            if h.has_edge(a, b):
                continue
            grown = h.with_edges([(a, b)])
            if is_chordal(grown):
                h = grown
                changed = True
                break
    return h


def sandwich_witness(inst: SandwichInstance, h: Graph) -> Decomposition:
    """Star-decomposition of the sandwich gadget graph built from a chordal sandwich h."""
    if not inst.is_sandwich(h):
        raise SandwichStructureError("h is not between g1 and g2")
    if not is_chordal(h):
        raise NotChordalError("h is not chordal")
    h = maximal_sandwich(inst, h)
    tree = clique_tree(h)
    graph, roles = sandwich_graph(inst)
    n = inst.n
    copies = {n + v for v in range(n)}

    # Every tree edge separates exactly one forbidden pair.
    crossing = {}
    for a, b in tree.edges:
        only_a, only_b = tree.bags[a] - tree.bags[b], tree.bags[b] - tree.bags[a]
        if len(only_a) != 1 or len(only_b) != 1:
            raise SandwichStructureError(f"adjacent cliques {sorted(tree.bags[a])}, {sorted(tree.bags[b])} differ in more than one vertex each")
        (u,), (v,) = only_a, only_b
        if inst.partner(u) != v:
            raise SandwichStructureError(f"adjacent cliques differ in {u}, {v}, which are not a forbidden pair")
        crossing[(a, b)] = (u, v)
    pairs = sorted((min(p), max(p)) for p in crossing.values())
    if pairs != inst.forbidden_pairs:
        raise SandwichStructureError("clique tree edges do not match the forbidden pairs one to one")

    bags = {}
    edges = []
    slot = {}
    next_id = 0
    for t in tree.nodes:
        previous = None
        for t2 in sorted(tree.skeleton[t]):
            key = (t, t2) if (t, t2) in crossing else (t2, t)
            u, v = sorted(crossing[key])
            bags[next_id] = set(tree.bags[t]) | copies | {roles[f"s_{u}_{v}"], roles[f"t_{u}_{v}"]}
            slot[(t, t2)] = next_id
            if previous is not None:
                edges.append((previous, next_id))
            previous = next_id
            next_id += 1
    for (a, b), (u, v) in sorted(crossing.items()):
        edges.append((slot[(a, b)], slot[(b, a)]))
        u, v = sorted((u, v))
        gadget = {name: roles[f"{name}_{u}_{v}"] for name in GADGET_ROLES}
        centre = next_id
        bags[centre] = {gadget['c'], gadget['s'], gadget['t'], gadget['w']}
        edges.append((slot[(a, b)], centre))
        for leaf in ({'x', 's', 't'}, {'y', 's', 'w'}, {'z', 's', 'w'}):
            next_id += 1
            bags[next_id] = {gadget[name] for name in leaf}
            edges.append((centre, next_id))
        next_id += 1

    d = Decomposition(graph, bags, edges)
    report = validate(d)
    if not report:
        raise SandwichStructureError(f"sandwich witness invalid: {report.detail}")
    if not evaluate(d).is_star:
        raise SandwichStructureError("sandwich witness is not a star-decomposition")
    return d


def load_sandwich(source: str) -> SandwichInstance:
    """Two edge-list blocks (g1, then g2) separated by a '---' line."""
    blocks = [[]]
    for number, raw in enumerate(source.splitlines(), start=1):
        if raw.strip() == '---':
            blocks.append([])
            continue
        text = raw.split('#', 1)[0].strip()
        if text:
            blocks[-1].append((number, text.split()))
    if len(blocks) != 2:
        raise GraphFormatError(f"expected two blocks separated by '---', found {len(blocks)}")
    return SandwichInstance(parse_edge_block(blocks[0]), parse_edge_block(blocks[1]))


def dump_sandwich(inst: SandwichInstance) -> str:
    return dump_edge_list(inst.g1) + '---\n' + dump_edge_list(inst.g2)


# ===== Ball augmentation =====

def ball_augmentation(g: Graph, r: int) -> GadgetGraph:
    """Add a clique u_0..u_{n-1}, u_i adjacent to the r-ball around vertex i."""
    if r < 1:
        raise PreconditionError(f"radius must be at least 1, got {r}")
    g.require_connected('ball_augmentation')
    n = g.n
    roles = {f"v{i}": i for i in range(n)}
    roles.update({f"u{i}": n + i for i in range(n)})
    edges = list(g.edges)
    edges += [(n + a, n + b) for a, b in combinations(range(n), 2)]
    edges += [(n + i, x) for i in range(n) for x in g.ball(i, r)]
    return GadgetGraph(Graph(2 * n, edges), GadgetMap(roles))


def transfer_decomposition(g: Graph, r: int, d: Decomposition, direction: str) -> Decomposition:
    """
    lift: breadth-r decomposition of g -> star-decomposition of the augmented graph.
    project: breadth-1 decomposition of the augmented graph -> breadth-r one of g.
    """
    augmented, roles = ball_augmentation(g, r)
    clique = {roles[f"u{i}"] for i in range(g.n)}
    if direction == 'lift':
        if d.host != g:
            raise PreconditionError("lift needs a decomposition of the original graph")
        breadth = evaluate(d).breadth
        if breadth > r:
            raise PreconditionError(f"lift needs breadth at most {r}, got {breadth}")
        lifted = Decomposition(augmented, {t: set(bag) | clique for t, bag in d.bags.items()}, d.edges, d.shape)
        if not evaluate(lifted).is_star:
            raise CertificateError("lifted decomposition is not a star-decomposition")
        return lifted
    if direction == 'project':
        if d.host != augmented:
            raise PreconditionError("project needs a decomposition of the augmented graph")
        breadth = evaluate(d).breadth
        if breadth > 1:
            raise PreconditionError(f"project needs breadth 1, got {breadth}")
        bags = {t: frozenset(bag - clique) for t, bag in d.bags.items()}
        skeleton = {t: set(s) for t, s in d.skeleton.items()}
        contract_subset_bags(bags, skeleton)
        edges = {(min(a, b), max(a, b)) for a in skeleton for b in skeleton[a]}
        projected = Decomposition(g, bags, edges, d.shape)
        if evaluate(projected).breadth > r:
            raise CertificateError("projected decomposition exceeds breadth r")
        return projected
    raise PreconditionError(f"unknown direction {direction!r}")
