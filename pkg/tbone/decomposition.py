"""
Tree and path decompositions over a host Graph.

A decomposition is a skeleton (a tree, or a path for shape=path) whose nodes
carry bags of host vertices. This module validates the three decomposition
axioms, evaluates breadth/length/star status, and contracts a breadth-one
decomposition into a star-decomposition.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .exceptions import GraphFormatError, InvalidDecompositionError, PreconditionError
from .graph import Graph, UNREACHABLE

logger = logging.getLogger(__name__)


class Shape(str, Enum):
    TREE = 'tree'
    PATH = 'path'


# Axiom names reported by validate, in checking order
AXIOM_SKELETON = 'skeleton'
AXIOM_SHAPE = 'shape'
AXIOM_UNKNOWN_VERTEX = 'unknown-vertex'
AXIOM_VERTEX_COVERAGE = 'vertex-coverage'
AXIOM_EDGE_COVERAGE = 'edge-coverage'
AXIOM_SUBTREE = 'subtree'


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: Optional[str] = None
    detail: str = ''
    witness: Tuple = ()

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {'ok': self.ok, 'axiom': self.axiom, 'detail': self.detail, 'witness': list(self.witness)}


OK = ValidationReport(True)


@dataclass(frozen=True)
class DecompositionMetrics:
    breadth: int
    length: int
    is_star: bool
    centers: Dict[int, Optional[int]] = field(default_factory=dict)
    dominators: Dict[int, Optional[int]] = field(default_factory=dict)

    def to_dict(self):
        return {
            'breadth': self.breadth,
            'length': self.length,
            'is_star': self.is_star,
            'centers': {str(k): v for k, v in sorted(self.centers.items())},
            'dominators': {str(k): v for k, v in sorted(self.dominators.items())},
        }


# ===== Axiom checks over plain mappings =====

def _skeleton_tree(nodes, skeleton: Mapping[int, Iterable[int]]) -> nx.Graph:
    tree = nx.Graph()
    tree.add_nodes_from(nodes)
    tree.add_edges_from((a, b) for a in nodes for b in skeleton.get(a, ()))
    return tree


def check_skeleton(nodes: Sequence[int], skeleton: Mapping[int, Iterable[int]], path: bool) -> ValidationReport:
    """The skeleton must be a tree (a path when `path` is set)."""
    if not nodes:
        return ValidationReport(False, AXIOM_SKELETON, 'decomposition has no nodes')
    node_set = set(nodes)
    for a in nodes:
        for b in skeleton.get(a, ()):
            if b not in node_set:
                return ValidationReport(False, AXIOM_SKELETON, f'edge to unknown node {b}', (a, b))
            if a == b:
                return ValidationReport(False, AXIOM_SKELETON, f'self-loop on node {a}', (a,))
    if not nx.is_tree(_skeleton_tree(nodes, skeleton)):
        return ValidationReport(False, AXIOM_SKELETON, 'skeleton is not a tree')
    if path:
        for a in nodes:
            if len(set(skeleton.get(a, ()))) > 2:
                return ValidationReport(False, AXIOM_SHAPE, f'node {a} has degree > 2 in a path', (a,))
    return OK


def check_axioms(host: Graph, bags: Mapping[int, FrozenSet[int]],
                 skeleton: Mapping[int, Iterable[int]], path: bool = False) -> ValidationReport:
    """Check skeleton shape, vertex coverage, edge coverage and connectivity of occurrences."""
    nodes = sorted(bags)
    report = check_skeleton(nodes, skeleton, path)
    if not report:
        return report

    occurrences: Dict[int, set] = {v: set() for v in host.vertices()}
    for t in nodes:
        for v in bags[t]:
            if v not in occurrences:
                return ValidationReport(False, AXIOM_UNKNOWN_VERTEX, f'bag of node {t} holds unknown vertex {v}', (t, v))
            occurrences[v].add(t)

    for v in host.vertices():
        if not occurrences[v]:
            return ValidationReport(False, AXIOM_VERTEX_COVERAGE, f'vertex {v} is in no bag', (v,))

    for u, v in host.edges:
        if not occurrences[u] & occurrences[v]:
            return ValidationReport(False, AXIOM_EDGE_COVERAGE, f'edge ({u}, {v}) is in no bag', (u, v))

    tree = _skeleton_tree(nodes, skeleton)
    for v in host.vertices():
        if not nx.is_connected(tree.subgraph(occurrences[v])):
            return ValidationReport(
                False, AXIOM_SUBTREE,
                f'nodes holding vertex {v} are disconnected', (v, tuple(sorted(occurrences[v]))),
            )
    return OK


def bag_dominator(host: Graph, bag: Iterable[int]) -> Optional[int]:
    """Smallest vertex of the bag that dominates it, or None."""
    bag = frozenset(bag)
    for c in sorted(bag):
        if bag <= host.closed_neighborhood(c):
            return c
    return None


# ===== Decomposition =====

class Decomposition:
    """
    A tree or path of bags over a host graph.

    Node ids are arbitrary non-negative integers and survive JSON round trips.
    Instances are treated as immutable; operations return new objects.
    """

    def __init__(self, host: Graph, bags: Mapping[int, Iterable[int]],
                 edges: Iterable[Tuple[int, int]] = (), shape: Shape = Shape.TREE):
        self.host = host
        self.shape = Shape(shape)
        self.bags: Dict[int, FrozenSet[int]] = {int(t): frozenset(int(v) for v in b) for t, b in bags.items()}
        self.edges: Tuple[Tuple[int, int], ...] = tuple(sorted({(min(a, b), max(a, b)) for a, b in edges}))
        skeleton: Dict[int, set] = {t: set() for t in self.bags}
        for a, b in self.edges:
            skeleton.setdefault(a, set()).add(b)
            skeleton.setdefault(b, set()).add(a)
        self.skeleton: Dict[int, FrozenSet[int]] = {t: frozenset(s) for t, s in skeleton.items()}

    @classmethod
    def from_bags(cls, host: Graph, bags: Sequence[Iterable[int]],
                  edges: Iterable[Tuple[int, int]] = (), shape: Shape = Shape.TREE) -> 'Decomposition':
        """Bags given as a list; node ids are list positions."""
        return cls(host, dict(enumerate(bags)), edges, shape)

    @classmethod
    def path(cls, host: Graph, bags: Sequence[Iterable[int]]) -> 'Decomposition':
        """Bags in path order, joined consecutively."""
        return cls.from_bags(host, bags, [(i, i + 1) for i in range(len(bags) - 1)], Shape.PATH)

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    def __len__(self):
        return len(self.bags)

    def occurrences(self, v: int) -> FrozenSet[int]:
        return frozenset(t for t, bag in self.bags.items() if v in bag)

    def path_order(self) -> List[int]:
        """Nodes in path order, starting at the endpoint with the smaller id."""
        if len(self.bags) == 1:
            return self.nodes
        ends = sorted(t for t in self.bags if len(self.skeleton[t]) <= 1)
        order = [ends[0]]
        prev = None
        while True:
            nxt = [x for x in self.skeleton[order[-1]] if x != prev]
            if not nxt:
                return order
            prev = order[-1]
            order.append(nxt[0])

    def bag_sets(self) -> List[FrozenSet[int]]:
        return [self.bags[t] for t in self.nodes]

    def with_shape(self, shape: Shape) -> 'Decomposition':
        return Decomposition(self.host, self.bags, self.edges, shape)

    def on_host(self, host: Graph, vertex_map: Optional[Mapping[int, int]] = None) -> 'Decomposition':
        """Same skeleton over another host, bags mapped through vertex_map."""
        if vertex_map is None:
            bags = self.bags
        else:
            bags = {t: {vertex_map[v] for v in bag} for t, bag in self.bags.items()}
        return Decomposition(host, bags, self.edges, self.shape)

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return (self.host == other.host and self.shape == other.shape
                and self.bags == other.bags and self.edges == other.edges)

    def __repr__(self):
        return f"Decomposition(shape={self.shape.value}, nodes={len(self.bags)})"

    # ----- JSON -----

    def to_dict(self):
        return {
            'shape': self.shape.value,
            'nodes': [{'id': t, 'bag': sorted(self.bags[t])} for t in self.nodes],
            'edges': [[a, b] for a, b in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, host: Graph, data) -> 'Decomposition':
        try:
            shape = Shape(data.get('shape', 'tree'))
            bags = {}
            for node in data['nodes']:
                t = int(node['id'])
                if t in bags:
                    raise GraphFormatError(f"duplicate node id {t}")
                bags[t] = [int(v) for v in node['bag']]
            edges = [(int(a), int(b)) for a, b in data.get('edges', [])]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"malformed decomposition JSON: {exc}") from exc
        return cls(host, bags, edges, shape)

    @classmethod
    def from_json(cls, host: Graph, text: str) -> 'Decomposition':
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
        return cls.from_dict(host, data)


# ===== Operations =====

def validate(d: Decomposition) -> ValidationReport:
    return check_axioms(d.host, d.bags, d.skeleton, d.shape == Shape.PATH)


def require_valid(d: Decomposition) -> None:
    report = validate(d)
    if not report:
        raise InvalidDecompositionError(report)


def evaluate(d: Decomposition) -> DecompositionMetrics:
    """
    Breadth, length and star status of a valid decomposition.

    Breadth lets a bag's center be any host vertex; the star test only
    accepts centers inside the bag.
    """
    require_valid(d)
    dist = d.host.distances
    breadth = 1
    length = 0
    centers = {}
    dominators = {}
    for t in d.nodes:
        bag = d.bags[t]
        radius, center = dist.radius(bag)
        diameter = dist.diameter(bag)
        if radius == UNREACHABLE or diameter == UNREACHABLE:
            raise PreconditionError(f"bag of node {t} spans several components")
        breadth = max(breadth, radius)
        length = max(length, diameter)
        centers[t] = center
        dominators[t] = bag_dominator(d.host, bag)
    is_star = all(c is not None for c in dominators.values())
    return DecompositionMetrics(breadth, length, is_star, centers, dominators)


def contract_subset_bags(bags: Dict[int, FrozenSet[int]], skeleton: Dict[int, set]) -> int:
    """
    Contract adjacent bag pairs where one bag contains the other, in place.

    Pairs are scanned in lexicographic node order and the scan restarts after
    every contraction. Returns the number of contractions.
    """
    contractions = 0
    changed = True
    while changed:
        changed = False
        for a in sorted(skeleton):
            for b in sorted(skeleton[a]):
                if b < a:
                    continue
                if bags[a] <= bags[b]:
                    drop, keep = a, b
                elif bags[b] <= bags[a]:
                    drop, keep = b, a
                else:
                    continue
                for x in skeleton.pop(drop):
                    skeleton[x].discard(drop)
                    if x != keep:
                        skeleton[x].add(keep)
                        skeleton[keep].add(x)
                del bags[drop]
                contractions += 1
                changed = True
                break
            if changed:
                break
    return contractions


def reduce_to_star(d: Decomposition) -> Decomposition:
    """
    Contract subset bags until the decomposition is reduced.

    A reduced decomposition of breadth one has a dominator inside every bag.
    """
    metrics = evaluate(d)
    if metrics.breadth != 1:
        raise PreconditionError(f"reduce_to_star needs breadth 1, got {metrics.breadth}")
    bags = dict(d.bags)
    skeleton = {t: set(s) for t, s in d.skeleton.items()}
    removed = contract_subset_bags(bags, skeleton)
    edges = {(min(a, b), max(a, b)) for a in skeleton for b in skeleton[a]}
    reduced = Decomposition(d.host, bags, edges, d.shape)
    logger.debug("reduce_to_star: %d contractions, %d bags left", removed, len(bags))
    return reduced


def helly_intersection(d: Decomposition, vertices: Iterable[int]) -> Optional[int]:
    """Smallest node whose bag holds all given vertices, or None."""
    wanted = frozenset(vertices)
    for t in d.nodes:
        if wanted <= d.bags[t]:
            return t
    return None
