"""
Backward replay of a planar step trace.

Each rewrite of the step machine has a constructive converse: given a
star-decomposition of the rewritten graph, build one of the graph before the
rewrite. Replaying the trace from the last step to the first turns the
terminal decomposition into a star-decomposition of the atom.

Every converse ends with a full validation; a surgery that does not produce a
star-decomposition raises CertificateError instead of being patched up.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from ..decomposition import Decomposition, bag_dominator, contract_subset_bags, validate
from ..exceptions import CertificateError
from ..graph import Graph
from .leaf import LeafVertex
from .trace import (
    STEP_ADD_BV,
    STEP_ADD_YZ,
    STEP_CONNECT_B,
    STEP_CONTRACT_BX,
    STEP_CONTRACT_VA,
    STEP_FORCE_EDGES,
    STEP_REMOVE_LEAF,
    STEP_TYPE1,
    Step,
    StepTrace,
)

logger = logging.getLogger(__name__)


class TreeDraft:
    """
    A tree decomposition under surgery.

    The skeleton is a networkx tree whose nodes carry a mutable 'bag' set.
    Domination is always checked against `host`, which the converses switch
    as they move from the rewritten graph back to the original one.
    """

    def __init__(self, host: Graph, tree: Optional[nx.Graph] = None):
        self.host = host
        self.tree = tree if tree is not None else nx.Graph()

    @classmethod
    def from_decomposition(cls, d: Decomposition) -> 'TreeDraft':
        tree = nx.Graph()
        for t in d.nodes:
            tree.add_node(t, bag=set(d.bags[t]))
        tree.add_edges_from(d.edges)
        return cls(d.host, tree)

    def to_decomposition(self) -> Decomposition:
        return Decomposition(self.host, {t: self.bag(t) for t in self.tree}, self.tree.edges)

    # ----- queries -----

    def bag(self, t: int) -> set:
        return self.tree.nodes[t]['bag']

    @property
    def nodes(self) -> List[int]:
        return sorted(self.tree.nodes)

    def occurrences(self, v: int) -> List[int]:
        return [t for t in self.nodes if v in self.bag(t)]

    def node_holding(self, vertices: Iterable[int]) -> Optional[int]:
        wanted = set(vertices)
        for t in self.nodes:
            if wanted <= self.bag(t):
                return t
        return None

    def dominated(self, bag: Iterable[int]) -> bool:
        return bag_dominator(self.host, bag) is not None

    def dominators(self, t: int) -> List[int]:
        bag = self.bag(t)
        return [w for w in sorted(bag) if bag <= self.host.closed_neighborhood(w)]

    def path_between(self, x: int, y: int) -> Optional[List[int]]:
        """Shortest skeleton path from a node holding x to a node holding y."""
        targets = set(self.occurrences(y))
        best = None
        for s in self.occurrences(x):
            paths = nx.single_source_shortest_path(self.tree, s)
            for t in targets:
                if t in paths and (best is None or len(paths[t]) < len(best)):
                    best = paths[t]
        return best

    # ----- surgery -----

    def attach(self, bag: Iterable[int], to: Optional[int]) -> int:
        t = max(self.tree.nodes, default=-1) + 1
        self.tree.add_node(t, bag=set(bag))
        if to is not None:
            self.tree.add_edge(t, to)
        return t

    def _absorb(self, t: int, into: int) -> None:
        self.bag(into).update(self.bag(t))
        for w in list(self.tree[t]):
            if w != into:
                self.tree.add_edge(into, w)
        self.tree.remove_node(t)

    def discard(self, vertices: Iterable[int]) -> None:
        """Remove vertices from every bag; emptied bags merge into a neighbour."""
        vertices = set(vertices)
        for t in self.nodes:
            self.bag(t).difference_update(vertices)
        for t in self.nodes:
            if self.bag(t) or len(self.tree) == 1:
                continue
            nbrs = sorted(self.tree[t])
            if nbrs:
                self._absorb(t, nbrs[0])
            else:
                self.tree.remove_node(t)

    def relabel(self, mapping: Dict[int, int], host: Graph) -> None:
        for t in self.nodes:
            self.tree.nodes[t]['bag'] = {mapping[v] for v in self.bag(t)}
        self.host = host

    def reduce(self) -> None:
        bags = {t: frozenset(self.bag(t)) for t in self.tree}
        skeleton = {t: set(self.tree[t]) for t in self.tree}
        contract_subset_bags(bags, skeleton)
        tree = nx.Graph()
        for t in sorted(bags):
            tree.add_node(t, bag=set(bags[t]))
        tree.add_edges_from((t, w) for t in skeleton for w in skeleton[t])
        self.tree = tree

    def merge_dominated(self) -> int:
        """Merge adjacent bags while their union keeps a dominator inside it."""
        merged = 0
        changed = True
        while changed:
            changed = False
            for s, t in sorted(tuple(sorted(e)) for e in self.tree.edges):
                if self.dominated(self.bag(s) | self.bag(t)):
                    self._absorb(t, s)
                    merged += 1
                    changed = True
                    break
        return merged

    def _extend(self, nodes: Iterable[int], *vertices: int) -> bool:
        nodes = list(nodes)
        if not all(self.dominated(self.bag(t) | set(vertices)) for t in nodes):
            return False
        for t in nodes:
            self.bag(t).update(vertices)
        return True

    def pull_together(self, x: int, y: int) -> Tuple[Optional[int], Optional[Tuple[int, int]]]:
        """
        Make x and y share a bag without losing domination.

        Returns (node, None) with a node holding both, (None, (s, t)) when
        only two adjacent bags holding x and y respectively remain, or
        (None, None) when neither could be reached.
        """
        for attempt in range(2):
            both = self.node_holding({x, y})
            if both is not None:
                return both, None
            path = self.path_between(x, y)
            if path is None:
                raise CertificateError(f"vertices {x} and {y} do not both occur in the decomposition")
            if self._extend(path[:-1], y):
                return path[0], None
            if self._extend(path[1:], x):
                return path[-1], None
            inner = path[1:-1]
            if inner and self._extend(inner, x, y):
                return inner[0], None
            if attempt == 0:
                self.merge_dominated()
            elif len(path) == 2:
                return None, (path[0], path[1])
        return None, None

    def split_node(self, t: int, first: Iterable[int], second: Iterable[int]) -> Tuple[int, int]:
        """Replace bag t by two adjacent bags; old neighbours follow their shared set."""
        first, second = set(first), set(second)
        old_bag = set(self.bag(t))
        old_nbrs = sorted(self.tree[t])
        self.tree.remove_node(t)
        t1 = self.attach(first, None)
        t2 = self.attach(second, t1)
        for w in old_nbrs:
            shared = self.bag(w) & old_bag
            if shared <= first:
                self.tree.add_edge(t1, w)
            elif shared <= second:
                self.tree.add_edge(t2, w)
            else:
                raise CertificateError(f"bag {sorted(self.bag(w))} fits neither half of the split")
        return t1, t2

    def swap_repair(self, pairs: Iterable[Tuple[int, int]]) -> int:
        """
        Fix undominated bags holding a pair (s, t) by moving t out.

        Applies when B - t lies in N[s], exactly one neighbour of B holds t,
        and that neighbour plus s is still dominated. Returns the number of swaps.
        """
        pairs = list(pairs)
        swaps = 0
        progress = True
        while progress:
            progress = False
            for node in self.nodes:
                bag = self.bag(node)
                if self.dominated(bag):
                    continue
                for s, t in pairs:
                    if s not in bag or t not in bag:
                        continue
                    if not (bag - {t}) <= self.host.closed_neighborhood(s):
                        continue
                    holders = [w for w in self.tree[node] if t in self.bag(w)]
                    if len(holders) != 1 or not self.dominated(self.bag(holders[0]) | {s}):
                        continue
                    bag.discard(t)
                    self.bag(holders[0]).add(s)
                    swaps += 1
                    progress = True
                    break
                if progress:
                    break
        return swaps

    def require_star(self, what: str) -> Decomposition:
        d = self.to_decomposition()
        report = validate(d)
        if not report:
            raise CertificateError(f"{what}: {report.axiom}: {report.detail}")
        for t in d.nodes:
            if bag_dominator(d.host, d.bags[t]) is None:
                raise CertificateError(f"{what}: bag {sorted(d.bags[t])} has no dominator inside it")
        return d


def _reinsert_leaf(draft: TreeDraft, g: Graph, leaf: LeafVertex) -> None:
    """Put the leaf-vertex back next to a star-decomposition of g minus the leaf."""
    v = leaf.vertex
    draft.host = g
    draft.reduce()
    node, pair = draft.pull_together(leaf.a, leaf.c)
    if node is not None:
        holder = draft.node_holding(g.neighbors(v))
        if holder is None:
            raise CertificateError(f"no bag holds the neighbourhood of leaf-vertex {v}")
        draft.attach(g.closed_neighborhood(v), holder)
    elif pair is not None:
        if not draft._extend(pair, v):
            raise CertificateError(f"adjacent bags {list(pair)} do not stay dominated with leaf-vertex {v}")
    else:
        raise CertificateError(f"cannot bring {leaf.a} and {leaf.c} together around leaf-vertex {v}")
    draft.reduce()


# ===== converses, one per step label =====

def _undo_type1(step: Step, d: Decomposition) -> Decomposition:
    m, ctx, leaf = step.id_map, step.context, step.leaf
    g, v = step.before, leaf.vertex
    draft = TreeDraft.from_decomposition(d)
    draft.reduce()
    a, c, dv = m[leaf.a], m[leaf.c], m[ctx['d']]
    draft.pull_together(a, c)
    hub = draft.node_holding({a, c, dv})
    if hub is None:
        raise CertificateError(f"no bag holds {leaf.a}, {leaf.c} and {ctx['d']}")
    draft.discard({m[ctx['x']], m[ctx['y']]})
    draft.relabel(step.lift_map(), g)
    outer = draft.attach(g.neighbors(v) | {ctx['d']}, hub)
    draft.attach(g.closed_neighborhood(v), outer)
    draft.reduce()
    return draft.require_star('type 1 leaf')


def _undo_remove_leaf(step: Step, d: Decomposition) -> Decomposition:
    draft = TreeDraft.from_decomposition(d)
    draft.relabel(step.lift_map(), step.before)
    _reinsert_leaf(draft, step.before, step.leaf)
    return draft.require_star('leaf removal')


def _undo_forced_edges(step: Step, d: Decomposition) -> Decomposition:
    """
    Drop the forced edges v-u (and v-b for Type 3) from a star-decomposition.

    A bag dominated only by v is N'[v] and splits into {a, u, b, v} and
    {b, c, u, v}. Otherwise every bag has another dominator: when a and c
    share a bag, v leaves every bag and N[v] hangs off a bag holding a, b
    and c; when they do not, v stays only on the skeleton path from a to c,
    whose bags all hold b and u and so are dominated by a or c.
    """
    leaf, ctx = step.leaf, step.context
    v, u = leaf.vertex, ctx['u']
    a, b, c = leaf.a, leaf.b, leaf.c
    g, forced = step.before, step.after
    draft = TreeDraft.from_decomposition(d)
    draft.reduce()
    owned = [t for t in draft.nodes if v in draft.bag(t) and draft.dominators(t) == [v]]
    if owned:
        keep = owned[0]
        if draft.bag(keep) != set(forced.closed_neighborhood(v)):
            raise CertificateError(f"bag dominated only by {v} is not its closed neighbourhood")
        for t in draft.nodes:
            if t != keep:
                draft.bag(t).discard(v)
        draft.reduce()
        keep = draft.occurrences(v)[0]
        draft.host = g
        draft.split_node(keep, {a, u, b, v}, {b, c, u, v})
    elif draft.node_holding({a, c}) is not None:
        draft.host = g
        draft.discard({v})
        hub = draft.node_holding({a, b, c})
        if hub is None:
            raise CertificateError(f"no bag holds {a}, {b} and {c}")
        draft.attach(g.closed_neighborhood(v), hub)
    else:
        draft.host = g
        path = draft.path_between(a, c)
        if path is None or any(v not in draft.bag(t) for t in path):
            raise CertificateError(f"leaf-vertex {v} does not cover the path from {a} to {c}")
        on_path = set(path)
        for t in draft.nodes:
            if t not in on_path:
                draft.bag(t).discard(v)
    draft.reduce()
    return draft.require_star('forced edges')


def _undo_add_bv(step: Step, d: Decomposition) -> Decomposition:
    draft = TreeDraft.from_decomposition(d)
    draft.discard({step.leaf.vertex})
    _reinsert_leaf(draft, step.before, step.leaf)
    return draft.require_star('edge vb')


def _undo_contract_va(step: Step, d: Decomposition) -> Decomposition:
    g, ctx, v = step.before, step.context, step.leaf.vertex
    a, b, c = ctx['a'], step.leaf.b, ctx['c']
    draft = TreeDraft.from_decomposition(d)
    draft.reduce()
    draft.merge_dominated()
    draft.reduce()
    draft.relabel(step.lift_map(), g)
    draft.swap_repair([(a, c), (c, a)])
    hub = draft.node_holding({a, b, c})
    if hub is None:
        raise CertificateError(f"no bag holds the path {a}, {b}, {c}")
    draft.attach(g.closed_neighborhood(v), hub)
    draft.reduce()
    return draft.require_star('contraction of va')


def _undo_contract_bx(step: Step, d: Decomposition) -> Decomposition:
    g, m, ctx = step.before, step.id_map, step.context
    a, b, c, u, x = ctx['a'], step.leaf.b, ctx['c'], ctx['u'], ctx['x']
    draft = TreeDraft.from_decomposition(d)
    draft.reduce()
    draft.pull_together(m[a], m[u])
    hub = draft.node_holding({m[a], m[x], m[u]})
    if hub is None:
        raise CertificateError(f"no bag holds {a}, {x} and {u}")
    draft.discard({m[c], m[step.leaf.vertex]})
    draft.relabel(step.lift_map(), g)
    draft.attach(g.closed_neighborhood(b), hub)
    draft.reduce()
    return draft.require_star('contraction of bx')


def _undo_add_yz(step: Step, d: Decomposition) -> Decomposition:
    y, z = step.context['y'], step.context['z']
    draft = TreeDraft.from_decomposition(d)
    draft.reduce()
    draft.merge_dominated()
    draft.reduce()
    draft.host = step.before
    draft.swap_repair([(y, z), (z, y)])
    draft.reduce()
    return draft.require_star('edge yz')


CONVERSES = {
    STEP_TYPE1: _undo_type1,
    STEP_REMOVE_LEAF: _undo_remove_leaf,
    STEP_FORCE_EDGES: _undo_forced_edges,
    STEP_ADD_BV: _undo_add_bv,
    STEP_CONTRACT_VA: _undo_contract_va,
    STEP_CONNECT_B: _undo_contract_bx,
    STEP_CONTRACT_BX: _undo_contract_bx,
    STEP_ADD_YZ: _undo_add_yz,
}


def replay(trace: StepTrace, base: Decomposition) -> Decomposition:
    """Star-decomposition of the trace's first graph from one of its last graph."""
    d = base
    for i in range(len(trace.steps) - 1, -1, -1):
        step = trace.steps[i]
        if d.host != step.after:
            raise CertificateError(f"step {i} ({step.step}) does not continue from the decomposition's graph")
        d = CONVERSES[step.step](step, d)
        logger.debug("replay: undid step %d (%s), %d bags", i, step.step, len(d))
    return d
