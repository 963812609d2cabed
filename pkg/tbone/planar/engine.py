"""
Tree-breadth one on planar graphs by leaf-vertex rewriting.

The input is split into atoms. On each prime atom the step machine looks for
a leaf-vertex and either answers directly or rewrites the graph into a
smaller-potential prime planar graph with the same answer, recording every
rewrite. Small graphs go to the exhaustive oracle. On a yes the recorded
steps are replayed backward into a star-decomposition of the atom.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple, Union

from ..chordal import atoms, is_minimal_separator, is_prime
from ..conf import setting
from ..decomposition import Decomposition, evaluate
from ..exceptions import CertificateError, NotPlanarError, PreconditionError, RecognitionError
from ..graph import Graph
from ..oracle import star_decomposition
from ..recognition import Recognition, glue_atom_decompositions, map_over_atoms
from .embedding import cycle_neighbors, is_planar, make_separator_cycle
from .leaf import LeafType, LeafVertex, classify, find_leaf_vertex
from .replay import replay
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
from .twobags import two_bag_star

logger = logging.getLogger(__name__)

# Smallest cutoff for which every case of the step machine is sound
MIN_CUTOFF = 7


@dataclass(frozen=True)
class Verdict:
    """Final answer of the step machine on its current graph."""
    decomposition: Optional[Decomposition]
    outcome: str

    @property
    def answer(self) -> bool:
        return self.decomposition is not None


def _rewrite(g: Graph, add: Iterable[Tuple[int, int]] = (), contract: Sequence[Tuple[int, int]] = (),
             remove: Optional[int] = None) -> Tuple[Graph, Dict[int, int]]:
    """Add edges, then contract (keep, drop) pairs, then delete one vertex."""
    add = [e for e in add if not g.has_edge(*e)]
    h = g.with_edges(add) if add else g
    id_map = {x: x for x in g.vertices()}
    for keep, drop in contract:
        merged = h.contract_edge(id_map[keep], id_map[drop])
        h = merged.graph
        id_map = {x: merged.id_map[cur] for x, cur in id_map.items()}
    if remove is not None:
        gone = id_map[remove]
        sub = h.induced_subgraph(x for x in h.vertices() if x != gone)
        index = {orig: new for new, orig in enumerate(sub.vertices)}
        id_map = {x: index[cur] for x, cur in id_map.items() if cur != gone}
        h = sub.graph
    return h, id_map


def _separates(g: Graph, s: Iterable[int], x: int, y: int) -> bool:
    s = frozenset(s)
    if x in s or y in s:
        return False
    for comp in g.components(set(g.vertices()) - s):
        if x in comp:
            return y not in comp
    return False


def _clique_cut(g: Graph, leaf: LeafVertex) -> Optional[int]:
    """Smallest u adjacent to b such that {b, u} cuts g minus the leaf, else None."""
    v, b = leaf.vertex, leaf.b
    rest = set(g.vertices()) - {v, b}
    for u in sorted(g.neighbors(b) - {leaf.a, leaf.c, v}):
        if len(g.components(rest - {u})) > 1:
            return u
    return None


def _is_c4(g: Graph) -> bool:
    return g.n == 4 and g.m == 4 and all(g.degree(x) == 2 for x in g.vertices())


class StepMachine:
    """Runs the leaf-vertex case analysis on one prime planar atom."""

    def __init__(self, g: Graph, cutoff: int, oracle_limit: int, check_invariants: bool = False):
        self.trace = StepTrace(g.n, g.m)
        self.graph = g
        self.cutoff = cutoff
        self.oracle_limit = oracle_limit
        self.check_invariants = check_invariants

    def run(self) -> Verdict:
        while True:
            g = self.graph
            if g.n < self.cutoff:
                verdict = Verdict(star_decomposition(g, self.oracle_limit), 'oracle')
                break
            leaf = find_leaf_vertex(g)
            if leaf is None:
                found = two_bag_star(g)
                verdict = Verdict(found, 'two-bags' if found is not None else 'no-leaf-vertex')
                break
            result = self.advance(g, leaf)
            if isinstance(result, Verdict):
                verdict = result
                break
        self.trace.outcome = verdict.outcome
        logger.debug("step machine: %s after %d steps", verdict.outcome, len(self.trace))
        return verdict

    def record(self, step: Step) -> Graph:
        self.trace.record(step)
        logger.debug("step %s at leaf-vertex %d: n=%d m=%d", step.step, step.leaf.vertex,
                     step.after.n, step.after.m)
        if self.check_invariants:
            if not is_planar(step.after):
                raise RecognitionError(f"step {step.step} produced a non-planar graph")
            if not is_prime(step.after):
                raise RecognitionError(f"step {step.step} produced a graph with a clique separator")
        self.graph = step.after
        return step.after

    def advance(self, g: Graph, leaf: LeafVertex, allow_clique_case: bool = True) -> Union[Graph, Verdict]:
        if leaf.kind is LeafType.TYPE1:
            return self._type1(g, leaf)
        u = _clique_cut(g, leaf)
        if u is None:
            return self._prime_case(g, leaf)
        if not allow_clique_case:
            raise RecognitionError(f"leaf-vertex {leaf.vertex} leaves a clique separator behind")
        return self._clique_case(g, leaf, u)

    # ----- Type 1 -----

    def _type1(self, g: Graph, leaf: LeafVertex) -> Union[Graph, Verdict]:
        v, d = leaf.vertex, leaf.dominator
        closed = g.closed_neighborhood(v)
        if len(closed | {d}) == g.n:
            two = Decomposition.from_bags(g, [closed, g.neighbors(v) | {d}], [(0, 1)])
            return Verdict(two, 'type1-two-bags')
        interior = leaf.interior
        x, y = interior[0], interior[1]
        contract = [(y, p) for p in interior[2:]]
        after, id_map = _rewrite(g, contract=contract, remove=v)
        ops = [('contract-interior', tuple(interior)), ('remove-leaf', v)]
        step = Step(STEP_TYPE1, leaf, g, after, id_map, frozenset(interior[2:]), tuple(ops),
                    {'x': x, 'y': y, 'd': d})
        return self.record(step)

    # ----- Types 2 and 3, g minus the leaf prime -----

    def _prime_case(self, g: Graph, leaf: LeafVertex) -> Union[Graph, Verdict]:
        v, a, c = leaf.vertex, leaf.a, leaf.c
        common = g.common_neighbors(a, c) - {v}
        rest = set(g.vertices()) - {v}
        separated = len(common) >= 3 or any(
            is_minimal_separator(g, {a, c} | set(extra), rest)
            for k in range(len(common) + 1)
            for extra in combinations(sorted(common), k)
        )
        if separated:
            after, id_map = _rewrite(g, remove=v)
            step = Step(STEP_REMOVE_LEAF, leaf, g, after, id_map, operations=(('remove-leaf', v),))
            return self.record(step)
        if len(common) == 1:
            if _is_c4(g):
                return Verdict(two_bag_star(g), 'c4')
            return Verdict(None, 'no-single-common-neighbour')
        u = min(common - {leaf.b})
        add = [(v, u)] if g.has_edge(v, leaf.b) else [(v, u), (v, leaf.b)]
        after, id_map = _rewrite(g, add=add)
        step = Step(STEP_FORCE_EDGES, leaf, g, after, id_map,
                    operations=tuple(('add-edge',) + e for e in add), context={'u': u})
        return self.record(step)

    # ----- Types 2 and 3, {b, u} a clique separator of g minus the leaf -----

    def _clique_case(self, g: Graph, leaf: LeafVertex, u: int) -> Union[Graph, Verdict]:
        v, b = leaf.vertex, leaf.b
        if leaf.kind is LeafType.TYPE3:
            after, id_map = _rewrite(g, add=[(v, b)])
            g = self.record(Step(STEP_ADD_BV, leaf, g, after, id_map,
                                 operations=(('add-edge', v, b),), context={'u': u}))
            leaf = LeafVertex(v, LeafType.TYPE2, leaf.path)
        a, c = leaf.a, leaf.c
        if u in g.neighbors(a):
            if u in g.neighbors(c):
                raise RecognitionError(f"{u} is adjacent to both ends of the path around {v}")
            a, c = c, a
        context = {'a': a, 'b': b, 'c': c, 'u': u}

        if u not in g.neighbors(c) or not _separates(g, (g.common_neighbors(u, a)) | {v, c}, u, a):
            after, id_map = _rewrite(g, contract=[(a, v)])
            step = Step(STEP_CONTRACT_VA, leaf, g, after, id_map, frozenset({v}),
                        (('contract-edge', a, v),), context)
            return self.record(step)

        if g.neighbors(b) == frozenset({v, a, c, u}):
            s = g.common_neighbors(a, u) | {v}
            try:
                gs = make_separator_cycle(g, s)
            except PreconditionError as exc:
                raise RecognitionError(f"separator {sorted(s)}: {exc}") from exc
            others = [w for w in cycle_neighbors(gs, s, b) if w != v]
            if not others:
                raise RecognitionError(f"{b} has no second neighbour on the separator cycle")
            x = others[0]
            after, id_map = _rewrite(g, add=[(b, x)], contract=[(x, b)])
            step = Step(STEP_CONNECT_B, leaf, g, after, id_map, frozenset({b}),
                        (('add-edge', b, x), ('contract-edge', x, b)), {**context, 'x': x})
            return self.record(step)

        shared = g.common_neighbors(b, a, u)
        if shared:
            x = min(shared)
            after, id_map = _rewrite(g, contract=[(x, b)])
            step = Step(STEP_CONTRACT_BX, leaf, g, after, id_map, frozenset({b}),
                        (('contract-edge', x, b),), {**context, 'x': x})
            return self.record(step)

        return self._final_case(g, leaf, context)

    def _final_case(self, g: Graph, leaf: LeafVertex, context) -> Union[Graph, Verdict]:
        v, a, b, c, u = leaf.vertex, context['a'], context['b'], context['c'], context['u']
        middle = g.common_neighbors(a, u)
        w = middle | {a, c, u, v}
        touching = [comp for comp in g.components(set(g.vertices()) - w)
                    if any(b in g.neighbors(y) for y in comp)]

        def boundary(comp: FrozenSet[int]) -> FrozenSet[int]:
            out = set()
            for y in comp:
                out |= g.neighbors(y)
            return frozenset(out - comp)

        x = None
        for cand in sorted(middle - {b}):
            if not all(cand in boundary(comp) for comp in touching):
                continue
            s = g.common_neighbors(b, cand)
            if len(s) >= 3 and _separates(g, s, b, cand):
                x = cand
                break
        if x is None:
            return Verdict(None, 'no-separating-partner')

        s = g.common_neighbors(b, x)
        for ell in sorted(s):
            inner = classify(g, ell)
            if inner is not None:
                logger.debug("leaf-vertex %d found between %d and %d", ell, b, x)
                return self.advance(g, inner, allow_clique_case=False)

        c0 = next((comp for comp in touching if x in boundary(comp)), None)
        if c0 is None:
            raise RecognitionError(f"no component next to both {b} and {x}")
        closed_c0 = c0 | boundary(c0)
        try:
            gs = make_separator_cycle(g, s)
        except PreconditionError as exc:
            raise RecognitionError(f"separator {sorted(s)}: {exc}") from exc
        for y in sorted(s & c0):
            for z in cycle_neighbors(gs, s, y):
                if z not in closed_c0 and not g.has_edge(y, z):
                    after, id_map = _rewrite(g, add=[(y, z)])
                    step = Step(STEP_ADD_YZ, leaf, g, after, id_map,
                                operations=(('add-edge', y, z),), context={**context, 'x': x, 'y': y, 'z': z})
                    return self.record(step)
        raise RecognitionError(f"no edge to add inside separator {sorted(s)}")


def _decide_atom(g: Graph, cutoff: int, oracle_limit: int, check_invariants: bool):
    machine = StepMachine(g, cutoff, oracle_limit, check_invariants)
    verdict = machine.run()
    if not verdict.answer:
        return None, machine.trace
    return replay(machine.trace, verdict.decomposition), machine.trace


def recognize_planar_tb1(g: Graph, jobs: Optional[int] = None, cutoff: Optional[int] = None,
                         check_invariants: Optional[bool] = None) -> Recognition:
    """Decide tb(g) = 1 for a connected planar graph."""
    g.require_connected('recognize_planar_tb1')
    if not is_planar(g):
        raise NotPlanarError(f"{g!r} is not planar")
    jobs = setting('TBONE_JOBS') if jobs is None else jobs
    cutoff = setting('TBONE_PLANAR_CUTOFF') if cutoff is None else cutoff
    if cutoff < MIN_CUTOFF:
        raise PreconditionError(f"planar cutoff must be at least {MIN_CUTOFF}, got {cutoff}")
    check = setting('TBONE_CHECK_INVARIANTS') if check_invariants is None else check_invariants
    oracle_limit = max(setting('TBONE_ORACLE_LIMIT'), cutoff - 1)

    split = atoms(g)
    pieces = [g.induced_subgraph(a) for a in split.atoms]
    results = map_over_atoms(lambda piece: _decide_atom(piece.graph, cutoff, oracle_limit, check), pieces, jobs)
    traces = [trace for _, trace in results]
    for i, (cert, trace) in enumerate(results):
        if cert is None:
            logger.info("planar: atom %d (%d vertices) has tree-breadth > 1 (%s)",
                        i, pieces[i].graph.n, trace.outcome)
            return Recognition(False, detail=f"atom {sorted(split.atoms[i])}: {trace.outcome}", traces=traces)

    star = glue_atom_decompositions(g, split, pieces, [cert for cert, _ in results])
    if not evaluate(star).is_star:
        raise CertificateError("glued planar certificate is not a star-decomposition")
    logger.info("planar: tb = 1 over %d atoms, %d steps", len(pieces), sum(len(t) for t in traces))
    return Recognition(True, star, traces=traces)
