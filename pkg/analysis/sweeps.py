"""
Property sweeps over many small graphs.

Every sweep returns a summary dict {"name", "checked", "failures"}; a failure
is a dict with the offending graph as an edge list and a short detail. The
defaults are the full acceptance sizes; tests call the sweeps with smaller
arguments.
"""

import logging
import random
from itertools import combinations, islice
from typing import Callable, Dict, Iterator, List, Optional

import networkx as nx

from tbone.bipartite import recognize_bipartite_tb1
from tbone.conf import setting
from tbone.decomposition import evaluate, validate
from tbone.exceptions import TboneError
from tbone.families import grid
from tbone.generators import (
    BetweennessInstance,
    betweenness_graph,
    betweenness_ordering,
    betweenness_witness,
    chain_triples,
    random_betweenness_instance,
    random_sandwich_instance,
    sandwich_graph,
    sandwich_witness,
    solve_betweenness,
    solve_sandwich,
    transfer_decomposition,
)
from tbone.graph import Graph
from tbone.oracle import (
    Parameter,
    ParameterQuery,
    domination_elimination_ordering,
    exact_parameter,
    is_domination_elimination_ordering,
    optimal_decomposition,
    treewidth_exact,
)
from tbone.planar import is_planar, recognize_planar_tb1

logger = logging.getLogger(__name__)


def _summary(name: str) -> Dict:
    return {'name': name, 'checked': 0, 'failures': []}


def _fail(summary: Dict, g: Graph, detail: str) -> None:
    logger.warning("%s: %s on %r", summary['name'], detail, g)
    summary['failures'].append({'n': g.n, 'edges': [list(e) for e in g.edges], 'detail': detail})


def connected_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    """Every connected graph with min_n..max_n vertices, up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for G in nx.graph_atlas_g():
        if min_n <= G.number_of_nodes() <= max_n and nx.is_connected(G):
            yield Graph.from_networkx(G)


def connected_planar_graphs(n: int) -> Iterator[Graph]:
    """
    Every connected planar graph on n vertices, up to isomorphism (n <= 8).

    Above the atlas, each graph is a connected planar graph on n - 1 vertices
    plus one vertex joined to a non-empty subset; repeats are dropped by
    Weisfeiler-Lehman hash and an isomorphism test within the hash bucket.
    """
    if n > 8:
        raise ValueError("connected planar graphs are generated up to 8 vertices")
    if n <= 7:
        for g in connected_graphs(n, min_n=n):
            if is_planar(g):
                yield g
        return
    seen: Dict[str, List[nx.Graph]] = {}
    for base in connected_graphs(n - 1, min_n=n - 1):
        if not is_planar(base):
            continue
        H = base.to_networkx()
        for k in range(1, n):
            for attach in combinations(range(n - 1), k):
                G = H.copy()
                G.add_edges_from((n - 1, x) for x in attach)
                if not nx.check_planarity(G)[0]:
                    continue
                bucket = seen.setdefault(nx.weisfeiler_lehman_graph_hash(G), [])
                if any(nx.is_isomorphic(G, other) for other in bucket):
                    continue
                bucket.append(G)
                yield Graph.from_networkx(G)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    while True:
        G = nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 32))
        if nx.is_connected(G):
            return Graph.from_networkx(G)


def random_planar_graph(n: int, rng: random.Random, density: float = 0.6) -> Graph:
    """A random tree plus random edges kept while the graph stays planar."""
    G = nx.Graph()
    G.add_node(0)
    for v in range(1, n):
        G.add_edge(v, rng.randrange(v))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not G.has_edge(u, v)]
    rng.shuffle(candidates)
    for u, v in candidates:
        if rng.random() > density:
            continue
        G.add_edge(u, v)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(u, v)
    return Graph.from_networkx(G)


def _tb(g: Graph) -> int:
    return exact_parameter(g, ParameterQuery(Parameter.TREE_BREADTH))


# ===== sweeps =====

def oracle_consistency(max_n: int = 6, random_n: int = 7, samples: int = 2000,
                       contraction_n: int = 5, seed: int = 0) -> Dict:
    """tb <= tl <= 2tb, pb <= pl <= 2pb, tb <= pb, tl <= pl, and monotonicity under contraction."""
    summary = _summary('oracle_consistency')
    rng = random.Random(seed)
    graphs = list(connected_graphs(max_n))
    graphs += [random_connected_graph(random_n, rng.uniform(0.3, 0.8), rng) for _ in range(samples)]
    for g in graphs:
        summary['checked'] += 1
        values = {p: exact_parameter(g, ParameterQuery(p)) for p in Parameter}
        tb, tl = values[Parameter.TREE_BREADTH], values[Parameter.TREE_LENGTH]
        pb, pl = values[Parameter.PATH_BREADTH], values[Parameter.PATH_LENGTH]
        if not (tb <= tl <= 2 * tb and pb <= pl <= 2 * pb and tb <= pb and tl <= pl):
            _fail(summary, g, f"tb={tb} tl={tl} pb={pb} pl={pl}")
            continue
        if g.n > contraction_n:
            continue
        for e in g.edges:
            smaller = g.contract_edge(*e).graph
            for p, value in values.items():
                if exact_parameter(smaller, ParameterQuery(p)) > value:
                    _fail(summary, g, f"{p.value} grows when contracting {e}")
    logger.info("oracle_consistency: %d graphs, %d failures", summary['checked'], len(summary['failures']))
    return summary


def bipartite_agreement(max_n: int = 7) -> Dict:
    """Bipartite recognizer against the oracle on every connected bipartite graph."""
    summary = _summary('bipartite_agreement')
    for g in connected_graphs(max_n):
        if not nx.is_bipartite(g.to_networkx()):
            continue
        summary['checked'] += 1
        try:
            result = recognize_bipartite_tb1(g)
        except TboneError as exc:
            _fail(summary, g, f"recognizer raised {exc}")
            continue
        expected = _tb(g) == 1
        if result.answer != expected:
            _fail(summary, g, f"recognizer says {result.answer}, oracle says {expected}")
        elif result.answer and not evaluate(result.decomposition).is_star:
            _fail(summary, g, "certificate is not a star-decomposition")
    logger.info("bipartite_agreement: %d graphs, %d failures", summary['checked'], len(summary['failures']))
    return summary


def _check_planar(summary: Dict, g: Graph, oracle_limit: int) -> None:
    summary['checked'] += 1
    try:
        result = recognize_planar_tb1(g)
    except TboneError as exc:
        _fail(summary, g, f"recognizer raised {exc}")
        return
    for trace in result.traces:
        if len(trace) > trace.bound:
            _fail(summary, g, f"{len(trace)} steps exceed 5n - m = {trace.bound}")
    if result.answer:
        d = result.decomposition
        if not validate(d) or not evaluate(d).is_star:
            _fail(summary, g, "certificate is not a star-decomposition")
            return
    if g.n <= oracle_limit:
        expected = _tb(g) == 1
        if result.answer != expected:
            _fail(summary, g, f"recognizer says {result.answer}, oracle says {expected}")


def planar_agreement(max_n: int = 7, random_samples: int = 1000, random_max_n: int = 10,
                     seed: int = 0) -> Dict:
    """Planar recognizer against the oracle, plus certificate checks on larger random graphs."""
    summary = _summary('planar_agreement')
    oracle_limit = setting('TBONE_ORACLE_LIMIT')
    for g in connected_graphs(max_n):
        if is_planar(g):
            _check_planar(summary, g, oracle_limit)
    rng = random.Random(seed)
    for _ in range(random_samples):
        g = random_planar_graph(rng.randint(4, random_max_n), rng)
        _check_planar(summary, g, oracle_limit)
    logger.info("planar_agreement: %d graphs, %d failures", summary['checked'], len(summary['failures']))
    return summary


def betweenness_pipeline(samples: int = 200, max_n: int = 5, seed: int = 0) -> Dict:
    """Witness decompositions for satisfiable instances, ordering read back from them."""
    summary = _summary('betweenness_pipeline')
    rng = random.Random(seed)
    instances = [BetweennessInstance(5, chain_triples(5, 4))]
    for _ in range(samples):
        n = rng.randint(3, max_n)
        instances.append(random_betweenness_instance(n, rng.randint(1, 4), rng))
    for inst in instances:
        ordering = solve_betweenness(inst)
        if ordering is None:
            continue
        summary['checked'] += 1
        graph = betweenness_graph(inst).graph
        try:
            d = betweenness_witness(inst, ordering)
            metrics = evaluate(d)
            if metrics.breadth != 1 or metrics.length > 2:
                _fail(summary, graph, f"witness has breadth {metrics.breadth}, length {metrics.length}")
                continue
            betweenness_ordering(inst, d)
        except TboneError as exc:
            _fail(summary, graph, str(exc))
    logger.info("betweenness_pipeline: %d instances, %d failures", summary['checked'], len(summary['failures']))
    return summary


def sandwich_pipeline(samples: int = 50, sizes=(4, 6), seed: int = 0) -> Dict:
    """Star-decompositions of the gadget graph built from random yes-instances."""
    summary = _summary('sandwich_pipeline')
    rng = random.Random(seed)
    attempts = 0
    while summary['checked'] < samples and attempts < 20 * samples:
        attempts += 1
        inst = random_sandwich_instance(rng.choice(sizes), rng.uniform(0.2, 0.7), rng)
        h = solve_sandwich(inst)
        if h is None:
            continue
        summary['checked'] += 1
        graph, roles = sandwich_graph(inst)
        for u, v in inst.forbidden_pairs:
            c, x = roles[f"c_{u}_{v}"], roles[f"x_{u}_{v}"]
            shared = graph.closed_neighborhood(c) & graph.closed_neighborhood(x)
            if shared != {roles[f"s_{u}_{v}"], roles[f"t_{u}_{v}"]}:
                _fail(summary, graph, f"gadget {u},{v}: N[c] & N[x] = {sorted(shared)}")
        try:
            sandwich_witness(inst, h)
        except TboneError as exc:
            _fail(summary, graph, str(exc))
    logger.info("sandwich_pipeline: %d instances, %d failures", summary['checked'], len(summary['failures']))
    return summary


def ball_round_trip(max_n: int = 6, radii=(1, 2)) -> Dict:
    """Lift an optimal decomposition into the ball augmentation and project it back."""
    summary = _summary('ball_round_trip')
    for g in connected_graphs(max_n):
        best = optimal_decomposition(g, ParameterQuery(Parameter.TREE_BREADTH))
        for r in radii:
            if best.value > r:
                continue
            summary['checked'] += 1
            try:
                lifted = transfer_decomposition(g, r, best.decomposition, 'lift')
                projected = transfer_decomposition(g, r, lifted, 'project')
            except TboneError as exc:
                _fail(summary, g, f"r={r}: {exc}")
                continue
            if evaluate(projected).breadth > r:
                _fail(summary, g, f"r={r}: projection exceeds breadth r")
    logger.info("ball_round_trip: %d cases, %d failures", summary['checked'], len(summary['failures']))
    return summary


def _check_treewidth(summary: Dict, g: Graph, one: bool) -> None:
    summary['checked'] += 1
    if not one:
        return
    if is_planar(g) and treewidth_exact(g) > 4:
        _fail(summary, g, "planar with tb = 1 but treewidth above 4")
    order = domination_elimination_ordering(g)
    if order is None or not is_domination_elimination_ordering(g, order):
        _fail(summary, g, "tb = 1 without a domination elimination ordering")


def treewidth_properties(max_n: int = 7, planar_n: int = 8, planar_limit: Optional[int] = None) -> Dict:
    """
    Treewidth at most 4 on accepted planar graphs; a domination elimination ordering whenever tb = 1.

    Graphs up to max_n are decided by the oracle. Connected planar graphs on
    planar_n vertices (the first planar_limit of them when given) are decided
    by the planar recognizer.
    """
    summary = _summary('treewidth_properties')
    for g in connected_graphs(max_n):
        _check_treewidth(summary, g, _tb(g) == 1)
    if planar_n > max_n:
        for g in islice(connected_planar_graphs(planar_n), planar_limit):
            try:
                one = recognize_planar_tb1(g).answer
            except TboneError as exc:
                summary['checked'] += 1
                _fail(summary, g, f"recognizer raised {exc}")
                continue
            _check_treewidth(summary, g, one)
    g = grid(4, 4)
    summary['checked'] += 1
    order = domination_elimination_ordering(g)
    if order is None or not is_domination_elimination_ordering(g, order):
        _fail(summary, g, "4x4 grid has no domination elimination ordering")
    logger.info("treewidth_properties: %d graphs, %d failures", summary['checked'], len(summary['failures']))
    return summary


SWEEPS: Dict[str, Callable[..., Dict]] = {
    'oracle': oracle_consistency,
    'bipartite': bipartite_agreement,
    'planar': planar_agreement,
    'betweenness': betweenness_pipeline,
    'sandwich': sandwich_pipeline,
    'ball': ball_round_trip,
    'treewidth': treewidth_properties,
}


def run_sweeps(names: List[str], **kwargs) -> List[Dict]:
    """Run the named sweeps with their default sizes; kwargs override per-sweep arguments by name."""
    results = []
    for name in names:
        func = SWEEPS[name]
        args = kwargs.get(name, {})
        results.append(func(**args))
    return results
