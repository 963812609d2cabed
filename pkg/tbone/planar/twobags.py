"""Star-decompositions with one or two bags."""

import logging
from typing import Optional

from ..decomposition import Decomposition
from ..graph import Graph

logger = logging.getLogger(__name__)


def _splits(g: Graph, x: int, y: int) -> bool:
    nx_, ny = g.closed_neighborhood(x), g.closed_neighborhood(y)
    if len(nx_ | ny) != g.n:
        return False
    only_x, only_y = nx_ - ny, ny - nx_
    return not any(g.neighbors(w) & only_y for w in only_x)


def two_bag_star(g: Graph) -> Optional[Decomposition]:
    """
    A star-decomposition with at most two bags, or None.

    One bag N[x] when x is universal; otherwise bags N[x], N[y] for the first
    pair (x, y) that dominates g with no edge between N[x] - N[y] and N[y] - N[x].
    """
    g.require_connected('two_bag_star')
    for x in g.vertices():
        if g.degree(x) == g.n - 1:
            return Decomposition.from_bags(g, [g.closed_neighborhood(x)])
    for x in g.vertices():
        for y in range(x + 1, g.n):
            if _splits(g, x, y):
                logger.debug("two_bag_star: bags N[%d], N[%d]", x, y)
                return Decomposition.from_bags(
                    g, [g.closed_neighborhood(x), g.closed_neighborhood(y)], [(0, 1)])
    return None
