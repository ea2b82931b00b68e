"""
Packing colorings: validation, lower bounds, a first-fit incumbent and the
closed-form values used as oracles for coronas and caterpillars.

A packing k-coloring gives every vertex a color in 1..k such that two
distinct vertices sharing color i are more than i apart.
"""

from collections import namedtuple

import logging

import numpy as np

from .errors import InvalidColoring, InvalidParameter

__all__ = [
    'PackingColoring',
    'Violation',
    'validate',
    'is_valid',
    'lower_bound',
    'clique_number',
    'counting_bound',
    'packing_numbers',
    'greedy_packing_coloring',
    'corona_path_chi_p',
    'caterpillar_upper_bound',
]

logger = logging.getLogger(__name__)

COUNTING_BOUND_VERTEX_LIMIT = 30

Violation = namedtuple('Violation', 'u v color distance')

class PackingColoring(namedtuple('PackingColoring', 'colors')):
    __slots__ = ()

    def __new__(cls, colors):
        colors = tuple(int(c) for c in colors)

        for vertex, color in enumerate(colors):
            if color < 1:
                raise InvalidColoring(
                    'Colors must be positive',
                    { 'vertex' : vertex + 1, 'color' : color }
                )

        return super().__new__(cls, colors)


    @property
    def k_used(self):
        return max(self.colors, default=0)


    @property
    def vertex_count(self):
        return len(self.colors)


    def color_classes(self):
        classes = { }

        for vertex, color in enumerate(self.colors):
            classes.setdefault(color, [ ]).append(vertex)

        return classes


def validate(g, dm, coloring):
    """
    Return every violating pair as a `Violation`; an empty list means the
    coloring is a valid packing coloring.
    """

    if coloring.vertex_count != g.vertex_count:
        raise InvalidColoring(
            'Coloring does not cover the graph',
            { 'colored' : coloring.vertex_count, 'vertex_count' : g.vertex_count }
        )

    violations = [ ]

    for color, members in sorted(coloring.color_classes().items()):
        if len(members) < 2:
            continue

        members = np.asarray(members)
        block = dm.dist[np.ix_(members, members)]
        close = np.argwhere(np.triu(block <= color, k=1))

        for i, j in close:
            violations.append(Violation(
                int(members[i]),
                int(members[j]),
                color,
                int(block[i, j]),
            ))

    return violations


def is_valid(g, dm, coloring):
    return not validate(g, dm, coloring)


def clique_number(g):
    import networkx as nx

    if g.vertex_count == 0:
        return 0

    clique, _ = nx.max_weight_clique(g.to_networkx(), weight=None)

    return len(clique)


def packing_number(dm, i):
    """Largest set of vertices pairwise more than `i` apart."""

    import networkx as nx

    n = len(dm.dist)
    far = nx.Graph()
    far.add_nodes_from(range(n))
    far.add_edges_from(
        (int(u), int(v))
        for u, v in np.argwhere(np.triu(dm.dist > i, k=1))
    )

    clique, _ = nx.max_weight_clique(far, weight=None)

    return len(clique)


def packing_numbers(dm, up_to):
    return [ packing_number(dm, i) for i in range(1, up_to + 1) ]


def counting_bound(dm):
    """
    Colors i < diameter hold at most one maximum i-packing each; colors from
    the diameter on can be used once. The smallest k whose capacity reaches
    the vertex count is a lower bound.
    """

    n = len(dm.dist)
    d = dm.diameter
    capacity = 0
    k = 0

    while capacity < n:
        k += 1

        if k < d:
            capacity += packing_number(dm, k)
        else:
            capacity += 1

    return k


def lower_bound(g, dm):
    n = g.vertex_count

    if n <= 1:
        return n

    bound = 2 if g.edge_count else 1
    bound = max(bound, clique_number(g))

    if n <= COUNTING_BOUND_VERTEX_LIMIT:
        bound = max(bound, counting_bound(dm))

    logger.debug('lower bound %d for %d vertices', bound, n)

    return bound


def breadth_first_order(g, source=0):
    import networkx as nx

    if g.vertex_count == 0:
        return [ ]

    order = [ source ]
    order.extend(v for _, v in nx.bfs_edges(g.to_networkx(), source, sort_neighbors=sorted))

    return order


def greedy_packing_coloring(g, dm, order=None, fixed=None):
    """First-fit in breadth-first order; always succeeds."""

    if order is None:
        order = breadth_first_order(g)

    fixed = fixed or { }
    colors = np.zeros(g.vertex_count, dtype=np.int64)

    for v, color in fixed.items():
        colors[v] = color

    for v in order:
        if v in fixed:
            continue

        color = 1

        while True:
            same = np.flatnonzero(colors == color)

            if not len(same) or dm.dist[v, same].min() > color:
                break

            color += 1

        colors[v] = color

    return PackingColoring(colors)


def corona_path_chi_p(n, p):
    """Packing chromatic number of the corona P_n with p leaves per vertex."""

    if n < 1 or p < 1:
        raise InvalidParameter('Corona needs n >= 1 and p >= 1', { 'n' : n, 'p' : p })

    if n == 1:
        return 2

    if p == 1:
        if n <= 3:
            return 3
        if n <= 9:
            return 4
        return 5

    if p == 2:
        if n == 2:
            return 3
        if n <= 4:
            return 4
        if n <= 11:
            return 5
        return 6

    if p == 3:
        if n == 2:
            return 3
        if n <= 4:
            return 4
        if n <= 8:
            return 5
        return 6

    if n == 2:
        return 3
    if n <= 4:
        return 4
    if n <= 8:
        return 5
    if n <= 34:
        return 6
    return 7


def caterpillar_upper_bound(backbone_length):
    return 6 if backbone_length <= 34 else 7
