"""
Integer programming model of packing coloring and its LP-format export.

Binary x_<v>_<i> says vertex v (1-based) takes color i, z is the largest
color in use. Every vertex takes exactly one color, two vertices at distance
at most i cannot both take i, and z dominates every chosen color.
"""

from collections import namedtuple

import logging

import numpy as np

from .errors import IncompleteSolution, InvalidParameter, NotIntegral
from .packing import PackingColoring
from .util import get_template, split_fields

__all__ = [
    'IlpModel',
    'SolutionReading',
    'build_model',
    'write_lp',
    'read_solution',
    'model_admits',
    'feasibility_threshold',
]

logger = logging.getLogger(__name__)

INTEGRALITY_TOLERANCE = 1e-6

SolutionReading = namedtuple('SolutionReading', 'coloring objective')

class IlpModel(object):
    def __init__(self, k, dist):
        self.k = k
        self.dist = dist
        self.vertex_count = len(dist)


    def assignments(self):
        for v in range(1, self.vertex_count + 1):
            yield v, [ 'x_{}_{}'.format(v, i) for i in range(1, self.k + 1) ]


    def separations(self):
        """(u, v, i) with u < v and dist(u, v) <= i <= k, lexicographic."""

        n = self.vertex_count

        for u in range(n):
            row = self.dist[u]

            for v in range(u + 1, n):
                for i in range(max(int(row[v]), 1), self.k + 1):
                    yield u + 1, v + 1, i


    def pairs(self):
        for v in range(1, self.vertex_count + 1):
            for i in range(1, self.k + 1):
                yield v, i


    @property
    def assignment_count(self):
        return self.vertex_count


    @property
    def separation_count(self):
        us, vs = np.triu_indices(self.vertex_count, k=1)
        spans = self.k - self.dist[us, vs] + 1

        return int(np.clip(spans, 0, None).sum())


    @property
    def bound_count(self):
        return self.vertex_count * self.k


    @property
    def variable_count(self):
        return self.vertex_count * self.k + 1


def build_model(g, dm, k):
    if k < 1:
        raise InvalidParameter('Model needs at least one color', { 'k' : k })

    if len(dm.dist) != g.vertex_count:
        raise InvalidParameter(
            'Distance matrix does not match the graph',
            { 'rows' : len(dm.dist), 'vertex_count' : g.vertex_count }
        )

    return IlpModel(k, dm.dist)


def write_lp(model, path):
    template = get_template('model_template.lp')

    with open(path, 'w', newline='\n') as fd:
        for chunk in template.generate(model = model):
            fd.write(chunk)

    logger.info('wrote LP model with %d variables to %s', model.variable_count, path)


def _parse_variable(name):
    parts = name.split('_')

    if len(parts) != 3 or parts[0] != 'x' or not parts[1].isdigit() or not parts[2].isdigit():
        return None

    return int(parts[1]), int(parts[2])


def read_solution(path, model):
    """
    Read `name value` lines as written by common solvers. Variables missing
    from the file are taken as zero.
    """

    chosen = { }
    objective = None

    with open(path) as fd:
        for line_number, line in enumerate(fd, 1):
            fields = split_fields(line.split('#', 1)[0])

            if len(fields) != 2:
                continue

            name, text = fields

            try:
                value = float(text)
            except ValueError:
                continue

            if name == 'z':
                objective = value
                continue

            variable = _parse_variable(name)

            if variable is None:
                continue

            v, i = variable
            rounded = round(value)

            if abs(value - rounded) > INTEGRALITY_TOLERANCE or rounded not in (0, 1):
                raise NotIntegral(
                    'Binary variable is not integral',
                    { 'variable' : name, 'value' : value, 'line' : line_number }
                )

            if not (1 <= v <= model.vertex_count and 1 <= i <= model.k):
                raise IncompleteSolution('Variable outside the model', { 'variable' : name })

            if rounded:
                chosen.setdefault(v, [ ]).append(i)

    colors = [ ]

    for v in range(1, model.vertex_count + 1):
        assigned = chosen.get(v, [ ])

        if len(assigned) != 1:
            raise IncompleteSolution(
                'Vertex needs exactly one color',
                { 'vertex' : v, 'colors' : assigned }
            )

        colors.append(assigned[0])

    return SolutionReading(PackingColoring(colors), objective)


def model_admits(model, coloring):
    """True when the coloring, with z at its largest color, satisfies every constraint."""

    if coloring.vertex_count != model.vertex_count:
        return False

    if coloring.k_used > model.k:
        return False

    for color, members in coloring.color_classes().items():
        if len(members) < 2:
            continue

        members = np.asarray(members)
        block = model.dist[np.ix_(members, members)]

        if np.triu(block <= color, k=1).any():
            return False

    return True


def feasibility_threshold(g, dm, node_limit=None):
    """
    Smallest k whose model admits an assignment, with the exact solver as
    oracle. A search cut off by `node_limit` raises NodeLimitReached.
    """

    from .solver import DEFAULT_NODE_LIMIT, find_packing_coloring

    if node_limit is None:
        node_limit = DEFAULT_NODE_LIMIT

    for k in range(1, g.vertex_count + 1):
        coloring = find_packing_coloring(g, dm, k, node_limit)

        if coloring is not None and model_admits(build_model(g, dm, k), coloring):
            return k

    return g.vertex_count
