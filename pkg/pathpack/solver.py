"""
Exact packing chromatic numbers.

`exact_chi_p` deepens k from a lower bound and runs one depth-first search per
k. Vertices are visited in breadth-first order from vertex 0 and colors are
tried in ascending order. Each color c keeps a counter per vertex of how many
already colored vertices of color c lie within distance c; a vertex can take
c only while its counter is zero.
"""

from collections import namedtuple

import logging

import numpy as np

from .errors import InvalidColoring, InvalidParameter, NodeLimitReached
from .graph import Graph, all_pairs_distances
from .packing import (
    PackingColoring,
    breadth_first_order,
    greedy_packing_coloring,
    lower_bound,
    validate,
)

__all__ = [
    'SolverOptions',
    'SolveResult',
    'LimitHit',
    'Exceeded',
    'UpperBound',
    'PackingSearch',
    'find_packing_coloring',
    'exact_chi_p',
    'brute_force_chi_p',
    'chi_p_upper_via_pattern_or_solver',
]

logger = logging.getLogger(__name__)

DEFAULT_NODE_LIMIT = 50_000_000
BRUTE_FORCE_VERTEX_LIMIT = 16
BRUTE_FORCE_CHUNK = 1 << 15

SolverOptions = namedtuple('SolverOptions', 'k_max node_limit fixed', defaults=(None, DEFAULT_NODE_LIMIT, None))

SolveResult = namedtuple('SolveResult', 'chi_p witness nodes_expanded proven_optimal')
LimitHit = namedtuple('LimitHit', 'upper_bound witness nodes_expanded lower_bound')
Exceeded = namedtuple('Exceeded', 'k_max nodes_expanded')
UpperBound = namedtuple('UpperBound', 'value witness method proven_optimal')

class PackingSearch(object):
    """One k-round: is there a packing coloring with colors 1..k?"""

    def __init__(self, g, dm, k, order=None, fixed=None, node_limit=DEFAULT_NODE_LIMIT):
        self.g = g
        self.dm = dm
        self.k = k
        self.fixed = dict(fixed or { })
        self.node_limit = node_limit
        self.nodes = 0
        self.limit_hit = False

        if order is None:
            order = breadth_first_order(g)

        self.order = [ v for v in order if v not in self.fixed ]

        n = g.vertex_count
        self.degree = [ g.degree(v) for v in range(n) ]

        # Colors from here on are used at most once.
        self.singleton_from = max(dm.diameter, 2)
        self.break_symmetry = not self.fixed

        self.balls = [ None ]

        for c in range(1, k + 1):
            within = dm.dist <= c
            np.fill_diagonal(within, False)
            self.balls.append([ np.flatnonzero(row).tolist() for row in within ])

        self.colors = [ 0 ] * n
        self.blocked = [ [ 0 ] * n for _ in range(k + 1) ]
        self.used = [ 0 ] * (k + 2)


    def assign(self, v, c):
        self.colors[v] = c
        self.used[c] += 1

        blocked = self.blocked[c]

        for u in self.balls[c][v]:
            blocked[u] += 1


    def unassign(self, v, c):
        self.colors[v] = 0
        self.used[c] -= 1

        blocked = self.blocked[c]

        for u in self.balls[c][v]:
            blocked[u] -= 1


    def allowed(self, v, c):
        if self.blocked[c][v]:
            return False

        if c == 1 and self.degree[v] >= self.k:
            return False

        if self.break_symmetry and c > self.singleton_from and not self.used[c - 1]:
            return False

        return True


    def has_option(self, u):
        for c in range(1, self.k + 1):
            if not self.blocked[c][u] and (c != 1 or self.degree[u] < self.k):
                return True

        return False


    def forward_ok(self, v, c):
        colors = self.colors

        for u in self.balls[c][v]:
            if not colors[u] and not self.has_option(u):
                return False

        return True


    def run(self):
        """Return a color list or None; `limit_hit` tells a cut-off from a proof."""

        for v, c in sorted(self.fixed.items()):
            if not 1 <= c <= self.k or self.blocked[c][v]:
                return None

            self.assign(v, c)

        order = self.order
        depth = 0
        choice = [ 0 ] * len(order)

        while True:
            if depth == len(order):
                return list(self.colors)

            v = order[depth]
            previous = choice[depth]

            if previous:
                self.unassign(v, previous)

            found = 0

            for c in range(previous + 1, self.k + 1):
                if not self.allowed(v, c):
                    continue

                self.nodes += 1

                if self.nodes > self.node_limit:
                    self.limit_hit = True
                    return None

                self.assign(v, c)

                if self.forward_ok(v, c):
                    found = c
                    break

                self.unassign(v, c)

            if found:
                choice[depth] = found
                depth += 1
            else:
                choice[depth] = 0
                depth -= 1

                if depth < 0:
                    return None


def find_packing_coloring(g, dm, k, node_limit=DEFAULT_NODE_LIMIT, fixed=None):
    """A k-coloring or None when none exists; raises NodeLimitReached when the search is cut off."""

    search = PackingSearch(g, dm, k, fixed=fixed, node_limit=node_limit)
    colors = search.run()

    if search.limit_hit:
        raise NodeLimitReached('Search stopped before settling k', { 'k' : k, 'node_limit' : node_limit })

    if colors is None:
        return None

    return PackingColoring(colors)


def exact_chi_p(g, dm=None, options=None):
    """
    Returns a `SolveResult`, a `LimitHit` when the node limit stops the search,
    or an `Exceeded` when no coloring exists with `options.k_max` colors.
    """

    if options is None:
        options = SolverOptions()

    if dm is None:
        dm = all_pairs_distances(g)

    n = g.vertex_count

    if n == 0:
        return SolveResult(0, PackingColoring(()), 0, True)

    fixed = dict(options.fixed or { })
    k_max = options.k_max if options.k_max is not None else n
    k = max(lower_bound(g, dm), max(fixed.values(), default=0))
    order = breadth_first_order(g)
    nodes = 0

    while k <= k_max:
        search = PackingSearch(g, dm, k, order, fixed, options.node_limit - nodes)
        colors = search.run()
        nodes += search.nodes

        logger.info('k-round %d finished after %d nodes', k, search.nodes)

        if search.limit_hit:
            incumbent = greedy_packing_coloring(g, dm, order, fixed)

            logger.warning('node limit %d hit at k=%d; incumbent uses %d colors',
                options.node_limit, k, incumbent.k_used)

            return LimitHit(incumbent.k_used, incumbent, nodes, k)

        if colors is not None:
            return SolveResult(k, PackingColoring(colors), nodes, True)

        k += 1

    return Exceeded(k_max, nodes)


def brute_force_chi_p(g, dm=None, k_max=None):
    """Exhaustive enumeration of color assignments; an oracle for small graphs."""

    n = g.vertex_count

    if n > BRUTE_FORCE_VERTEX_LIMIT:
        raise InvalidParameter(
            'Brute force is limited to small graphs',
            { 'vertex_count' : n, 'limit' : BRUTE_FORCE_VERTEX_LIMIT }
        )

    if dm is None:
        dm = all_pairs_distances(g)

    if n == 0:
        return SolveResult(0, PackingColoring(()), 0, True)

    if k_max is None:
        k_max = n

    us, vs = np.triu_indices(n, k=1)
    ds = dm.dist[us, vs]
    close = ds <= k_max
    us, vs, ds = us[close], vs[close], ds[close]

    nodes = 0

    for k in range(lower_bound(g, dm), k_max + 1):
        total = k ** n

        if total >= 2 ** 62:
            raise InvalidParameter('Enumeration too large', { 'k' : k, 'vertex_count' : n })

        powers = k ** np.arange(n, dtype=np.int64)

        for start in range(0, total, BRUTE_FORCE_CHUNK):
            codes = np.arange(start, min(total, start + BRUTE_FORCE_CHUNK), dtype=np.int64)
            colors = (codes[:, None] // powers) % k + 1

            left = colors[:, us]
            clash = (left == colors[:, vs]) & (left >= ds)
            ok = ~clash.any(axis=1)

            if ok.any():
                hit = int(np.argmax(ok))
                nodes += hit + 1

                return SolveResult(k, PackingColoring(colors[hit]), nodes, True)

            nodes += len(codes)

    return Exceeded(k_max, nodes)


def _from_graph(g, options):
    dm = all_pairs_distances(g)
    result = exact_chi_p(g, dm, options)

    if isinstance(result, SolveResult):
        return UpperBound(result.chi_p, result.witness, 'exact', True)

    if isinstance(result, LimitHit):
        return UpperBound(result.upper_bound, result.witness, 'greedy', False)

    incumbent = greedy_packing_coloring(g, dm)

    return UpperBound(incumbent.k_used, incumbent, 'greedy', False)


def _from_caterpillar(spec, options):
    from .caterpillar import MORE, classify_chi_p
    from .constructions import caterpillar

    chi = classify_chi_p(spec)

    if chi.value != MORE:
        return UpperBound(chi.value, chi.certificate, 'structure', True)

    if chi.exact is not None:
        return UpperBound(chi.exact.chi_p, chi.exact.witness, 'exact', True)

    g = caterpillar(spec)
    dm = all_pairs_distances(g)
    try:
        coloring = find_packing_coloring(g, dm, chi.upper_bound, options.node_limit)
    except NodeLimitReached as e:
        logger.warning('%s', e)
        coloring = None

    if coloring is not None:
        return UpperBound(coloring.k_used, coloring, 'search', False)

    incumbent = greedy_packing_coloring(g, dm)

    return UpperBound(incumbent.k_used, incumbent, 'greedy', False)


def chi_p_upper_via_pattern_or_solver(target, options=None):
    """
    Best upper bound with a witness for a graph or a spec: registry patterns
    for products, structure for caterpillars, the exact solver otherwise.
    """

    from .constructions import CaterpillarSpec, ProductSpec, build_graph, is_canonical, parse_spec
    from .errors import UnsupportedSpec

    if options is None:
        options = SolverOptions()

    if isinstance(target, str):
        target = parse_spec(target)

    if isinstance(target, ProductSpec):
        from .patterns import color_by_theorem

        try:
            colored = color_by_theorem(target)
        except UnsupportedSpec:
            logger.info('no pattern for %s, using the solver', target)
        else:
            proven = colored.exact and colored.coloring.k_used == colored.bound
            return UpperBound(colored.coloring.k_used, colored.coloring, 'pattern', proven)

    if isinstance(target, CaterpillarSpec) and is_canonical(target):
        return _from_caterpillar(target, options)

    g = target if isinstance(target, Graph) else build_graph(target)
    upper = _from_graph(g, options)
    violations = validate(g, all_pairs_distances(g), upper.witness)

    if violations:
        first = violations[0]

        raise InvalidColoring(
            'Witness does not validate',
            { 'method' : upper.method, 'u' : first.u + 1, 'v' : first.v + 1, 'color' : first.color }
        )

    return upper
