"""
Immutable simple graphs, the canonical path/cycle/complete builders and
all-pairs distances.

Vertices are dense 0-based indices. Labels are advisory strings recording
where a builder put a vertex; algorithms never look at them.
"""

from collections import namedtuple

import functools
import logging

import numpy as np

from .errors import DisconnectedGraph, GraphValidationError, InvalidParameter

__all__ = [
    'Graph',
    'DistanceMatrix',
    'build_path',
    'build_cycle',
    'build_complete',
    'all_pairs_distances',
]

logger = logging.getLogger(__name__)

DistanceMatrix = namedtuple('DistanceMatrix', 'dist diameter')

class Graph(object):
    def __init__(self, vertex_count, edges, labels=None):
        if vertex_count < 0:
            raise GraphValidationError('Negative vertex count', { 'vertex_count' : vertex_count })

        normalized = set()

        for u, v in edges:
            if u == v:
                raise GraphValidationError('Self-loop', { 'vertex' : u })

            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphValidationError(
                    'Edge endpoint out of range',
                    { 'edge' : (u, v), 'vertex_count' : vertex_count }
                )

            key = (u, v) if u < v else (v, u)

            if key in normalized:
                raise GraphValidationError('Duplicate edge', { 'edge' : key })

            normalized.add(key)

        if labels is not None:
            labels = tuple(labels)

            if len(labels) != vertex_count:
                raise GraphValidationError(
                    'Label count does not match vertex count',
                    { 'labels' : len(labels), 'vertex_count' : vertex_count }
                )

        self.vertex_count = vertex_count
        self.edges = frozenset(normalized)
        self.labels = labels

        adjacency = [ [ ] for _ in range(vertex_count) ]

        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)

        self._adjacency = tuple(tuple(sorted(neighbors)) for neighbors in adjacency)


    @property
    def edge_count(self):
        return len(self.edges)


    def neighbors(self, v):
        return self._adjacency[v]


    def degree(self, v):
        return len(self._adjacency[v])


    def label(self, v):
        if self.labels is None:
            return None

        return self.labels[v]


    def sorted_edges(self):
        return sorted(self.edges)


    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self.edges


    @functools.cached_property
    def distances(self):
        return _breadth_first_distances(self)


    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.sorted_edges())

        return g


    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented

        return (
            self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.labels == other.labels
        )


    def __hash__(self):
        return hash((self.vertex_count, self.edges, self.labels))


    def __repr__(self):
        return 'Graph(vertex_count={}, edge_count={})'.format(self.vertex_count, self.edge_count)


def build_path(n):
    if n < 1:
        raise InvalidParameter('Path needs at least one vertex', { 'n' : n })

    edges = [ (i, i + 1) for i in range(n - 1) ]
    labels = [ 'path:{}'.format(i + 1) for i in range(n) ]

    return Graph(n, edges, labels)


def build_cycle(n):
    if n < 3:
        raise InvalidParameter('Cycle needs at least three vertices', { 'n' : n })

    edges = [ (i, (i + 1) % n) for i in range(n) ]
    labels = [ 'cycle:{}'.format(i + 1) for i in range(n) ]

    return Graph(n, edges, labels)


def build_complete(n):
    if n < 1:
        raise InvalidParameter('Complete graph needs at least one vertex', { 'n' : n })

    edges = [ (u, v) for u in range(n) for v in range(u + 1, n) ]
    labels = [ 'complete:{}'.format(i + 1) for i in range(n) ]

    return Graph(n, edges, labels)


def all_pairs_distances(g):
    """
    Breadth-first search from every vertex. The matrix is computed once per
    graph and its array is read-only, so it can be shared between callers.
    """

    return g.distances


def _breadth_first_distances(g):
    import networkx as nx

    n = g.vertex_count
    dist = np.full((n, n), -1, dtype=np.int32)

    for source, lengths in nx.all_pairs_shortest_path_length(g.to_networkx()):
        for target, length in lengths.items():
            dist[source, target] = length

    unreachable = np.argwhere(dist < 0)

    if len(unreachable):
        u, v = (int(x) for x in unreachable[0])

        raise DisconnectedGraph(
            'Graph is disconnected',
            { 'u' : u + 1, 'v' : v + 1 }
        )

    dist.setflags(write=False)
    diameter = int(dist.max()) if n else 0

    logger.debug('distances computed for %d vertices, diameter %d', n, diameter)

    return DistanceMatrix(dist, diameter)
