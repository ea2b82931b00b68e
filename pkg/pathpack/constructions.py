"""
Parametric graph families: path-aligned products, coronas and caterpillars,
the overlap transforms between products and the spec text grammar.

Layout of a product with base size n, overlap l and t copies: path vertices
come first (indices 0 .. l*t - 1), then the n - l off-path vertices of copy 1,
copy 2 and so on. Cycle off-path vertices are stored in traversal order from
the neighbor of the copy's first path vertex to the neighbor of its last.
"""

from collections import namedtuple

import logging
import re

from .errors import (
    InvalidOverlap,
    InvalidParameter,
    NotACaterpillar,
    NotATree,
)
from .graph import Graph, build_complete, build_cycle, build_path
from .util import split_fields

__all__ = [
    'ProductSpec',
    'CaterpillarSpec',
    'CoronaSpec',
    'BasicSpec',
    'IsoWitness',
    'check_product_spec',
    'copy_vertices',
    'path_aligned_product',
    'check_witness',
    'cycle_overlap_transform',
    'complete_overlap_transform',
    'corona',
    'caterpillar',
    'is_canonical',
    'reverse_spec',
    'canonicalize',
    'tree_to_caterpillar_spec',
    'parse_spec',
    'format_spec',
    'build_graph',
]

logger = logging.getLogger(__name__)

BASE_KINDS = ('cycle', 'complete')

ProductSpec = namedtuple('ProductSpec', 'base_kind n overlap copies')
CaterpillarSpec = namedtuple('CaterpillarSpec', 'length leaves')
CoronaSpec = namedtuple('CoronaSpec', 'base_kind n p')
BasicSpec = namedtuple('BasicSpec', 'kind n')
IsoWitness = namedtuple('IsoWitness', 'forward attested')

def check_product_spec(spec):
    if spec.base_kind not in BASE_KINDS:
        raise InvalidParameter('Unknown base graph', { 'base_kind' : spec.base_kind })

    if spec.n < 3:
        raise InvalidParameter('Base graph needs at least three vertices', { 'n' : spec.n })

    if spec.copies < 1:
        raise InvalidParameter('Product needs at least one copy', { 'copies' : spec.copies })

    if not 1 <= spec.overlap <= spec.n:
        raise InvalidOverlap('Overlap must lie in 1..n', { 'overlap' : spec.overlap, 'n' : spec.n })


def product_vertex_count(spec):
    return spec.n * spec.copies


def copy_vertices(spec, copy):
    """Path and off-path vertex indices of copy `copy` (1-based)."""

    l = spec.overlap
    off = spec.n - l
    path_start = (copy - 1) * l
    off_start = l * spec.copies + (copy - 1) * off

    return (
        list(range(path_start, path_start + l)),
        list(range(off_start, off_start + off)),
    )


def path_aligned_product(spec):
    check_product_spec(spec)

    if spec.overlap == 1:
        logger.warning('overlap 1 products are experimental: %s', format_spec(spec))

    l = spec.overlap
    t = spec.copies
    path_length = l * t
    edges = set((i, i + 1) for i in range(path_length - 1))
    labels = [ 'path:{}'.format(i + 1) for i in range(path_length) ]

    for copy in range(1, t + 1):
        path, off = copy_vertices(spec, copy)
        labels.extend('{}:{}:{}'.format(spec.base_kind, copy, j + 1) for j in range(len(off)))

        if spec.base_kind == 'cycle':
            ring = [ path[0] ] + off + [ path[-1] ]

            for u, v in zip(ring, ring[1:]):
                edges.add((min(u, v), max(u, v)))

        else:
            members = path + off

            for i, u in enumerate(members):
                for v in members[i + 1:]:
                    edges.add((min(u, v), max(u, v)))

    logger.debug('built %s with %d vertices and %d edges', format_spec(spec), len(labels), len(edges))

    return Graph(len(labels), edges, labels)


def check_witness(source, target, forward):
    """True when `forward` is a bijection mapping edges onto edges."""

    if source.vertex_count != target.vertex_count or len(forward) != source.vertex_count:
        return False

    if sorted(forward) != list(range(target.vertex_count)):
        return False

    if source.edge_count != target.edge_count:
        return False

    return all(target.has_edge(forward[u], forward[v]) for u, v in source.edges)


def _check_transform_overlap(spec, overlap):
    if not 2 <= overlap <= spec.n:
        raise InvalidOverlap('Transform overlap must lie in 2..n', { 'overlap' : overlap, 'n' : spec.n })


def cycle_overlap_transform(spec):
    """
    Re-route each copy's path through the other side of its cycle. The
    result has overlap n - l + 2 and the witness maps source vertices to the
    vertices of the transformed product.
    """

    check_product_spec(spec)

    if spec.base_kind != 'cycle':
        raise InvalidParameter('Cycle transform needs a cycle base', { 'base_kind' : spec.base_kind })

    _check_transform_overlap(spec, spec.overlap)

    target = spec._replace(overlap=spec.n - spec.overlap + 2)
    forward = [ None ] * product_vertex_count(spec)

    for copy in range(1, spec.copies + 1):
        path, off = copy_vertices(spec, copy)
        target_path, target_off = copy_vertices(target, copy)

        forward[path[0]] = target_path[0]
        forward[path[-1]] = target_path[-1]

        for j, w in enumerate(off):
            forward[w] = target_path[1 + j]

        for m, p in enumerate(path[1:-1]):
            forward[p] = target_off[m]

    attested = check_witness(path_aligned_product(spec), path_aligned_product(target), forward)

    logger.debug('cycle transform %s -> %s attested=%s', format_spec(spec), format_spec(target), attested)

    return target, IsoWitness(tuple(forward), attested)


def complete_overlap_transform(spec, overlap):
    check_product_spec(spec)

    if spec.base_kind != 'complete':
        raise InvalidParameter('Complete transform needs a complete base', { 'base_kind' : spec.base_kind })

    _check_transform_overlap(spec, spec.overlap)
    _check_transform_overlap(spec, overlap)

    target = spec._replace(overlap=overlap)
    forward = [ None ] * product_vertex_count(spec)

    for copy in range(1, spec.copies + 1):
        path, off = copy_vertices(spec, copy)
        target_path, target_off = copy_vertices(target, copy)

        order = path[:-1] + off + path[-1:]
        target_order = target_path[:-1] + target_off + target_path[-1:]

        for u, v in zip(order, target_order):
            forward[u] = v

    attested = check_witness(path_aligned_product(spec), path_aligned_product(target), forward)

    return target, IsoWitness(tuple(forward), attested)


def corona(g, p):
    if p < 1:
        raise InvalidParameter('Corona needs at least one leaf per vertex', { 'p' : p })

    n = g.vertex_count
    edges = list(g.edges)
    labels = [ g.label(v) for v in range(n) ]

    for v in range(n):
        for j in range(p):
            edges.append((v, len(labels)))
            labels.append('leaf:{}:{}'.format(v + 1, j + 1))

    return Graph(len(labels), edges, labels)


def is_canonical(spec):
    if spec.length < 2:
        return True

    return spec.leaves[0] >= 1 and spec.leaves[-1] >= 1


def _check_caterpillar_spec(spec):
    if spec.length < 1 or len(spec.leaves) != spec.length:
        raise InvalidParameter(
            'Caterpillar needs one leaf count per backbone vertex',
            { 'length' : spec.length, 'leaves' : tuple(spec.leaves) }
        )

    if any(m < 0 for m in spec.leaves):
        raise InvalidParameter('Leaf counts must be nonnegative', { 'leaves' : tuple(spec.leaves) })


def caterpillar(spec):
    _check_caterpillar_spec(spec)

    if not is_canonical(spec):
        logger.warning('non-canonical caterpillar %s; its backbone is shorter', format_spec(spec))

    l = spec.length
    edges = [ (i, i + 1) for i in range(l - 1) ]
    labels = [ 'backbone:{}'.format(i + 1) for i in range(l) ]

    for parent, count in enumerate(spec.leaves):
        for j in range(count):
            edges.append((parent, len(labels)))
            labels.append('leaf:{}:{}'.format(parent + 1, j + 1))

    return Graph(len(labels), edges, labels)


def reverse_spec(spec):
    return CaterpillarSpec(spec.length, tuple(reversed(spec.leaves)))


def canonicalize(spec):
    """
    Fold leafless backbone ends into leaves of their neighbors and pick the
    lexicographically smaller orientation.
    """

    _check_caterpillar_spec(spec)

    leaves = list(spec.leaves)

    while len(leaves) >= 2 and leaves[0] == 0:
        leaves.pop(0)
        leaves[0] += 1

    while len(leaves) >= 2 and leaves[-1] == 0:
        leaves.pop()
        leaves[-1] += 1

    leaves = min(tuple(leaves), tuple(reversed(leaves)))

    return CaterpillarSpec(len(leaves), leaves)


def tree_to_caterpillar_spec(g):
    import networkx as nx

    nxg = g.to_networkx()

    if g.vertex_count == 0 or not nx.is_tree(nxg):
        raise NotATree('Graph is not a tree', { 'vertices' : g.vertex_count, 'edges' : g.edge_count })

    if g.vertex_count == 1:
        return CaterpillarSpec(1, (0,))

    if g.vertex_count == 2:
        return CaterpillarSpec(1, (1,))

    inner = [ v for v in range(g.vertex_count) if g.degree(v) >= 2 ]
    backbone = nxg.subgraph(inner)

    for v in inner:
        if backbone.degree(v) >= 3:
            raise NotACaterpillar(
                'Pendant removal leaves a vertex of degree three or more',
                { 'vertex' : v + 1, 'degree' : backbone.degree(v) }
            )

    ends = [ v for v in inner if backbone.degree(v) <= 1 ]
    order = [ ends[0] ]

    if len(inner) > 1:
        order = nx.shortest_path(backbone, ends[0], ends[-1])

    leaves = tuple(g.degree(v) - backbone.degree(v) for v in order)

    return CaterpillarSpec(len(leaves), min(leaves, tuple(reversed(leaves))))


SPEC_RE = re.compile(r'^(?P<key>[a-z]+)=(?P<value>\d+)$')

def _keyword_fields(fields, names, text):
    values = { }

    for field in fields:
        m = SPEC_RE.match(field)

        if not m or m.group('key') not in names or m.group('key') in values:
            raise InvalidParameter('Malformed spec field', { 'field' : field, 'spec' : text })

        values[m.group('key')] = int(m.group('value'))

    if set(values) != set(names):
        raise InvalidParameter('Spec is missing fields', { 'needs' : names, 'spec' : text })

    return values


def _parse_count(field, text):
    if not field.isdigit():
        raise InvalidParameter('Expected a number', { 'field' : field, 'spec' : text })

    return int(field)


def parse_spec(text):
    """
    Parse one of

        product cycle|complete n=<n> l=<l> t=<t>
        caterpillar <l>:<m1>,<m2>,...
        corona path|cycle|complete:<n> p=<p>
        path <n> | cycle <n> | complete <n>
    """

    fields = split_fields(text)

    if not fields:
        raise InvalidParameter('Empty spec', { 'spec' : text })

    kind, rest = fields[0], fields[1:]

    if kind == 'product':
        if not rest or rest[0] not in BASE_KINDS:
            raise InvalidParameter('Product needs a cycle or complete base', { 'spec' : text })

        values = _keyword_fields(rest[1:], ('n', 'l', 't'), text)
        spec = ProductSpec(rest[0], values['n'], values['l'], values['t'])
        check_product_spec(spec)

        return spec

    if kind == 'caterpillar':
        if len(rest) != 1 or rest[0].count(':') != 1:
            raise InvalidParameter('Caterpillar needs "<l>:<m1>,..."', { 'spec' : text })

        length, counts = rest[0].split(':')
        leaves = tuple(_parse_count(m, text) for m in counts.split(','))
        spec = CaterpillarSpec(_parse_count(length, text), leaves)
        _check_caterpillar_spec(spec)

        return spec

    if kind == 'corona':
        if len(rest) != 2 or rest[0].count(':') != 1:
            raise InvalidParameter('Corona needs "<base>:<n> p=<p>"', { 'spec' : text })

        base, n = rest[0].split(':')

        if base not in ('path',) + BASE_KINDS:
            raise InvalidParameter('Unknown corona base', { 'base' : base })

        values = _keyword_fields(rest[1:], ('p',), text)

        return CoronaSpec(base, _parse_count(n, text), values['p'])

    if kind in ('path',) + BASE_KINDS:
        if len(rest) != 1:
            raise InvalidParameter('Expected "<kind> <n>"', { 'spec' : text })

        return BasicSpec(kind, _parse_count(rest[0], text))

    raise InvalidParameter('Unknown spec kind', { 'kind' : kind })


def format_spec(spec):
    if isinstance(spec, ProductSpec):
        return 'product {} n={} l={} t={}'.format(*spec)

    if isinstance(spec, CaterpillarSpec):
        return 'caterpillar {}:{}'.format(spec.length, ','.join(str(m) for m in spec.leaves))

    if isinstance(spec, CoronaSpec):
        return 'corona {}:{} p={}'.format(*spec)

    if isinstance(spec, BasicSpec):
        return '{} {}'.format(*spec)

    raise InvalidParameter('Not a spec', { 'spec' : spec })


BASIC_BUILDERS = {
    'path' : build_path,
    'cycle' : build_cycle,
    'complete' : build_complete,
}

def build_graph(spec):
    if isinstance(spec, str):
        spec = parse_spec(spec)

    if isinstance(spec, ProductSpec):
        return path_aligned_product(spec)

    if isinstance(spec, CaterpillarSpec):
        return caterpillar(spec)

    if isinstance(spec, CoronaSpec):
        return corona(BASIC_BUILDERS[spec.base_kind](spec.n), spec.p)

    if isinstance(spec, BasicSpec):
        return BASIC_BUILDERS[spec.kind](spec.n)

    raise InvalidParameter('Not a spec', { 'spec' : spec })
