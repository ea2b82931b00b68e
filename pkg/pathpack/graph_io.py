"""
Edge-list and coloring files.

Graph files follow the DIMACS convention with 1-based vertices:

    c optional comment
    p <n> <m>
    e <u> <v>
    l <v> <tag>

Coloring files carry a `k <k_used>` header and one `v <vertex> <color>` line
per vertex.
"""

import io
import logging

from .errors import GraphParseError, GraphValidationError, InvalidColoring
from .graph import Graph
from .packing import PackingColoring
from .util import split_fields

__all__ = [
    'format_graph',
    'parse_graph',
    'read_graph',
    'write_graph',
    'format_coloring',
    'parse_coloring',
    'read_coloring',
    'write_coloring',
]

logger = logging.getLogger(__name__)

def format_graph(g, comments=None):
    fd = io.StringIO()

    for comment in comments or [ ]:
        fd.write('c {}\n'.format(comment))

    fd.write('p {} {}\n'.format(g.vertex_count, g.edge_count))

    for u, v in g.sorted_edges():
        fd.write('e {} {}\n'.format(u + 1, v + 1))

    for v in range(g.vertex_count):
        tag = g.label(v)

        if tag is None:
            continue

        if not tag or len(split_fields(tag)) != 1:
            raise GraphValidationError('Labels must be single words', { 'vertex' : v + 1, 'label' : tag })

        fd.write('l {} {}\n'.format(v + 1, tag))

    return fd.getvalue()


def _parse_int(field, line_number):
    try:
        return int(field)
    except ValueError:
        raise GraphParseError('Expected an integer', line_number, { 'field' : field })


def parse_graph(text):
    header = None
    header_line = None
    edges = [ ]
    labels = { }

    for line_number, line in enumerate(text.splitlines(), 1):
        fields = split_fields(line)

        if not fields or fields[0] == 'c':
            continue

        kind = fields[0]

        if kind == 'p':
            if header is not None:
                raise GraphParseError('Duplicate problem line', line_number)

            if len(fields) != 3:
                raise GraphParseError('Problem line needs "p <n> <m>"', line_number)

            header = (_parse_int(fields[1], line_number), _parse_int(fields[2], line_number))
            header_line = line_number

        elif kind == 'e':
            if header is None:
                raise GraphParseError('Edge before problem line', line_number)

            if len(fields) != 3:
                raise GraphParseError('Edge line needs "e <u> <v>"', line_number)

            u = _parse_int(fields[1], line_number)
            v = _parse_int(fields[2], line_number)

            if u == v:
                raise GraphValidationError('Self-loop', { 'vertex' : u, 'line' : line_number })

            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise GraphParseError('Edge endpoint out of range', line_number, { 'edge' : (u, v) })

            edges.append((u - 1, v - 1))

        elif kind == 'l':
            if header is None:
                raise GraphParseError('Label before problem line', line_number)

            if len(fields) != 3:
                raise GraphParseError('Label line needs "l <v> <tag>"', line_number)

            v = _parse_int(fields[1], line_number)

            if not 1 <= v <= header[0]:
                raise GraphParseError('Label vertex out of range', line_number, { 'vertex' : v })

            labels[v - 1] = fields[2]

        else:
            raise GraphParseError('Unknown line type', line_number, { 'kind' : kind })

    if header is None:
        raise GraphParseError('Missing problem line', 0)

    vertex_count, edge_count = header

    if len(edges) != edge_count:
        raise GraphParseError(
            'Edge count does not match problem line',
            header_line,
            { 'declared' : edge_count, 'found' : len(edges) }
        )

    label_list = None

    if labels:
        label_list = [ labels.get(v) for v in range(vertex_count) ]

    return Graph(vertex_count, edges, label_list)


def read_graph(path):
    with open(path) as fd:
        return parse_graph(fd.read())


def write_graph(g, path, comments=None):
    text = format_graph(g, comments)

    with open(path, 'w', newline='\n') as fd:
        fd.write(text)

    logger.debug('wrote %d vertices to %s', g.vertex_count, path)


def format_coloring(coloring, comments=None):
    fd = io.StringIO()

    for comment in comments or [ ]:
        fd.write('c {}\n'.format(comment))

    fd.write('k {}\n'.format(coloring.k_used))

    for v, color in enumerate(coloring.colors):
        fd.write('v {} {}\n'.format(v + 1, color))

    return fd.getvalue()


def parse_coloring(text, vertex_count=None):
    declared = None
    colors = { }

    for line_number, line in enumerate(text.splitlines(), 1):
        fields = split_fields(line)

        if not fields or fields[0] == 'c':
            continue

        if fields[0] == 'k' and len(fields) == 2:
            declared = _parse_int(fields[1], line_number)

        elif fields[0] == 'v' and len(fields) == 3:
            v = _parse_int(fields[1], line_number)

            if v < 1 or v in colors:
                raise GraphParseError('Bad or repeated vertex', line_number, { 'vertex' : v })

            colors[v] = _parse_int(fields[2], line_number)

        else:
            raise GraphParseError('Unknown coloring line', line_number, { 'line' : line.strip() })

    if vertex_count is None:
        vertex_count = max(colors, default=0)

    missing = [ v for v in range(1, vertex_count + 1) if v not in colors ]

    if missing or len(colors) != vertex_count:
        raise InvalidColoring(
            'Coloring does not cover every vertex',
            { 'missing' : missing[:5], 'vertex_count' : vertex_count }
        )

    coloring = PackingColoring(colors[v] for v in range(1, vertex_count + 1))

    if declared is not None and declared != coloring.k_used:
        raise InvalidColoring(
            'Header does not match the largest color',
            { 'declared' : declared, 'k_used' : coloring.k_used }
        )

    return coloring


def read_coloring(path, vertex_count=None):
    with open(path) as fd:
        return parse_coloring(fd.read(), vertex_count)


def write_coloring(coloring, path, comments=None):
    with open(path, 'w', newline='\n') as fd:
        fd.write(format_coloring(coloring, comments))
