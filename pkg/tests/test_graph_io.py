import os

import pytest

from pathpack.constructions import ProductSpec, path_aligned_product
from pathpack.errors import GraphParseError, GraphValidationError, InvalidColoring
from pathpack.graph import build_path
from pathpack.graph_io import *
from pathpack.packing import PackingColoring


def test_format_graph():
    text = format_graph(build_path(3), comments=[ 'path 3' ])

    assert text == (
        'c path 3\n'
        'p 3 2\n'
        'e 1 2\n'
        'e 2 3\n'
        'l 1 path:1\n'
        'l 2 path:2\n'
        'l 3 path:3\n'
    )


def test_graph_round_trip(tmpdir):
    g = path_aligned_product(ProductSpec('cycle', 5, 3, 3))
    path = os.path.join(str(tmpdir), 'product.col')

    write_graph(g, path, comments=[ 'product cycle n=5 l=3 t=3' ])

    assert read_graph(path) == g


def test_parse_without_labels():
    g = parse_graph('c triangle\np 3 3\ne 1 2\ne 2 3\ne 1 3\n')

    assert g.vertex_count == 3
    assert g.edge_count == 3
    assert g.labels is None


def test_parse_errors():
    with pytest.raises(GraphParseError) as e:
        parse_graph('p 2 1\ne 1 x\n')

    assert e.value.line_number == 2

    with pytest.raises(GraphParseError) as e:
        parse_graph('p 3 2\ne 1 2\n')

    assert e.value.line_number == 1

    with pytest.raises(GraphParseError) as e:
        parse_graph('c nothing here\n')

    assert e.value.line_number == 0

    with pytest.raises(GraphParseError) as e:
        parse_graph('p 2 1\ne 1 3\n')

    assert e.value.line_number == 2

    with pytest.raises(GraphParseError):
        parse_graph('e 1 2\np 2 1\n')

    with pytest.raises(GraphParseError):
        parse_graph('p 2 0\nq 1\n')

    with pytest.raises(GraphValidationError):
        parse_graph('p 2 1\ne 1 1\n')


def test_coloring_round_trip(tmpdir):
    coloring = PackingColoring([ 1, 2, 1, 3 ])
    path = os.path.join(str(tmpdir), 'p4.txt')

    write_coloring(coloring, path, comments=[ 'chi_p 3' ])

    with open(path) as fd:
        assert fd.read() == 'c chi_p 3\nk 3\nv 1 1\nv 2 2\nv 3 1\nv 4 3\n'

    assert read_coloring(path, 4) == coloring


def test_coloring_errors():
    with pytest.raises(InvalidColoring):
        parse_coloring('k 2\nv 1 1\nv 2 3\n')

    with pytest.raises(InvalidColoring):
        parse_coloring('v 1 1\nv 3 2\n')

    with pytest.raises(InvalidColoring):
        parse_coloring('v 1 1\nv 2 2\n', vertex_count=3)

    with pytest.raises(InvalidColoring):
        parse_coloring('v 1 0\n')

    with pytest.raises(GraphParseError):
        parse_coloring('v 1 1\nv 1 2\n')
