import os

import pytest

from pathpack.constructions import ProductSpec, path_aligned_product
from pathpack.errors import IncompleteSolution, InvalidParameter, NodeLimitReached, NotIntegral
from pathpack.graph import all_pairs_distances, build_cycle, build_path
from pathpack.ilp import *
from pathpack.packing import PackingColoring

DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


def _model(g, k):
    return build_model(g, all_pairs_distances(g), k)


def _write(tmpdir, name, text):
    path = os.path.join(str(tmpdir), name)

    with open(path, 'w') as fd:
        fd.write(text)

    return path


def test_golden_model(tmpdir):
    path = os.path.join(str(tmpdir), 'p2.lp')
    write_lp(_model(build_path(2), 2), path)

    with open(path, 'rb') as fd:
        written = fd.read()

    with open(os.path.join(DATA_DIR, 'p2_k2.lp'), 'rb') as fd:
        assert written == fd.read()

    again = os.path.join(str(tmpdir), 'again.lp')
    write_lp(_model(build_path(2), 2), again)

    with open(again, 'rb') as fd:
        assert fd.read() == written


def test_counts():
    model = _model(build_path(2), 2)

    assert (model.assignment_count, model.separation_count, model.bound_count, model.variable_count) == (2, 2, 4, 5)

    model = _model(build_path(3), 3)
    separations = list(model.separations())

    assert (1, 3, 2) in separations
    assert (1, 3, 3) in separations
    assert (1, 3, 1) not in separations
    assert len(separations) == model.separation_count == 8

    assert _model(path_aligned_product(ProductSpec('complete', 4, 2, 2)), 6).variable_count == 49
    assert _model(path_aligned_product(ProductSpec('complete', 4, 2, 3)), 6).variable_count == 73


def test_build_model_checks():
    with pytest.raises(InvalidParameter):
        _model(build_path(2), 0)

    with pytest.raises(InvalidParameter):
        build_model(build_path(3), all_pairs_distances(build_path(2)), 2)


def test_read_solution(tmpdir):
    model = _model(build_cycle(5), 4)
    colors = [ 1, 2, 1, 3, 4 ]
    lines = [ '# objective value 4', 'z 4' ]

    for v, color in enumerate(colors, 1):
        for i in range(1, 5):
            if i == color or i == 1:
                lines.append('x_{}_{} {}'.format(v, i, 1 if i == color else 0))

    reading = read_solution(_write(tmpdir, 'c5.sol', '\n'.join(lines) + '\n'), model)

    assert reading.coloring == PackingColoring(colors)
    assert reading.objective == 4.0
    assert model_admits(model, reading.coloring)


def test_read_solution_errors(tmpdir):
    model = _model(build_path(2), 2)

    path = _write(tmpdir, 'twice.sol', 'x_1_1 1\nx_1_2 1\nx_2_1 1\n')

    with pytest.raises(IncompleteSolution):
        read_solution(path, model)

    path = _write(tmpdir, 'missing.sol', 'x_1_1 1\n')

    with pytest.raises(IncompleteSolution):
        read_solution(path, model)

    path = _write(tmpdir, 'half.sol', 'x_1_1 0.5\nx_2_2 1\n')

    with pytest.raises(NotIntegral):
        read_solution(path, model)

    path = _write(tmpdir, 'near.sol', 'x_1_1 0.9999999\nx_2_2 1.0000001\n')

    assert read_solution(path, model).coloring == PackingColoring([ 1, 2 ])


def test_model_admits():
    model = _model(build_path(4), 3)

    assert model_admits(model, PackingColoring([ 1, 2, 1, 3 ]))
    assert not model_admits(model, PackingColoring([ 1, 2, 2, 1 ]))
    assert not model_admits(model, PackingColoring([ 1, 2, 1, 4 ]))
    assert not model_admits(model, PackingColoring([ 1, 2, 1 ]))


def test_feasibility_threshold():
    from pathpack.constructions import CaterpillarSpec, caterpillar, corona
    from pathpack.graph import build_complete
    from pathpack.solver import exact_chi_p

    corpus = [ build_path(n) for n in (1, 2, 3, 4, 7, 12) ]
    corpus += [ build_cycle(n) for n in (3, 4, 5, 6, 8, 11) ]
    corpus += [ build_complete(4), corona(build_path(3), 2), corona(build_path(4), 1) ]
    corpus += [ caterpillar(CaterpillarSpec(3, (5, 2, 1))), caterpillar(CaterpillarSpec(4, (1, 1, 1, 1))) ]
    corpus += [
        path_aligned_product(ProductSpec('complete', 4, 2, 2)),
        path_aligned_product(ProductSpec('cycle', 4, 2, 3)),
        path_aligned_product(ProductSpec('cycle', 5, 3, 2)),
    ]

    assert len(corpus) == 20

    for g in corpus:
        dm = all_pairs_distances(g)

        assert g.vertex_count <= 12
        assert feasibility_threshold(g, dm) == exact_chi_p(g, dm).chi_p


def test_feasibility_threshold_node_limit():
    g = build_cycle(10)
    dm = all_pairs_distances(g)

    assert feasibility_threshold(g, dm) == 4

    with pytest.raises(NodeLimitReached):
        feasibility_threshold(g, dm, node_limit=1)
