import os

import pytest

from pathpack.cli import *
from pathpack.cli import CellResult, TableCell
from pathpack.constructions import ProductSpec


def _report(text):
    lines = text.strip().splitlines()

    assert lines[-1].startswith('status: ')

    return dict(line.split(': ', 1) for line in lines if ': ' in line)


def test_render_report():
    text = render_report('solve g.col', [ ('chi_p', 4), ('nodes', 12) ], 0.25, 'solved')

    assert text == 'command: solve g.col\nchi_p: 4\nnodes: 12\nwall_time: 0.250\nstatus: solved\n'


def test_build_solve_verify(tmpdir, capsys):
    graph = os.path.join(str(tmpdir), 'c6.col')
    coloring = os.path.join(str(tmpdir), 'c6.txt')

    assert main([ 'build', 'cycle 6', '-o', graph ]) == 0
    assert _report(capsys.readouterr().out)['vertices'] == '6'

    assert main([ 'solve', graph, '-o', coloring ]) == 0
    report = _report(capsys.readouterr().out)

    assert report['chi_p'] == '4'
    assert report['status'] == 'solved'

    assert main([ 'verify', graph, coloring ]) == 0
    assert _report(capsys.readouterr().out)['status'] == 'valid'

    bad = os.path.join(str(tmpdir), 'bad.txt')

    with open(bad, 'w') as fd:
        fd.write(''.join('v {} 1\n'.format(v) for v in range(1, 7)))

    assert main([ 'verify', graph, bad ]) == 1
    report = _report(capsys.readouterr().out)

    assert report['status'] == 'invalid'
    assert report['violations'] == '6'


def test_build_to_stdout(capsys):
    assert main([ 'build', 'product cycle n=4 l=2 t=2' ]) == 0

    captured = capsys.readouterr()

    assert 'p 8 9\n' in captured.out
    assert _report(captured.err)['edges'] == '9'


def test_solve_limits(tmpdir, capsys):
    graph = os.path.join(str(tmpdir), 'c5.col')
    main([ 'build', 'cycle 5', '-o', graph ])
    capsys.readouterr()

    assert main([ 'solve', graph, '--k-max', '3' ]) == 0
    assert _report(capsys.readouterr().out)['status'] == 'exceeded'

    graph = os.path.join(str(tmpdir), 'c10.col')
    main([ 'build', 'cycle 10', '-o', graph ])
    capsys.readouterr()

    assert main([ 'solve', graph, '--node-limit', '1' ]) == 0
    assert _report(capsys.readouterr().out)['status'] == 'limit-hit'


def test_color(capsys):
    assert main([ 'color', 'product cycle n=4 l=2 t=3' ]) == 0

    out = capsys.readouterr().out
    report = _report(out)

    assert report['anchor'] == 'c4s-l2'
    assert report['k_used'] == '4'
    assert report['exact'] == 'yes'
    assert 'block: 2 b\n' in out

    assert main([ 'color', 'caterpillar 3:5,2,1' ]) == 0
    assert _report(capsys.readouterr().out)['method'] == 'structure'


def test_recognize(tmpdir, capsys):
    assert main([ 'recognize', 'caterpillar 3:5,2,1' ]) == 0

    report = _report(capsys.readouterr().out)

    assert report['value'] == '3'
    assert report['family'] == 'G6 k=0 forward'

    tree = os.path.join(str(tmpdir), 'tree.col')
    main([ 'build', 'caterpillar 4:1,1,1,1', '-o', tree ])
    capsys.readouterr()

    assert main([ 'recognize', tree ]) == 0

    report = _report(capsys.readouterr().out)

    assert report['value'] == 'more'
    assert report['exact'] == '4'

    assert main([ 'recognize', 'cycle 5' ]) == 2


def test_ilp(tmpdir, capsys):
    graph = os.path.join(str(tmpdir), 'c6.col')
    main([ 'build', 'cycle 6', '-o', graph ])
    capsys.readouterr()

    assert main([ 'ilp', graph ]) == 0

    report = _report(capsys.readouterr().out)

    assert report['k'] == '4'
    assert report['variables'] == '25'
    assert os.path.exists(os.path.join(str(tmpdir), 'c6.lp'))


def test_bad_input(tmpdir, capsys):
    assert main([ 'build', 'product cycle n=4 l=5 t=1' ]) == 2
    assert 'Overlap' in capsys.readouterr().err

    assert main([ 'solve', os.path.join(str(tmpdir), 'missing.col') ]) == 2


def test_crosscheck_and_probe(capsys):
    assert main([ 'crosscheck', '--l-max', '3', '--m-max', '1' ]) == 0
    assert _report(capsys.readouterr().out)['disagreements'] == '0'

    assert main([ 'probe', 'cycle', '--sizes', '5-6', '--copies', '1' ]) == 0

    report = _report(capsys.readouterr().out)

    assert report['instances'] == '2'
    assert report['status'] == 'complete'


def test_table_cells():
    cells = list(table_cells(copies=[ 1, 2 ]))

    assert TableCell('c4s-l2', ProductSpec('cycle', 4, 2, 2), 4, True) in cells

    result = evaluate_cell(TableCell('c4s-l2', ProductSpec('cycle', 4, 2, 2), 4, True))

    assert (result.observed, result.method, result.status) == (4, 'exact', 'pass')

    result = evaluate_cell(TableCell('c4s-l2', ProductSpec('cycle', 4, 2, 5), 5, False))

    assert (result.observed, result.status) == (5, 'pass')

    result = evaluate_cell(TableCell('c4s-l3', ProductSpec('cycle', 4, 3, 20), 4, True))

    assert (result.observed, result.method, result.status) == (4, 'pattern', 'unchecked')


def test_table_cells_cover_long_products():
    cells = list(table_cells())

    assert TableCell('c4s1-l4', ProductSpec('cycle', 9, 4, 40), 5, False) in cells
    assert max(cell.spec.copies for cell in cells) == 40


def test_proven_share():
    exact = TableCell('c4s-l2', ProductSpec('cycle', 4, 2, 2), 4, True)
    bounded = TableCell('c4s-l2', ProductSpec('cycle', 4, 2, 5), 5, False)
    results = [
        CellResult(exact, 4, 'exact', 'pass'),
        CellResult(exact, None, 'exact', 'skipped'),
        CellResult(exact, 4, 'pattern', 'unchecked'),
        CellResult(bounded, 5, 'pattern', 'pass'),
    ]

    assert proven_share(results) == (1, 2)


@pytest.mark.slow
def test_tables(capsys):
    assert main([ 'tables', '--jobs', '2' ]) == 0

    report = _report(capsys.readouterr().out)

    assert report['failed'] == '0'
    assert report['status'] == 'pass'

    proven, attempted = map(int, report['proven'].split('/'))

    assert attempted > 0
    assert int(report['skipped']) <= 0.1 * attempted
    assert proven == attempted - int(report['skipped'])
