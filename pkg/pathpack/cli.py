"""
Command line entry point.

Every subcommand prints a report of `key: value` lines ending in a
`status:` line. Exit status is 0 on success, 1 when a validation or a
cross-check fails and 2 on bad input.
"""

from collections import namedtuple

import argparse
import concurrent.futures
import logging
import os
import sys
import time

from .errors import IncompatiblePattern, MalformedPattern, PathpackError
from .util import get_template

__all__ = [
    'main',
    'render_report',
    'table_cells',
    'evaluate_cell',
    'proven_share',
]

logger = logging.getLogger(__name__)

MAX_EXACT_VERTICES = 60
TABLE_COPIES = range(1, 41)
TABLE_NODE_LIMIT = 2_000_000
MIN_PROVEN_SHARE = 0.9

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

TableCell = namedtuple('TableCell', 'key spec claimed exact')
CellResult = namedtuple('CellResult', 'cell observed method status')

Outcome = namedtuple('Outcome', 'fields status exit_code')

def render_report(command, fields, wall_time, status):
    template = get_template('report_template.txt')

    return template.render(
        command   = command,
        fields    = fields,
        wall_time = wall_time,
        status    = status,
    )


def _parse_range(text):
    """`3`, `2-5` or `1,4,7`."""

    values = [ ]

    try:
        for part in text.split(','):
            low, sep, high = part.partition('-')
            values.extend(range(int(low), int(high) + 1) if sep else [ int(low) ])
    except ValueError:
        raise argparse.ArgumentTypeError('expected a number, a range a-b or a list a,b,c: {}'.format(text))

    return values


def _solver_options(args):
    from .solver import DEFAULT_NODE_LIMIT, SolverOptions

    node_limit = args.node_limit if args.node_limit is not None else DEFAULT_NODE_LIMIT

    return SolverOptions(
        k_max      = getattr(args, 'k_max', None),
        node_limit = node_limit,
    )


def _write_coloring(coloring, path, comments):
    from .graph_io import write_coloring

    if path:
        write_coloring(coloring, path, comments)


def cmd_build(args):
    from .constructions import build_graph, format_spec, parse_spec
    from .graph_io import format_graph, write_graph

    spec = parse_spec(args.spec)
    g = build_graph(spec)
    comments = [ format_spec(spec) ]

    if args.output:
        write_graph(g, args.output, comments)
    else:
        sys.stdout.write(format_graph(g, comments))

    fields = [
        ('spec', format_spec(spec)),
        ('vertices', g.vertex_count),
        ('edges', g.edge_count),
        ('output', args.output or '-'),
    ]

    return Outcome(fields, 'ok', EXIT_OK)


def cmd_solve(args):
    from .graph_io import read_graph
    from .solver import LimitHit, SolveResult, exact_chi_p

    g = read_graph(args.graph)
    result = exact_chi_p(g, options=_solver_options(args))

    fields = [
        ('instance', args.graph),
        ('vertices', g.vertex_count),
        ('edges', g.edge_count),
    ]

    if isinstance(result, SolveResult):
        fields += [ ('chi_p', result.chi_p), ('proven_optimal', 'yes') ]
        _write_coloring(result.witness, args.output, [ 'chi_p {}'.format(result.chi_p) ])
        status = 'solved'

    elif isinstance(result, LimitHit):
        fields += [
            ('lower_bound', result.lower_bound),
            ('upper_bound', result.upper_bound),
            ('proven_optimal', 'no'),
        ]
        _write_coloring(result.witness, args.output, [ 'upper bound {}'.format(result.upper_bound) ])
        status = 'limit-hit'

    else:
        fields.append(('k_max', result.k_max))
        status = 'exceeded'

    fields.append(('nodes', result.nodes_expanded))

    return Outcome(fields, status, EXIT_OK)


def cmd_color(args):
    from .constructions import ProductSpec, format_spec, parse_spec
    from .errors import UnsupportedSpec
    from .patterns import color_by_theorem
    from .solver import chi_p_upper_via_pattern_or_solver

    spec = parse_spec(args.spec)
    fields = [ ('spec', format_spec(spec)) ]

    if isinstance(spec, ProductSpec):
        try:
            colored = color_by_theorem(spec)
        except UnsupportedSpec as e:
            logger.info('%s', e)
        else:
            fields += [
                ('method', 'pattern'),
                ('anchor', colored.anchor),
                ('k_used', colored.coloring.k_used),
                ('bound', colored.bound),
                ('exact', 'yes' if colored.exact else 'no'),
            ]
            fields += [ ('block', '{} {}'.format(copy, name)) for copy, name in colored.trace ]
            _write_coloring(colored.coloring, args.output, [ format_spec(spec) ])

            return Outcome(fields, 'colored', EXIT_OK)

    upper = chi_p_upper_via_pattern_or_solver(spec, _solver_options(args))

    fields += [
        ('method', upper.method),
        ('k_used', upper.value),
        ('proven_optimal', 'yes' if upper.proven_optimal else 'no'),
    ]
    _write_coloring(upper.witness, args.output, [ format_spec(spec) ])

    return Outcome(fields, 'colored', EXIT_OK)


def cmd_verify(args):
    from .graph import all_pairs_distances
    from .graph_io import read_coloring, read_graph
    from .packing import validate

    g = read_graph(args.graph)
    coloring = read_coloring(args.coloring, g.vertex_count)
    violations = validate(g, all_pairs_distances(g), coloring)

    fields = [
        ('instance', args.graph),
        ('coloring', args.coloring),
        ('k_used', coloring.k_used),
        ('violations', len(violations)),
    ]

    for violation in violations[:10]:
        fields.append(('violation', 'u={} v={} color={} distance={}'.format(
            violation.u + 1, violation.v + 1, violation.color, violation.distance)))

    if violations:
        return Outcome(fields, 'invalid', EXIT_FAILED)

    return Outcome(fields, 'valid', EXIT_OK)


def cmd_recognize(args):
    from .caterpillar import MORE, classify_chi_p
    from .constructions import CaterpillarSpec, canonicalize, format_spec, is_canonical, parse_spec, tree_to_caterpillar_spec
    from .errors import InvalidParameter

    if os.path.isfile(args.target):
        from .graph_io import read_graph

        spec = tree_to_caterpillar_spec(read_graph(args.target))
    else:
        spec = parse_spec(args.target)

        if not isinstance(spec, CaterpillarSpec):
            raise InvalidParameter('Expected a caterpillar spec or a tree file', { 'target' : args.target })

    if not is_canonical(spec):
        spec = canonicalize(spec)

    chi = classify_chi_p(spec)

    fields = [
        ('spec', format_spec(spec)),
        ('value', chi.value),
        ('upper_bound', chi.upper_bound),
    ]

    fields += [
        ('family', '{} k={} {}'.format(match.family, match.k, match.orientation))
        for match in chi.matches
    ]

    if chi.value == MORE and chi.exact is not None:
        fields.append(('exact', chi.exact.chi_p))

    if chi.certificate is not None:
        _write_coloring(chi.certificate, args.output, [ format_spec(spec) ])

    return Outcome(fields, 'classified', EXIT_OK)


def cmd_ilp(args):
    from .graph import all_pairs_distances
    from .graph_io import read_graph
    from .ilp import build_model, write_lp
    from .solver import chi_p_upper_via_pattern_or_solver

    g = read_graph(args.graph)
    dm = all_pairs_distances(g)
    k = args.k

    if k is None:
        k = chi_p_upper_via_pattern_or_solver(g, _solver_options(args)).value

    model = build_model(g, dm, k)
    output = args.output or '{}.lp'.format(os.path.splitext(args.graph)[0])
    write_lp(model, output)

    fields = [
        ('instance', args.graph),
        ('k', k),
        ('variables', model.variable_count),
        ('assignments', model.assignment_count),
        ('separations', model.separation_count),
        ('bounds', model.bound_count),
        ('output', output),
    ]

    return Outcome(fields, 'written', EXIT_OK)


def table_cells(copies=TABLE_COPIES):
    """One cell per registry family, representative base size, overlap and copy count."""

    from .constructions import ProductSpec
    from .patterns import claimed_bound, is_exact, registry

    for entry in registry():
        if entry.n_max is not None:
            sizes = [ entry.n_min ]
        else:
            sizes = [ entry.n_min, entry.n_min + entry.modulus ]

        low, high = entry.overlaps

        for n in sizes:
            for l in range(low, high + 1):
                for t in copies:
                    yield TableCell(entry.key, ProductSpec(entry.base_kind, n, l, t), claimed_bound(entry, t), is_exact(entry, t))


def evaluate_cell(cell, node_limit=TABLE_NODE_LIMIT):
    from .constructions import path_aligned_product, product_vertex_count
    from .patterns import color_by_theorem
    from .solver import Exceeded, SolveResult, SolverOptions, exact_chi_p

    try:
        colored = color_by_theorem(cell.spec)
    except (MalformedPattern, IncompatiblePattern) as e:
        logger.error('%s', e)
        return CellResult(cell, None, 'pattern', 'fail')

    if not cell.exact:
        return CellResult(cell, colored.coloring.k_used, 'pattern', 'pass')

    if product_vertex_count(cell.spec) > MAX_EXACT_VERTICES:
        return CellResult(cell, colored.coloring.k_used, 'pattern', 'unchecked')

    g = path_aligned_product(cell.spec)
    result = exact_chi_p(g, options=SolverOptions(k_max=cell.claimed, node_limit=node_limit))

    if isinstance(result, SolveResult):
        status = 'pass' if result.chi_p == cell.claimed else 'fail'
        return CellResult(cell, result.chi_p, 'exact', status)

    if isinstance(result, Exceeded):
        return CellResult(cell, None, 'exact', 'fail')

    return CellResult(cell, None, 'exact', 'skipped')


def proven_share(results):
    """(proven, attempted) over the equality cells small enough for the exact solver."""

    attempted = [ r for r in results if r.cell.exact and r.status != 'unchecked' ]
    proven = sum(1 for r in attempted if r.status == 'pass')

    return proven, len(attempted)


def _cell_line(result):
    from .constructions import format_spec

    cell = result.cell

    return '{} {} claimed{}{} observed={} method={} {}'.format(
        cell.key,
        format_spec(cell.spec),
        '=' if cell.exact else '<=',
        cell.claimed,
        '-' if result.observed is None else result.observed,
        result.method,
        result.status,
    )


def cmd_tables(args):
    cells = list(table_cells())
    node_limit = args.node_limit if args.node_limit is not None else TABLE_NODE_LIMIT
    limits = [ node_limit ] * len(cells)

    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(args.jobs) as executor:
            results = list(executor.map(evaluate_cell, cells, limits))
    else:
        results = list(map(evaluate_cell, cells, limits))

    results.sort(key = lambda r: (r.cell.key, r.cell.spec))

    counts = { 'pass' : 0, 'fail' : 0, 'skipped' : 0, 'unchecked' : 0 }

    for result in results:
        counts[result.status] += 1

    proven, attempted = proven_share(results)

    fields = [ ('cell', _cell_line(result)) for result in results ]
    fields += [
        ('passed', counts['pass']),
        ('failed', counts['fail']),
        ('skipped', counts['skipped']),
        ('unchecked', counts['unchecked']),
        ('proven', '{}/{}'.format(proven, attempted)),
    ]

    if counts['fail']:
        return Outcome(fields, 'fail', EXIT_FAILED)

    if attempted and proven < MIN_PROVEN_SHARE * attempted:
        logger.error('only %d of %d equality cells proven', proven, attempted)
        return Outcome(fields, 'fail', EXIT_FAILED)

    return Outcome(fields, 'pass', EXIT_OK)


def cmd_probe(args):
    from .constructions import format_spec
    from .patterns import DEFAULT_PROBE_BUDGET, conjecture_probe

    budget = args.node_limit if args.node_limit is not None else DEFAULT_PROBE_BUDGET

    if args.lp_dir:
        os.makedirs(args.lp_dir, exist_ok=True)

    report = conjecture_probe(args.family, args.overlaps, args.sizes, args.copies, budget, args.lp_dir)

    fields = [ ]

    for row in report.rows:
        fields.append(('instance', '{} upper={} method={} proven={} conjectured<={}'.format(
            format_spec(row.spec),
            '-' if row.upper is None else row.upper,
            row.method,
            'yes' if row.proven_optimal else 'no',
            '-' if row.conjectured is None else row.conjectured,
        )))

    fields += [ ('instances', len(report.rows)), ('partial', 'yes' if report.partial else 'no') ]

    return Outcome(fields, 'partial' if report.partial else 'complete', EXIT_OK)


def cmd_crosscheck(args):
    from .caterpillar import CROSSCHECK_NODE_LIMIT, enumerate_and_crosscheck
    from .constructions import format_spec

    node_limit = args.node_limit if args.node_limit is not None else CROSSCHECK_NODE_LIMIT
    report = enumerate_and_crosscheck(args.l_max, args.m_max, node_limit, args.jobs)

    fields = [
        ('checked', report.checked),
        ('disagreements', len(report.disagreements)),
        ('partial', 'yes' if report.partial else 'no'),
    ]

    fields += [
        ('disagreement', '{} recognized={} exact={}'.format(format_spec(d.spec), d.recognized, d.exact))
        for d in report.disagreements
    ]

    if report.disagreements:
        return Outcome(fields, 'disagree', EXIT_FAILED)

    return Outcome(fields, 'agree', EXIT_OK)


def build_parser():
    parser = argparse.ArgumentParser(prog='pathpack', description='Packing colorings of path-aligned products and caterpillars.')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='INFO with -v, DEBUG with -vv')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-o', '--output', default=None, help='output file')
    common.add_argument('--node-limit', type=int, default=None, help='search node budget')
    common.add_argument('--jobs', type=int, default=1, help='worker processes')
    common.add_argument('--seed', type=int, default=None, help='accepted for reproducible invocations; every algorithm is deterministic')

    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('build', parents=[ common ], help='write the graph of a spec')
    p.add_argument('spec')
    p.set_defaults(handler=cmd_build)

    p = subparsers.add_parser('solve', parents=[ common ], help='exact packing chromatic number of a graph file')
    p.add_argument('graph')
    p.add_argument('--k-max', type=int, default=None)
    p.set_defaults(handler=cmd_solve)

    p = subparsers.add_parser('color', parents=[ common ], help='best known coloring of a spec')
    p.add_argument('spec')
    p.add_argument('--k-max', type=int, default=None)
    p.set_defaults(handler=cmd_color)

    p = subparsers.add_parser('verify', parents=[ common ], help='check a coloring file against a graph file')
    p.add_argument('graph')
    p.add_argument('coloring')
    p.set_defaults(handler=cmd_verify)

    p = subparsers.add_parser('recognize', parents=[ common ], help='classify a caterpillar spec or tree file')
    p.add_argument('target')
    p.set_defaults(handler=cmd_recognize)

    p = subparsers.add_parser('ilp', parents=[ common ], help='export the integer programming model')
    p.add_argument('graph')
    p.add_argument('--k', type=int, default=None, help='color budget, defaults to the best known upper bound')
    p.set_defaults(handler=cmd_ilp)

    p = subparsers.add_parser('tables', parents=[ common ], help='re-derive every registry claim')
    p.set_defaults(handler=cmd_tables)

    p = subparsers.add_parser('probe', parents=[ common ], help='collect upper bounds for open families')
    p.add_argument('family', choices=('cycle', 'k6', 'k1'))
    p.add_argument('--overlaps', type=_parse_range, default=[ 4 ])
    p.add_argument('--sizes', type=_parse_range, default=[ 5, 6, 7, 8 ])
    p.add_argument('--copies', type=_parse_range, default=[ 1, 2 ])
    p.add_argument('--lp-dir', default=None, help='export unsettled instances as LP models here')
    p.set_defaults(handler=cmd_probe)

    p = subparsers.add_parser('crosscheck', parents=[ common ], help='compare caterpillar recognition with the exact solver')
    p.add_argument('--l-max', type=int, default=4)
    p.add_argument('--m-max', type=int, default=1)
    p.set_defaults(handler=cmd_crosscheck)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    level = [ logging.WARNING, logging.INFO, logging.DEBUG ][min(args.verbose, 2)]
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')

    if argv is None:
        argv = sys.argv[1:]

    command = ' '.join(argv)
    started = time.perf_counter()

    try:
        outcome = args.handler(args)
    except PathpackError as e:
        sys.stderr.write('pathpack {}: {}\n'.format(args.command, e))
        return EXIT_BAD_INPUT
    except OSError as e:
        sys.stderr.write('pathpack {}: {}\n'.format(args.command, e))
        return EXIT_BAD_INPUT

    report = render_report(command, outcome.fields, time.perf_counter() - started, outcome.status)

    # Graph text goes to stdout when build has no output file.
    stream = sys.stderr if args.command == 'build' and not args.output else sys.stdout
    stream.write(report)

    return outcome.exit_code
