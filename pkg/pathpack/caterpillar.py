"""
Caterpillars with packing chromatic number three.

Each family is described by the 3-coloring of its backbone. A backbone
vertex colored 2 or 3 may carry any number of leaves (all colored 1). An
interior backbone vertex colored 1 carries none, and an end colored 1
carries exactly one leaf whose color is fixed by the family. Matching a
spec is therefore a direct check of its leaf counts against the backbone
coloring for that length.
"""

from collections import namedtuple

import concurrent.futures
import itertools
import logging

import numpy as np

from .constructions import (
    CaterpillarSpec,
    canonicalize,
    caterpillar,
    format_spec,
    is_canonical,
    reverse_spec,
)
from .errors import NonCanonicalSpec
from .graph import all_pairs_distances
from .packing import PackingColoring, caterpillar_upper_bound, validate
from .util import cache, split_fields

__all__ = [
    'FamilyTemplate',
    'FamilyMatch',
    'ChiClass',
    'MORE',
    'families',
    'match_families',
    'certificate_3_coloring',
    'classify_chi_p',
    'canonical_specs',
    'enumerate_and_crosscheck',
    'random_caterpillar_specs',
]

logger = logging.getLogger(__name__)

MORE = 'more'
EXACT_VERTEX_BUDGET = 40
CROSSCHECK_NODE_LIMIT = 2_000_000

FamilyTemplate = namedtuple('FamilyTemplate', 'family modulus residue length_min length_max prefix unit suffix end_leaf')
FamilyMatch = namedtuple('FamilyMatch', 'family k orientation spec')
ChiClass = namedtuple('ChiClass', 'value certificate matches upper_bound exact')

Disagreement = namedtuple('Disagreement', 'spec recognized exact')
CrosscheckReport = namedtuple('CrosscheckReport', 'checked disagreements partial')

# family | modulus | residue | length range | prefix | unit | suffix | leaf color of a 1-colored end
RAW_FAMILY_DATA = r'''
G1 | 4 | 0 | 4- | 2 3 | 1 2 1 3 | 1 2 |
G2 | 4 | 1 | 5- |     | 1 2 1 3 | 2   | 3
G3 | 4 | 1 | 5- |     | 3 1 2 1 | 3   |
G4 | 4 | 2 | 2- | 2 3 | 1 2 1 3 |     |
G5 | 4 | 3 | 7- | 2 3 | 1 2 1 3 | 2   |
G6 | 1 | 0 | 3-3 | 2 3 1 | 1 2 1 3 |   | 2
G7 | 4 | 3 | 3- | 2 1 3 | 1 2 1 3 |   |
'''

def _ints(text):
    return tuple(int(field) for field in split_fields(text))


@cache
def families():
    templates = [ ]

    for line in RAW_FAMILY_DATA.strip().splitlines():
        family, modulus, residue, lengths, prefix, unit, suffix, end_leaf = (
            field.strip() for field in line.split('|')
        )

        low, _, high = lengths.partition('-')

        templates.append(FamilyTemplate(
            family,
            int(modulus),
            int(residue),
            int(low),
            int(high) if high else None,
            _ints(prefix),
            _ints(unit),
            _ints(suffix),
            int(end_leaf) if end_leaf else None,
        ))

    return tuple(templates)


def backbone_colors(template, length):
    """Backbone coloring of the family for this length, or None."""

    if length % template.modulus != template.residue or length < template.length_min:
        return None

    if template.length_max is not None and length > template.length_max:
        return None

    repeat, rest = divmod(length - len(template.prefix) - len(template.suffix), len(template.unit))

    if repeat < 0 or rest:
        return None

    return template.prefix + template.unit * repeat + template.suffix


def _fits(template, leaves):
    colors = backbone_colors(template, len(leaves))

    if colors is None:
        return False

    last = len(leaves) - 1

    for i, (color, count) in enumerate(zip(colors, leaves)):
        if color != 1:
            continue

        if i in (0, last):
            if count != 1:
                return False
        elif count:
            return False

    return True


def match_families(spec):
    if not is_canonical(spec):
        raise NonCanonicalSpec(
            'Caterpillar spec has a leafless backbone end; canonicalize it first',
            { 'spec' : format_spec(spec) }
        )

    matches = [ ]

    for template in families():
        for orientation, oriented in (('forward', spec), ('reversed', reverse_spec(spec))):
            if _fits(template, oriented.leaves):
                k = (spec.length - template.residue) // 4 if template.modulus == 4 else 0
                matches.append(FamilyMatch(template.family, k, orientation, spec))

    return matches


def _coloring_from_backbone(spec, colors, end_leaf):
    leaf_colors = [ ]

    for i, count in enumerate(spec.leaves):
        if colors[i] != 1:
            leaf_colors.extend([ 1 ] * count)
        else:
            leaf_colors.extend([ end_leaf ] * count)

    return PackingColoring(list(colors) + leaf_colors)


def certificate_3_coloring(match):
    template = { t.family : t for t in families() }[match.family]
    colors = backbone_colors(template, match.spec.length)

    if match.orientation == 'reversed':
        colors = tuple(reversed(colors))

    return _coloring_from_backbone(match.spec, colors, template.end_leaf)


def _exact_value(spec, node_limit):
    from .solver import SolveResult, SolverOptions, exact_chi_p

    result = exact_chi_p(caterpillar(spec), options=SolverOptions(node_limit=node_limit))

    if isinstance(result, SolveResult):
        return result

    return None


def classify_chi_p(spec, node_limit=CROSSCHECK_NODE_LIMIT):
    if not is_canonical(spec):
        canonical = canonicalize(spec)
        logger.warning('classifying %s as %s', format_spec(spec), format_spec(canonical))
        spec = canonical

    vertex_count = spec.length + sum(spec.leaves)

    if vertex_count == 1:
        return ChiClass(1, PackingColoring([ 1 ]), [ ], 1, None)

    if spec.length == 1:
        return ChiClass(2, PackingColoring([ 2 ] + [ 1 ] * spec.leaves[0]), [ ], 2, None)

    matches = match_families(spec)

    if matches:
        return ChiClass(3, certificate_3_coloring(matches[0]), matches, 3, None)

    exact = None

    if vertex_count <= EXACT_VERTEX_BUDGET:
        exact = _exact_value(spec, node_limit)

    return ChiClass(MORE, None, [ ], caterpillar_upper_bound(spec.length), exact)


def canonical_specs(l_max, m_max):
    """Every canonical caterpillar up to orientation, shortest first."""

    for length in range(1, l_max + 1):
        if length == 1:
            for m in range(m_max + 1):
                yield CaterpillarSpec(1, (m,))
            continue

        for leaves in itertools.product(range(m_max + 1), repeat=length):
            if not leaves[0] or not leaves[-1]:
                continue

            if leaves <= tuple(reversed(leaves)):
                yield CaterpillarSpec(length, leaves)


def _crosscheck_one(spec, node_limit):
    chi = classify_chi_p(spec, node_limit)
    exact = chi.exact or _exact_value(spec, node_limit)

    if exact is None:
        return spec, chi.value, None

    if chi.certificate is not None:
        g = caterpillar(spec)
        assert not validate(g, all_pairs_distances(g), chi.certificate)

    return spec, chi.value, exact.chi_p


def enumerate_and_crosscheck(l_max, m_max, node_limit=CROSSCHECK_NODE_LIMIT, jobs=1):
    """
    Compare the structural classification with the exact solver on every
    canonical caterpillar in range.
    """

    specs = list(canonical_specs(l_max, m_max))
    limits = [ node_limit ] * len(specs)

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(jobs) as executor:
            results = list(executor.map(_crosscheck_one, specs, limits, chunksize=16))
    else:
        results = list(map(_crosscheck_one, specs, limits))

    disagreements = [ ]
    partial = False

    for spec, recognized, exact in results:
        if exact is None:
            partial = True
            continue

        if recognized == MORE:
            agree = exact > 3
        else:
            agree = exact == recognized

        if not agree:
            disagreements.append(Disagreement(spec, recognized, exact))

    logger.info('crosscheck of %d caterpillars: %d disagreements', len(specs), len(disagreements))

    return CrosscheckReport(len(specs), disagreements, partial)


def random_caterpillar_specs(count, l_max, m_max, seed=0):
    rng = np.random.default_rng(seed)
    specs = [ ]

    for _ in range(count):
        length = int(rng.integers(1, l_max + 1))
        leaves = [ int(m) for m in rng.integers(0, m_max + 1, size=length) ]

        if length >= 2:
            leaves[0] = max(leaves[0], 1)
            leaves[-1] = max(leaves[-1], 1)

        specs.append(CaterpillarSpec(length, tuple(leaves)))

    return specs
