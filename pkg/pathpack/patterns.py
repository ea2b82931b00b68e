"""
Coloring patterns for path-aligned products and the registry of families
they are known to color.

A block describes one copy of the base graph. Bold path colors are written
in braces, plain off-path colors bare, a repeated run as `[...]*` and the
colors of the copy's remaining path vertices, last to second, as a second
braced group:

    {2} 1 [3 1 2 1]* {3 1}

The first bold color goes to the copy's first path vertex, plain colors
follow the off-path vertices in traversal order.
"""

from collections import namedtuple

import logging
import os
import re

from .constructions import (
    ProductSpec,
    check_product_spec,
    complete_overlap_transform,
    copy_vertices,
    cycle_overlap_transform,
    format_spec,
    path_aligned_product,
    product_vertex_count,
)
from .errors import IncompatiblePattern, MalformedPattern, UnsupportedSpec
from .graph import all_pairs_distances
from .packing import PackingColoring, validate
from .util import cache, split_fields

__all__ = [
    'BoldColor',
    'PlainColor',
    'Star',
    'ReversedBoldSuffix',
    'Block',
    'Pattern',
    'TheoremEntry',
    'Unsupported',
    'TheoremColoring',
    'parse_block',
    'expand_pattern',
    'ProbeRow',
    'ProbeReport',
    'registry',
    'lookup',
    'claimed_bound',
    'is_exact',
    'schedule_blocks',
    'color_by_theorem',
    'block_trace',
    'conjecture_probe',
]

logger = logging.getLogger(__name__)

BoldColor = namedtuple('BoldColor', 'color')
PlainColor = namedtuple('PlainColor', 'color')
Star = namedtuple('Star', 'colors')
ReversedBoldSuffix = namedtuple('ReversedBoldSuffix', 'colors')

Block = namedtuple('Block', 'name items')
Pattern = namedtuple('Pattern', 'blocks')

Phase = namedtuple('Phase', 't_min t_max unit remainder overrides')

TheoremEntry = namedtuple('TheoremEntry', [
    'key',
    'base_kind',
    'modulus',
    'residue',
    'n_min',
    'n_max',
    'overlaps',
    'pattern_overlap',
    'bounds',
    'equality',
    'phases',
    'blocks',
])

Unsupported = namedtuple('Unsupported', 'spec reason hint hint_supported')
TheoremColoring = namedtuple('TheoremColoring', 'coloring bound exact anchor trace')

token_re = re.compile(r'\{[^{}]*\}|\[[^\[\]]*\]\*|\d+|\S')

def _colors(text, block_text):
    fields = split_fields(text)

    if not fields or not all(f.isdigit() and int(f) >= 1 for f in fields):
        raise MalformedPattern('Expected positive colors', { 'block' : block_text, 'group' : text })

    return [ int(f) for f in fields ]


def parse_block(text, name=''):
    items = [ ]
    braces = 0

    for token in token_re.findall(text):
        if token.startswith('{'):
            colors = _colors(token[1:-1], text)
            braces += 1

            if braces == 1:
                if len(colors) != 1 or items:
                    raise MalformedPattern('Block must open with one bold color', { 'block' : text })

                items.append(BoldColor(colors[0]))

            elif braces == 2:
                items.append(ReversedBoldSuffix(colors))

            else:
                raise MalformedPattern('Too many bold groups', { 'block' : text })

        elif token.startswith('['):
            if any(isinstance(item, Star) for item in items):
                raise MalformedPattern('At most one repetition per block', { 'block' : text })

            items.append(Star(_colors(token[1:-2], text)))

        elif token.isdigit():
            if braces != 1:
                raise MalformedPattern('Plain color outside the off-path run', { 'block' : text })

            items.append(PlainColor(int(token)))

        else:
            raise MalformedPattern('Unexpected character', { 'block' : text, 'token' : token })

    if not braces:
        raise MalformedPattern('Block has no bold color', { 'block' : text })

    return Block(name, tuple(items))


def bold_count(block):
    count = 0

    for item in block.items:
        if isinstance(item, BoldColor):
            count += 1
        elif isinstance(item, ReversedBoldSuffix):
            count += len(item.colors)

    return count


def _expand_block(block, spec):
    """Return (path colors, off-path colors) of one copy."""

    if bold_count(block) != spec.overlap:
        raise MalformedPattern(
            'Bold colors do not match the overlap',
            { 'block' : block.name, 'bold' : bold_count(block), 'overlap' : spec.overlap }
        )

    off_count = spec.n - spec.overlap
    fixed = sum(1 for item in block.items if isinstance(item, PlainColor))
    stars = [ item for item in block.items if isinstance(item, Star) ]
    repeat = 0

    if stars:
        width = len(stars[0].colors)
        repeat, rest = divmod(off_count - fixed, width)

        if repeat < 0 or rest:
            raise IncompatiblePattern(
                'Repetition does not fill the off-path vertices',
                { 'block' : block.name, 'n' : spec.n, 'overlap' : spec.overlap }
            )

    elif fixed != off_count:
        raise IncompatiblePattern(
            'Plain colors do not fill the off-path vertices',
            { 'block' : block.name, 'plain' : fixed, 'off_path' : off_count }
        )

    path = [ None ] * spec.overlap
    off = [ ]

    for item in block.items:
        if isinstance(item, BoldColor):
            path[0] = item.color
        elif isinstance(item, PlainColor):
            off.append(item.color)
        elif isinstance(item, Star):
            off.extend(item.colors * repeat)
        else:
            # Last path vertex first, down to the second.
            for offset, color in enumerate(item.colors):
                path[spec.overlap - 1 - offset] = color

    return path, off


def expand_pattern(pattern, spec):
    check_product_spec(spec)

    if len(pattern.blocks) != spec.copies:
        raise MalformedPattern(
            'Block count does not match the copies',
            { 'blocks' : len(pattern.blocks), 'copies' : spec.copies }
        )

    colors = [ 0 ] * product_vertex_count(spec)

    for copy, block in enumerate(pattern.blocks, 1):
        path_colors, off_colors = _expand_block(block, spec)
        path, off = copy_vertices(spec, copy)

        for v, color in zip(path + off, path_colors + off_colors):
            colors[v] = color

    return PackingColoring(colors)


# key | base | modulus | residue | n_min | n_max | overlaps | pattern overlap | bounds | equality
RAW_FAMILY_DATA = r'''
c4s-l2   | cycle    | 4 | 0 | 4  | -  | 2   | 2 | 1:3,2-3:4,4-:5 | 1-3
c4s-l3   | cycle    | 4 | 0 | 4  | -  | 3   | 3 | 1:3,2-:4       | 1-
c5-l2    | cycle    | 1 | 0 | 5  | 5  | 2   | 2 | 1:4,2-4:5,5-:6 | 1-4
c4s1-l2  | cycle    | 4 | 1 | 9  | -  | 2   | 2 | 1-3:4,4-:5     | 1-3
c5-l3    | cycle    | 1 | 0 | 5  | 5  | 3   | 3 | 1:4,2-:5       | 1-
c4s1-l3  | cycle    | 4 | 1 | 9  | -  | 3   | 3 | 1-2:4,3-:5     | 1-2
c4s2-l2  | cycle    | 4 | 2 | 6  | -  | 2   | 2 | 1-2:4,3-:5     | 1-2
c6-l3    | cycle    | 1 | 0 | 6  | 6  | 3   | 3 | 1-2:4,3-:5     | 1-2
c4s2-l3  | cycle    | 4 | 2 | 10 | -  | 3   | 3 | 1-3:4,4-:5     | 1-3
c3-l2    | cycle    | 1 | 0 | 3  | 3  | 2   | 2 | 1:3,2-3:4,4-:5 | 1-3
c4s3-l2  | cycle    | 4 | 3 | 7  | -  | 2   | 2 | 1-2:4,3-:5     | 1-2
c3-l3    | cycle    | 1 | 0 | 3  | 3  | 3   | 3 | 1:3,2-3:4,4-:5 | 1-3
c4s3-l3  | cycle    | 4 | 3 | 7  | -  | 3   | 3 | 1-2:4,3-:5     | 1-2
c4s1-l4  | cycle    | 4 | 1 | 9  | -  | 4   | 4 | 1-:5           |
k3       | complete | 1 | 0 | 3  | 3  | 2-3 | 2 | 1:3,2-3:4,4-:5 | 1-3
k4       | complete | 1 | 0 | 4  | 4  | 2-4 | 2 | 1:4,2-3:6,4-:8 | 1-3
k5       | complete | 1 | 0 | 5  | 5  | 2-5 | 2 | 1-:14          |
'''

# key | copies | unit | remainders | overrides
RAW_SCHEDULE_DATA = r'''
c4s-l2   | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
c4s-l3   | 1-   | a b c d                 | 1=a;2=a b;3=a b c     |
c5-l2    | 1-4  | a b c d                 | 2=a b;3=a b c         | 1=x
c5-l2    | 5-   | a' b' a' c'             | 1=a';2=a' b';3=a' b' a' |
c4s1-l2  | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
c5-l3    | 1-   | a b                     | 1=a                   | 1=x
c4s1-l3  | 1-2  | p q                     | 1=p                   |
c4s1-l3  | 3-   | a b c d                 | 1=a;2=a b;3=a b c     |
c4s2-l2  | 1-2  | p q                     | 1=p                   |
c4s2-l2  | 3-   | a q                     | 1=a                   |
c6-l3    | 1-2  | p q                     | 1=p                   |
c6-l3    | 3-   | a b c d                 | 1=a;2=a b;3=a b c     |
c4s2-l3  | 1-3  | p q r                   | 1=p;2=p q             |
c4s2-l3  | 4-   | a b c d                 | 1=a;2=a b;3=a b c     |
c3-l2    | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
c4s3-l2  | 1-2  | p q                     | 1=p                   |
c4s3-l2  | 3-   | a q                     | 1=a                   |
c3-l3    | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
c4s3-l3  | 1-2  | p q                     | 1=p                   |
c4s3-l3  | 3-   | p b                     | 1=p                   |
c4s1-l4  | 1-   | a                       |                       |
k3       | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
k4       | 1-   | a b a c                 | 1=a;2=a b;3=a b a     |
k5       | 1-   | a b c d e f g h i j k l | 1=a;2=a b;3=a b c;4=a b c d;5=a b c d e;6=a b c d e f;7=a b c d e f g;8=a b c d e f g h;9=a b c d e f g h i;10=a b c d e f g h i j;11=a b c d e f g h i j k |
'''

# key | block | notation
RAW_BLOCK_DATA = r'''
c4s-l2   | a  | {3} 1 [2 1 3 1]* 2 {1}
c4s-l2   | b  | {4} 1 [2 1 3 1]* 2 {1}
c4s-l2   | c  | {5} 1 [2 1 3 1]* 2 {1}
c4s-l3   | a  | {2} 1 [3 1 2 1]* {3 1}
c4s-l3   | b  | {1} 2 [1 3 1 2]* {1 4}
c4s-l3   | c  | {3} 1 [2 1 3 1]* {2 1}
c4s-l3   | d  | {1} 3 [1 2 1 3]* {1 4}
c5-l2    | x  | {1} 2 1 3 {4}
c5-l2    | a  | {1} 3 5 1 {2}
c5-l2    | b  | {1} 3 1 2 {4}
c5-l2    | c  | {1} 2 3 1 {5}
c5-l2    | d  | {1} 3 1 4 {2}
c5-l2    | a' | {1} 3 4 1 {2}
c5-l2    | b' | {1} 3 4 2 {5}
c5-l2    | c' | {1} 3 4 2 {6}
c4s1-l2  | a  | {1} 3 2 1 4 [1 3 1 2]* 1 3 1 {2}
c4s1-l2  | b  | {1} 3 1 2 1 [3 1 2 1]* 3 2 1 {4}
c4s1-l2  | c  | {1} 3 1 2 1 [3 1 2 1]* 3 2 1 {5}
c5-l3    | x  | {1} 2 1 {3 4}
c5-l3    | a  | {1} 3 2 {1 5}
c5-l3    | b  | {4} 3 1 {2 1}
c4s1-l3  | p  | {3} 1 4 2 1 3 1 [2 1 3 1]* {2 1}
c4s1-l3  | q  | {1} 3 1 2 1 3 [1 2 1 3]* 1 {2 4}
c4s1-l3  | a  | {1} 4 2 1 3 1 [2 1 3 1]* 2 {1 5}
c4s1-l3  | b  | {3} 1 2 1 3 1 [2 1 3 1]* 4 {2 1}
c4s1-l3  | c  | {1} 3 1 2 1 3 [1 2 1 3]* 4 {1 5}
c4s1-l3  | d  | {2} 1 3 4 1 2 [1 3 1 2]* 1 {3 1}
c4s2-l2  | p  | {1} 2 4 [1 2 1 3]* 1 2 {3}
c4s2-l2  | q  | {1} 4 1 [3 1 2 1]* 3 1 {2}
c4s2-l2  | a  | {1} 5 4 [1 2 1 3]* 1 2 {3}
c6-l3    | p  | {1} 3 1 4 {1 2}
c6-l3    | q  | {3} 2 1 4 {2 1}
c6-l3    | a  | {1} 5 1 4 {1 3}
c6-l3    | b  | {2} 1 5 1 {3 1}
c6-l3    | c  | {1} 4 1 5 {1 2}
c6-l3    | d  | {3} 1 4 1 {2 1}
c4s2-l3  | p  | {1} 3 1 2 1 3 [1 2 1 3]* 1 4 {1 2}
c4s2-l3  | q  | {3} 2 1 4 1 2 3 1 [2 1 3 1]* {2 1}
c4s2-l3  | r  | {1} 4 1 2 1 3 [1 2 1 3]* 1 2 {1 3}
c4s2-l3  | a  | {1} 5 1 3 1 2 [1 3 1 2]* 1 4 {1 3}
c4s2-l3  | b  | {2} 1 3 1 2 1 [3 1 2 1]* 5 1 {3 1}
c4s2-l3  | c  | {1} 4 1 2 1 3 [1 2 1 3]* 1 5 {1 2}
c4s2-l3  | d  | {3} 1 2 1 3 [1 2 1 3]* 1 4 1 {2 1}
c3-l2    | a  | {3} 2 {1}
c3-l2    | b  | {4} 2 {1}
c3-l2    | c  | {5} 2 {1}
c4s3-l2  | p  | {1} 2 4 [1 2 1 3]* 1 2 1 {3}
c4s3-l2  | q  | {1} 4 2 [1 3 1 2]* 1 3 1 {2}
c4s3-l2  | a  | {1} 5 4 [1 2 1 3]* 1 2 1 {3}
c3-l3    | a  | {3} {1 2}
c3-l3    | b  | {4} {1 2}
c3-l3    | c  | {5} {1 2}
c4s3-l3  | p  | {2} 4 [1 2 1 3]* 1 2 1 {3 1}
c4s3-l3  | q  | {1} 4 [2 1 3 1]* 2 1 3 {1 2}
c4s3-l3  | b  | {1} 4 [2 1 3 1]* 2 1 3 {1 5}
c4s1-l4  | a  | {3} 1 2 1 [3 1 2 1]* 4 5 {1 2 1}
k3       | a  | {3} 2 {1}
k3       | b  | {4} 2 {1}
k3       | c  | {5} 2 {1}
k4       | a  | {3} 2 4 {1}
k4       | b  | {5} 2 6 {1}
k4       | c  | {7} 2 8 {1}
k5       | a  | {5} 2 3 10 {1}
k5       | b  | {9} 2 4 11 {1}
k5       | c  | {3} 2 6 8 {1}
k5       | d  | {7} 1 2 4 {5}
k5       | e  | {1} 2 12 13 {3}
k5       | f  | {1} 2 4 6 {10}
k5       | g  | {1} 2 5 8 {3}
k5       | h  | {11} 2 4 7 {1}
k5       | i  | {9} 2 3 6 {1}
k5       | j  | {5} 2 4 14 {1}
k5       | k  | {3} 2 8 12 {1}
k5       | l  | {7} 2 4 6 {1}
'''

def _rows(raw):
    for line in raw.strip().splitlines():
        yield [ field.strip() for field in line.split('|') ]


def _parse_range(text):
    """`3`, `2-5` or the open `4-`; returns (low, high) with high None when open."""

    low, sep, high = text.partition('-')

    if not sep:
        return int(low), int(low)

    return int(low), int(high) if high else None


def _in_range(value, bounds):
    low, high = bounds

    return value >= low and (high is None or value <= high)


def _parse_bounds(text):
    bounds = [ ]

    for part in text.split(','):
        copies, value = part.split(':')
        bounds.append(_parse_range(copies) + (int(value),))

    return tuple(bounds)


def _parse_assignments(text):
    table = { }

    for part in filter(None, (p.strip() for p in text.split(';'))):
        key, names = part.split('=')
        table[int(key)] = tuple(split_fields(names))

    return table


@cache
def registry():
    blocks = { }
    phases = { }

    for key, name, notation in _rows(RAW_BLOCK_DATA):
        blocks.setdefault(key, { })[name] = parse_block(notation, name)

    for key, copies, unit, remainders, overrides in _rows(RAW_SCHEDULE_DATA):
        phases.setdefault(key, [ ]).append(Phase(
            *_parse_range(copies),
            tuple(split_fields(unit)),
            _parse_assignments(remainders),
            _parse_assignments(overrides),
        ))

    entries = [ ]

    for key, base, modulus, residue, n_min, n_max, overlaps, pattern_overlap, bounds, equality in _rows(RAW_FAMILY_DATA):
        entries.append(TheoremEntry(
            key,
            base,
            int(modulus),
            int(residue),
            int(n_min),
            None if n_max == '-' else int(n_max),
            _parse_range(overlaps),
            int(pattern_overlap),
            _parse_bounds(bounds),
            _parse_range(equality) if equality else None,
            tuple(phases[key]),
            blocks[key],
        ))

    return tuple(entries)


def entry_matches(entry, spec):
    return (
        spec.base_kind == entry.base_kind
        and spec.n % entry.modulus == entry.residue
        and _in_range(spec.n, (entry.n_min, entry.n_max))
        and _in_range(spec.overlap, entry.overlaps)
    )


def claimed_bound(entry, copies):
    for low, high, value in entry.bounds:
        if _in_range(copies, (low, high)):
            return value

    raise MalformedPattern('No bound for this copy count', { 'entry' : entry.key, 'copies' : copies })


def is_exact(entry, copies):
    return entry.equality is not None and _in_range(copies, entry.equality)


def schedule_blocks(entry, copies):
    """Block names coloring copies 1..t in order."""

    for phase in entry.phases:
        if not _in_range(copies, (phase.t_min, phase.t_max)):
            continue

        if copies in phase.overrides:
            return list(phase.overrides[copies])

        period = len(phase.unit)
        repeats, rest = divmod(copies, period)
        names = list(phase.unit) * repeats

        if rest:
            names.extend(phase.remainder[rest])

        return names

    raise MalformedPattern('Schedule does not cover this copy count', { 'entry' : entry.key, 'copies' : copies })


def _find_entry(spec):
    for entry in registry():
        if entry_matches(entry, spec):
            return entry

    return None


def lookup(spec):
    check_product_spec(spec)

    entry = _find_entry(spec)

    if entry is not None:
        return entry

    if spec.base_kind == 'cycle' and spec.overlap >= 2:
        hint = spec._replace(overlap=spec.n - spec.overlap + 2)

        if hint.overlap == spec.overlap:
            return Unsupported(spec, 'overlap is a fixed point of the cycle transform', None, False)

        return Unsupported(spec, 'no pattern for this overlap', hint, _find_entry(hint) is not None)

    return Unsupported(spec, 'no pattern for this family', None, False)


def _check_emitted(anchor, spec, coloring, bound):
    g = path_aligned_product(spec)
    violations = validate(g, all_pairs_distances(g), coloring)

    if violations:
        first = violations[0]

        raise MalformedPattern(
            'Pattern does not validate',
            { 'anchor' : anchor, 'spec' : format_spec(spec), 'u' : first.u + 1, 'v' : first.v + 1, 'color' : first.color }
        )

    if coloring.k_used > bound:
        raise MalformedPattern(
            'Pattern uses more colors than claimed',
            { 'anchor' : anchor, 'spec' : format_spec(spec), 'k_used' : coloring.k_used, 'bound' : bound }
        )


def _pull_back(coloring, witness):
    """Colors of the source graph from a coloring of the transformed one."""

    if not witness.attested:
        raise MalformedPattern('Transform witness is not an isomorphism')

    return PackingColoring(coloring.colors[image] for image in witness.forward)


def color_by_theorem(spec):
    found = lookup(spec)

    if isinstance(found, Unsupported):
        if found.hint is not None and found.hint_supported:
            logger.debug('coloring %s through %s', format_spec(spec), format_spec(found.hint))

            colored = color_by_theorem(found.hint)
            _, witness = cycle_overlap_transform(spec)
            coloring = _pull_back(colored.coloring, witness)
            _check_emitted(colored.anchor, spec, coloring, colored.bound)

            return colored._replace(coloring=coloring)

        raise UnsupportedSpec(found.reason, { 'spec' : format_spec(spec) })

    entry = found
    names = schedule_blocks(entry, spec.copies)
    base = spec._replace(overlap=entry.pattern_overlap)
    coloring = expand_pattern(Pattern([ entry.blocks[name] for name in names ]), base)

    if base != spec:
        # The witness maps the requested product onto the overlap-2 one.
        _, witness = complete_overlap_transform(spec, base.overlap)
        coloring = _pull_back(coloring, witness)

    bound = claimed_bound(entry, spec.copies)
    _check_emitted(entry.key, spec, coloring, bound)

    logger.debug('%s colored by %s with %d colors', format_spec(spec), entry.key, coloring.k_used)

    return TheoremColoring(
        coloring,
        bound,
        is_exact(entry, spec.copies),
        entry.key,
        tuple(enumerate(names, 1)),
    )


def block_trace(spec):
    return list(color_by_theorem(spec).trace)


PROBE_FAMILIES = {
    'cycle' : 5,
    'k6' : 22,
    'k1' : None,
}

DEFAULT_PROBE_BUDGET = 5_000_000

ProbeRow = namedtuple('ProbeRow', 'spec upper method proven_optimal conjectured')
ProbeReport = namedtuple('ProbeReport', 'rows partial')

def _probe_specs(family, overlaps, sizes, copies):
    for t in copies:
        if family == 'k6':
            for l in overlaps:
                if 2 <= l <= 6:
                    yield ProductSpec('complete', 6, l, t)

        elif family == 'k1':
            for n in sizes:
                if n >= 3:
                    yield ProductSpec('cycle', n, 1, t)

        else:
            for n in sizes:
                for l in overlaps:
                    if 4 <= l <= n:
                        yield ProductSpec('cycle', n, l, t)


def conjecture_probe(family, overlaps, sizes, copies, budget=DEFAULT_PROBE_BUDGET, lp_dir=None):
    """
    Best upper bound per instance from the registry and the exact solver.
    Instances the solver could not settle within the node budget are marked
    unproven and, when `lp_dir` is given, exported as LP models.
    """

    from .solver import LimitHit, SolveResult, SolverOptions, exact_chi_p

    if family not in PROBE_FAMILIES:
        raise UnsupportedSpec('Unknown probe family', { 'family' : family })

    conjectured = PROBE_FAMILIES[family]
    rows = [ ]
    partial = False

    for spec in _probe_specs(family, overlaps, sizes, copies):
        if budget <= 0:
            partial = True
            rows.append(ProbeRow(spec, None, 'skipped', False, conjectured))
            continue

        upper, method, proven = None, None, False

        try:
            colored = color_by_theorem(spec)
        except UnsupportedSpec:
            pass
        else:
            upper, method = colored.coloring.k_used, 'pattern'

        g = path_aligned_product(spec)
        dm = all_pairs_distances(g)
        result = exact_chi_p(g, dm, SolverOptions(node_limit=budget))
        budget -= result.nodes_expanded

        if isinstance(result, SolveResult):
            upper, method, proven = result.chi_p, 'exact', True

        elif isinstance(result, LimitHit):
            partial = True

            if upper is None or result.upper_bound < upper:
                upper, method = result.upper_bound, 'greedy'

        if not proven and lp_dir is not None and upper is not None:
            from .ilp import build_model, write_lp

            name = 'probe-{}-n{}-l{}-t{}.lp'.format(spec.base_kind, spec.n, spec.overlap, spec.copies)
            write_lp(build_model(g, dm, upper), os.path.join(lp_dir, name))

        logger.info('probe %s: %s via %s', format_spec(spec), upper, method)
        rows.append(ProbeRow(spec, upper, method, proven, conjectured))

    return ProbeReport(rows, partial)
