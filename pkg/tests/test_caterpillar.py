import pytest

from pathpack.caterpillar import *
from pathpack.caterpillar import backbone_colors
from pathpack.constructions import CaterpillarSpec, caterpillar, is_canonical
from pathpack.errors import NonCanonicalSpec
from pathpack.graph import all_pairs_distances
from pathpack.packing import is_valid


def _certified(spec):
    chi = classify_chi_p(spec)
    g = caterpillar(spec)

    assert is_valid(g, all_pairs_distances(g), chi.certificate)
    assert chi.certificate.k_used == chi.value

    return chi


def test_families():
    templates = { t.family : t for t in families() }

    assert sorted(templates) == [ 'G1', 'G2', 'G3', 'G4', 'G5', 'G6', 'G7' ]
    assert backbone_colors(templates['G1'], 8) == (2, 3, 1, 2, 1, 3, 1, 2)
    assert backbone_colors(templates['G1'], 6) is None
    assert backbone_colors(templates['G6'], 3) == (2, 3, 1)
    assert backbone_colors(templates['G6'], 7) is None


def test_match_g1():
    spec = CaterpillarSpec(4, (3, 2, 0, 1))

    assert match_families(spec) == [ FamilyMatch('G1', 1, 'forward', spec) ]
    assert _certified(spec).value == 3


def test_match_g3():
    spec = CaterpillarSpec(5, (2, 0, 3, 0, 1))
    chi = _certified(spec)

    assert chi.value == 3
    assert { m.family for m in chi.matches } == { 'G3' }
    assert all(m.k == 1 for m in chi.matches)


def test_match_g4():
    chi = _certified(CaterpillarSpec(2, (1, 1)))

    assert chi.matches[0].family == 'G4'
    assert chi.matches[0].k == 0

    chi = _certified(CaterpillarSpec(6, (2, 1, 0, 3, 0, 1)))

    assert [ (m.family, m.k) for m in chi.matches ] == [ ('G4', 1) ]


def test_match_g6():
    spec = CaterpillarSpec(3, (5, 2, 1))
    chi = _certified(spec)

    assert chi.matches == [ FamilyMatch('G6', 0, 'forward', spec) ]
    assert chi.certificate.colors[:3] == (2, 3, 1)
    assert chi.certificate.colors[-1] == 2


def test_reversed_certificate():
    spec = CaterpillarSpec(4, (1, 0, 1, 1))
    chi = _certified(spec)

    assert chi.matches[0].orientation == 'reversed'
    assert chi.certificate.colors[:4] == (2, 1, 3, 2)


def test_small_cases():
    chi = classify_chi_p(CaterpillarSpec(1, (0,)))

    assert chi.value == 1

    chi = _certified(CaterpillarSpec(1, (3,)))

    assert chi.value == 2
    assert chi.certificate.colors == (2, 1, 1, 1)


def test_more_than_three():
    chi = classify_chi_p(CaterpillarSpec(4, (1, 1, 1, 1)))

    assert chi.value == MORE
    assert chi.matches == [ ]
    assert chi.certificate is None
    assert chi.upper_bound == 6
    assert chi.exact.chi_p == 4


def test_non_canonical():
    spec = CaterpillarSpec(3, (0, 2, 1))

    with pytest.raises(NonCanonicalSpec):
        match_families(spec)

    assert classify_chi_p(spec).value == 3


def test_canonical_specs():
    specs = list(canonical_specs(4, 1))

    assert len(specs) == 8
    assert CaterpillarSpec(4, (1, 0, 1, 1)) in specs
    assert CaterpillarSpec(4, (1, 1, 0, 1)) not in specs
    assert all(is_canonical(spec) for spec in specs)


def test_crosscheck():
    report = enumerate_and_crosscheck(4, 1)

    assert report.checked == 8
    assert report.disagreements == [ ]
    assert not report.partial

    stars = enumerate_and_crosscheck(1, 2)

    assert stars.checked == 3
    assert stars.disagreements == [ ]
    assert all(classify_chi_p(spec).value != 3 for spec in canonical_specs(1, 2))


@pytest.mark.slow
def test_crosscheck_wide():
    report = enumerate_and_crosscheck(7, 2, jobs=2)

    assert report.disagreements == [ ]


def test_random_specs():
    specs = random_caterpillar_specs(20, 6, 3, seed=1)

    assert specs == random_caterpillar_specs(20, 6, 3, seed=1)

    for spec in specs:
        assert is_canonical(spec)

        chi = classify_chi_p(spec)

        if chi.value != MORE:
            g = caterpillar(spec)
            assert is_valid(g, all_pairs_distances(g), chi.certificate)
