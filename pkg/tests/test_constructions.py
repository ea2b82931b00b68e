import pytest

from hypothesis import given, settings, strategies as st

from pathpack.constructions import *
from pathpack.errors import InvalidOverlap, InvalidParameter, NotACaterpillar, NotATree
from pathpack.graph import Graph, all_pairs_distances, build_cycle, build_path


def test_cycle_product():
    g = path_aligned_product(ProductSpec('cycle', 4, 2, 5))

    assert g.vertex_count == 20
    assert g.edge_count == 24
    assert [ g.label(v) for v in range(10) ] == [ 'path:{}'.format(i) for i in range(1, 11) ]
    assert all(g.has_edge(i, i + 1) for i in range(9))

    # Off-path vertices of copy 2 close the ring through path:3 and path:4.
    assert g.label(12) == 'cycle:2:1'
    assert g.has_edge(2, 12)
    assert g.has_edge(12, 13)
    assert g.has_edge(13, 3)


def test_complete_product():
    g = path_aligned_product(ProductSpec('complete', 4, 2, 3))
    dm = all_pairs_distances(g)

    assert g.vertex_count == 12
    assert g.edge_count == 20
    assert dm.diameter == 5


def test_single_copy_is_the_base():
    assert path_aligned_product(ProductSpec('cycle', 7, 3, 1)).edge_count == 7
    assert path_aligned_product(ProductSpec('complete', 5, 5, 1)).edge_count == 10


def test_overlap_one():
    g = path_aligned_product(ProductSpec('cycle', 4, 1, 3))

    assert g.vertex_count == 12
    assert g.edge_count == 4 * 3 + 2
    assert g.degree(1) == 4


def test_product_spec_checks():
    with pytest.raises(InvalidOverlap):
        path_aligned_product(ProductSpec('cycle', 4, 5, 1))

    with pytest.raises(InvalidOverlap):
        path_aligned_product(ProductSpec('complete', 4, 0, 1))

    with pytest.raises(InvalidParameter):
        path_aligned_product(ProductSpec('cycle', 4, 2, 0))

    with pytest.raises(InvalidParameter):
        path_aligned_product(ProductSpec('star', 4, 2, 1))


def test_copy_vertices():
    spec = ProductSpec('cycle', 5, 2, 3)

    assert copy_vertices(spec, 1) == ([ 0, 1 ], [ 6, 7, 8 ])
    assert copy_vertices(spec, 3) == ([ 4, 5 ], [ 12, 13, 14 ])


@settings(deadline=None)
@given(
    st.integers(min_value=3, max_value=9),
    st.data(),
    st.integers(min_value=1, max_value=3),
)
def test_cycle_transform_is_attested(n, data, t):
    l = data.draw(st.integers(min_value=2, max_value=n))
    spec = ProductSpec('cycle', n, l, t)

    target, witness = cycle_overlap_transform(spec)

    assert target == ProductSpec('cycle', n, n - l + 2, t)
    assert witness.attested
    assert sorted(witness.forward) == list(range(n * t))


@settings(deadline=None)
@given(st.integers(min_value=3, max_value=7), st.data(), st.integers(min_value=1, max_value=3))
def test_complete_transform_is_attested(n, data, t):
    l = data.draw(st.integers(min_value=2, max_value=n))
    overlap = data.draw(st.integers(min_value=2, max_value=n))

    target, witness = complete_overlap_transform(ProductSpec('complete', n, l, t), overlap)

    assert target.overlap == overlap
    assert witness.attested


def test_transform_checks():
    with pytest.raises(InvalidParameter):
        cycle_overlap_transform(ProductSpec('complete', 4, 2, 2))

    with pytest.raises(InvalidOverlap):
        cycle_overlap_transform(ProductSpec('cycle', 5, 1, 2))

    with pytest.raises(InvalidOverlap):
        complete_overlap_transform(ProductSpec('complete', 4, 2, 2), 5)


def test_check_witness_rejects():
    source = build_path(3)
    target = build_path(3)

    assert check_witness(source, target, [ 0, 1, 2 ])
    assert check_witness(source, target, [ 2, 1, 0 ])
    assert not check_witness(source, target, [ 1, 0, 2 ])
    assert not check_witness(source, target, [ 0, 0, 2 ])
    assert not check_witness(source, build_cycle(3), [ 0, 1, 2 ])


def test_corona():
    g = build_graph('corona path:5 p=2')

    assert g.vertex_count == 15
    assert g.edge_count == 4 + 10
    assert g.label(5) == 'leaf:1:1'

    with pytest.raises(InvalidParameter):
        corona(build_path(3), 0)


def test_caterpillar():
    g = caterpillar(CaterpillarSpec(3, (5, 2, 1)))

    assert g.vertex_count == 11
    assert g.edge_count == 10
    assert g.label(2) == 'backbone:3'
    assert g.label(10) == 'leaf:3:1'

    with pytest.raises(InvalidParameter):
        caterpillar(CaterpillarSpec(3, (1, 2)))


def test_canonicalize():
    assert is_canonical(CaterpillarSpec(1, (0,)))
    assert not is_canonical(CaterpillarSpec(3, (0, 2, 1)))

    assert canonicalize(CaterpillarSpec(4, (4, 1, 0, 1))) == CaterpillarSpec(4, (1, 0, 1, 4))
    assert canonicalize(CaterpillarSpec(4, (0, 2, 1, 0))) == CaterpillarSpec(2, (2, 3))
    assert canonicalize(CaterpillarSpec(3, (0, 0, 0))) == CaterpillarSpec(1, (2,))
    assert reverse_spec(CaterpillarSpec(3, (5, 2, 1))) == CaterpillarSpec(3, (1, 2, 5))


def test_tree_round_trip():
    for spec in [ CaterpillarSpec(4, (4, 1, 0, 1)), CaterpillarSpec(3, (5, 2, 1)), CaterpillarSpec(1, (3,)) ]:
        assert tree_to_caterpillar_spec(caterpillar(spec)) == canonicalize(spec)

    assert tree_to_caterpillar_spec(build_path(1)) == CaterpillarSpec(1, (0,))
    assert tree_to_caterpillar_spec(build_path(2)) == CaterpillarSpec(1, (1,))
    assert tree_to_caterpillar_spec(build_path(5)) == CaterpillarSpec(3, (1, 0, 1))


def test_tree_errors():
    with pytest.raises(NotATree):
        tree_to_caterpillar_spec(build_cycle(4))

    # Three legs of length two around a center.
    spider = Graph(7, [ (0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6) ])

    with pytest.raises(NotACaterpillar):
        tree_to_caterpillar_spec(spider)


def test_spec_text():
    for text in [
        'product cycle n=4 l=2 t=5',
        'product complete n=5 l=3 t=2',
        'caterpillar 3:5,2,1',
        'corona path:5 p=2',
        'cycle 6',
    ]:
        assert format_spec(parse_spec(text)) == text

    assert parse_spec('product  cycle t=5 n=4 l=2') == ProductSpec('cycle', 4, 2, 5)

    with pytest.raises(InvalidOverlap):
        parse_spec('product cycle n=4 l=5 t=1')

    for text in [ '', 'product cycle n=4 l=2', 'product cycle n=4 l=2 t=1 t=2', 'caterpillar 3:1,x,1', 'wheel 5' ]:
        with pytest.raises(InvalidParameter):
            parse_spec(text)


def test_build_graph():
    assert build_graph('cycle 6') == build_cycle(6)
    assert build_graph(ProductSpec('cycle', 4, 2, 2)).vertex_count == 8
