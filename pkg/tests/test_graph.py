import random

import pytest

from mbsn.geom import Point2
from mbsn.graph import (b_count, block_cut_forest, geometric_graph, is_biconnected,
                        is_connected, make_graph, max_edge_length)

from conftest import naive_b_count, naive_blocks, naive_cut_vertices, random_graph


def test_connected_path():
    assert is_connected(make_graph(3, [(0, 1), (1, 2)]))


def test_connected_two_disjoint_edges():
    assert not is_connected(make_graph(4, [(0, 1), (2, 3)]))


def test_connected_single_vertex():
    assert is_connected(make_graph(1, []))


def test_biconnected_k1():
    assert is_biconnected(make_graph(1, []))


def test_biconnected_k2():
    assert is_biconnected(make_graph(2, [(0, 1)]))
    assert not is_biconnected(make_graph(2, []))


def test_biconnected_path_false():
    assert not is_biconnected(make_graph(3, [(0, 1), (1, 2)]))


def test_biconnected_cycle():
    assert is_biconnected(make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))


def test_bcf_bowtie():
    g = make_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    bcf = block_cut_forest(g)
    assert len(bcf.blocks) == 2
    assert bcf.cut_vertices == frozenset({2})
    assert set(bcf.leaf_blocks) == {0, 1}
    assert bcf.isolated_blocks == ()


def test_bcf_cycle_isolated():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    bcf = block_cut_forest(g)
    assert len(bcf.blocks) == 1
    assert bcf.isolated_blocks == (0,)
    assert bcf.cut_vertices == frozenset()


def test_bcf_path_interiors():
    g = make_graph(3, [(0, 1), (1, 2)])
    bcf = block_cut_forest(g)
    assert set(bcf.blocks) == {(0, 1), (1, 2)}
    assert bcf.cut_vertices == frozenset({1})
    assert set(bcf.interiors) == {(0,), (2,)}
    assert set(bcf.leaf_tau.values()) == {1}


def test_b_count_triangle():
    assert b_count(make_graph(3, [(0, 1), (1, 2), (0, 2)])) == 2


def test_b_count_path():
    assert b_count(make_graph(3, [(0, 1), (1, 2)])) == 2


def test_b_count_two_disjoint_edges():
    assert b_count(make_graph(4, [(0, 1), (2, 3)])) == 4


def test_b_count_isolated_vertices():
    assert b_count(make_graph(3, [])) == 6


def test_max_edge_length():
    pts = [Point2(0, 0), Point2(10, 0), Point2(5, 1)]
    g = geometric_graph(pts, [(0, 1), (0, 2), (1, 2)])
    ln, e = max_edge_length(g)
    assert ln == 10.0 and e == (0, 1)
    single = geometric_graph([Point2(0, 0), Point2(3, 0)], [(0, 1)])
    assert max_edge_length(single) == (3.0, (0, 1))
    square = geometric_graph([Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)],
                             [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert max_edge_length(square)[0] == pytest.approx(1.0)


def test_max_edge_length_errors():
    with pytest.raises(ValueError):
        max_edge_length(make_graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        max_edge_length(geometric_graph([Point2(0, 0), Point2(1, 0)], []))


def test_bcf_matches_naive_on_random_graphs():
    rng = random.Random(42)
    for trial in range(200):
        n = rng.randint(1, 30)
        g = random_graph(rng, n, rng.uniform(0.03, 0.3))
        bcf = block_cut_forest(g)
        assert {frozenset(b) for b in bcf.blocks} == naive_blocks(g), trial
        assert set(bcf.cut_vertices) == naive_cut_vertices(g), trial
        assert b_count(g) == naive_b_count(g), trial
        # classification consistency
        for i, blk in enumerate(bcf.blocks):
            k = len(set(blk) & bcf.cut_vertices)
            assert (i in bcf.leaf_blocks) == (k == 1)
            assert (i in bcf.isolated_blocks) == (k == 0)
            assert set(bcf.interiors[i]) == set(blk) - bcf.cut_vertices


def test_b_count_monotone_under_edge_subgraph():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(2, 20)
        g2 = random_graph(rng, n, rng.uniform(0.1, 0.5))
        kept = [e for e in g2.edges if rng.random() < 0.7]
        g1 = make_graph(n, kept)
        assert b_count(g1) >= b_count(g2)


def test_biconnected_iff_single_block():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(3, 15)
        g = random_graph(rng, n, rng.uniform(0.2, 0.7))
        bcf = block_cut_forest(g)
        expect = is_connected(g) and len(bcf.blocks) == 1
        assert is_biconnected(g) == expect


def test_graph_validation():
    with pytest.raises(ValueError):
        make_graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        make_graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        make_graph(2, [(0, 2)])
