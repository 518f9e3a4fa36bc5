import numpy as np
import pytest

from npkernel import Graph, build_product, convolution_pairs, np_edges, prune_product, refine
from npkernel.product import ProductGraphTooLarge, partition_to_dot, product_to_dot
from npkernel.wl import edge_address

from conftest import path3, random_graph, single_edge, star, triangle


def random_pairs(seed, count=30, **kw):
    rng = np.random.default_rng(seed)
    kw.setdefault("labels", 2)
    kw.setdefault("edge_labels", 2)
    out = []
    for _ in range(count):
        g, g2 = random_graph(rng, graph_id=0, **kw), random_graph(rng, graph_id=1, **kw)
        a, a2 = refine([g, g2], 3)
        out.append((g, g2, a, a2))
    return out


def brute_product_edge_count(g, g2, c, c2):
    count = 0
    for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist()):
        for (x, y), lab2 in zip(g2.edges.tolist(), g2.edge_labels.tolist()):
            if lab != lab2:
                continue
            count += c[u] == c2[x] and c[v] == c2[y]
            count += c[u] == c2[y] and c[v] == c2[x]
    return count


def brute_pair_count(g, g2, a, a2, level):
    addrs = [edge_address(a, level, e, lab) for e, lab in zip(g.edges.tolist(), g.edge_labels.tolist())]
    addrs2 = [edge_address(a2, level, e, lab) for e, lab in zip(g2.edges.tolist(), g2.edge_labels.tolist())]
    return sum(x == y for x in addrs for y in addrs2)


def test_rigid_edge():
    g = single_edge(0, 1)
    a, a2 = refine([g, g], 1)
    pg = build_product(g, g, a, a2, 0)
    assert pg.nodes.tolist() == [[0, 0], [1, 1]]
    assert pg.edges.tolist() == [[0, 0, 1, 1]]
    assert len(convolution_pairs(pg)) == 1


def test_symmetric_edge_duplicates_product_edge():
    g = single_edge(0, 0)
    a, a2 = refine([g, g], 1)
    pg = build_product(g, g, a, a2, 0)
    assert len(pg.nodes) == 4
    assert pg.edges.tolist() == [[0, 0, 1, 1], [0, 1, 1, 0]]
    pairs = convolution_pairs(pg)
    assert len(pairs) == 1
    assert pairs[0].address.palindromic


def test_np_edges_separate_matched_edges():
    # triangle A, A, B with a pendant C on the B node, against the bare triangle
    g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)], [0, 0, 1, 2], graph_id=0)
    g2 = Graph(3, [(0, 1), (1, 2), (0, 2)], [0, 0, 1], graph_id=1)
    a, a2 = refine([g, g2], 1)
    pg = build_product(g, g2, a, a2, 0)
    assert np_edges(pg, "left") == {(0, 1), (1, 2), (0, 2)}
    assert np_edges(pg, "right") == {(0, 1), (1, 2), (0, 2)}
    dot = partition_to_dot(pg)
    assert dot.count("style=bold") == 6
    assert dot.count("style=dashed") == 1
    assert "a2 -- a3 [style=dashed]" in dot


def test_disjoint_alphabets_give_empty_product():
    g, g2 = triangle((0, 0, 0)), triangle((1, 1, 1))
    a, a2 = refine([g, g2], 1)
    pg = build_product(g, g2, a, a2, 0)
    assert len(pg.nodes) == 0 and len(pg.edges) == 0
    assert np_edges(pg) == set()
    assert convolution_pairs(pg) == []
    assert "--" not in product_to_dot(pg)


def test_np_edges_bad_side():
    g = single_edge()
    a, a2 = refine([g, g], 0)
    with pytest.raises(ValueError):
        np_edges(build_product(g, g, a, a2, 0), "middle")


@pytest.mark.parametrize("level", [0, 1, 2])
def test_edge_count_matches_brute_force(level):
    for g, g2, a, a2 in random_pairs(level):
        pg = build_product(g, g2, a, a2, level)
        assert len(pg.edges) == brute_product_edge_count(g, g2, a.colors(level), a2.colors(level))


def test_projection_is_subset_and_complete():
    for g, g2, a, a2 in random_pairs(4):
        pg = build_product(g, g2, a, a2, 1)
        c, c2 = a.colors(1), a2.colors(1)
        expected = set()
        for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist()):
            for (x, y), lab2 in zip(g2.edges.tolist(), g2.edge_labels.tolist()):
                if lab == lab2 and {(c[u], c[v])} & {(c2[x], c2[y]), (c2[y], c2[x])}:
                    expected.add((u, v))
        got = np_edges(pg, "left")
        assert got <= set(map(tuple, g.edges.tolist()))
        assert got == expected


@pytest.mark.parametrize("level", [0, 1, 2])
def test_pair_count_matches_brute_force(level):
    for g, g2, a, a2 in random_pairs(10 + level):
        pairs = convolution_pairs(build_product(g, g2, a, a2, level))
        assert len(pairs) == brute_pair_count(g, g2, a, a2, level)
        keys = [(p.address, p.edge_id, p.edge_id2) for p in pairs]
        assert keys == sorted(set(keys))


def test_two_triangles_pruning_is_identity():
    g = triangle()
    a, a2 = refine([g, g], 3)
    pg = build_product(g, g, a, a2, 0)
    for level in (1, 2, 3):
        nxt = prune_product(pg, a.colors(level), a2.colors(level))
        assert np.array_equal(nxt.nodes, pg.nodes) and np.array_equal(nxt.edges, pg.edges)
        pg = nxt


def test_path_versus_star_pruning():
    g, g2 = path3(), star(3)
    a, a2 = refine([g, g2], 1)
    pg = prune_product(build_product(g, g2, a, a2, 0), a.colors(1), a2.colors(1))
    deg, deg2 = g.degrees(), g2.degrees()
    assert len(pg.nodes) == 6
    assert all(deg[u] == 1 and deg2[x] == 1 for u, x in pg.nodes.tolist())
    assert len(pg.edges) == 0


@pytest.mark.parametrize("level", [0, 1, 2])
def test_prune_equals_direct_build(level):
    for g, g2, a, a2 in random_pairs(20 + level, labels=1, edge_labels=1):
        pruned = prune_product(build_product(g, g2, a, a2, level), a.colors(level + 1), a2.colors(level + 1))
        assert pruned.same_structure(build_product(g, g2, a, a2, level + 1))


def test_edge_budget():
    g = Graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)], [0] * 6)
    a, a2 = refine([g, g], 0)
    with pytest.raises(ProductGraphTooLarge, match="edge budget"):
        build_product(g, g, a, a2, 0, edge_budget=10)
    # 15 x 15 edge pairs, two endpoint pairings each
    assert len(build_product(g, g, a, a2, 0).edges) == 2 * 15 * 15


def test_build_accepts_plain_color_arrays():
    g = path3()
    pg = build_product(g, g, np.array([1, 2, 1]), np.array([1, 2, 1]), 0)
    assert len(pg.nodes) == 5
    assert pg.provenance == (0, 0)
