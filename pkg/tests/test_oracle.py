import numpy as np
import pytest

from npkernel import BaseKernelSpec, Graph, KernelConfig, npe_pair, refine
from npkernel.oracle import MAX_EDGES, OracleReport, OracleSizeError, brute_npe, brute_npo, brute_nps

from conftest import single_edge, triangle

UNIT = BaseKernelSpec("unit")


def test_single_edges_unit():
    g = single_edge(0, 1)
    assert brute_npe(g, g, 1, UNIT) == 1.0
    assert brute_npo(g, g, 1) == 1
    assert brute_nps(g, g, 1, UNIT) == 1.0


def test_disjoint_alphabets():
    g, g2 = triangle((0, 0, 0)), triangle((1, 1, 1))
    assert brute_npe(g, g2, 2, BaseKernelSpec()) == 0.0
    assert brute_npo(g, g2, 2) == 0
    assert brute_nps(g, g2, 2, BaseKernelSpec()) == 0.0


def test_triangle_with_itself():
    g = triangle()
    # one address per level holding all three edges
    assert brute_npo(g, g, 3) == 9
    assert brute_npe(g, g, 3, UNIT) == pytest.approx(3.0, rel=1e-15)
    assert brute_nps(g, g, 2, UNIT) == 2 * 9


def test_size_guards():
    n = 25
    big = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], [0] * n)
    assert big.edge_count > MAX_EDGES
    with pytest.raises(OracleSizeError):
        brute_npe(big, big, 1, UNIT)
    with pytest.raises(OracleSizeError):
        brute_npo(big, big, 1)
    with pytest.raises(OracleSizeError):
        brute_nps(big, big, 1, UNIT)


def test_oracle_agrees_on_gaussian_pair():
    rng = np.random.default_rng(0)
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], [0, 1, 0, 1, 0], node_attributes=rng.normal(size=(5, 2)))
    g2 = Graph(4, [(0, 1), (1, 2), (2, 3)], [1, 0, 1, 0], node_attributes=rng.normal(size=(4, 2)))
    a, a2 = refine([g, g2], 2)
    cfg = KernelConfig(kernel="npe", include_level0=True)
    ref = brute_npe(g, g2, 2, cfg.base, include_level0=True)
    assert ref > 0
    assert npe_pair(g, g2, a, a2, cfg) == pytest.approx(ref, rel=1e-12)


def test_report():
    r = OracleReport()
    r.add((0, 1), 2.0, 2.0)
    r.add((0, 2), 4.0, 4.0 + 4e-12)
    assert r.max_error == pytest.approx(1e-12)
    text = r.format()
    assert "(0,2)" in text and "max relative error" in text
