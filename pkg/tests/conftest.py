from pathlib import Path

import numpy as np
import pytest

from npkernel import Graph, parse_tu_dataset
from npkernel.graph import dataset_from_graphs

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = ("tiny", "proteins_mini", "synth_small", "synth_dense")


def load_fixture(name):
    return parse_tu_dataset(FIXTURES / name)


def random_graph(rng, n_max=10, labels=2, dim=2, edge_labels=1, edge_dim=None, graph_id=0, p=None):
    n = int(rng.integers(2, n_max + 1))
    iu, ju = np.triu_indices(n, 1)
    p = rng.uniform(0.15, 0.6) if p is None else p
    keep = rng.random(len(iu)) < p
    edges = np.stack([iu[keep], ju[keep]], axis=1)
    m = len(edges)
    return Graph(
        node_count=n,
        edges=edges,
        node_labels=rng.integers(0, labels, n),
        node_attributes=None if dim is None else rng.normal(size=(n, dim)),
        edge_labels=rng.integers(0, edge_labels, m),
        edge_attributes=None if edge_dim is None else rng.normal(size=(m, edge_dim)),
        graph_id=graph_id,
    )


def random_dataset(seed, n_graphs=8, **kw):
    rng = np.random.default_rng(seed)
    return dataset_from_graphs([random_graph(rng, graph_id=i, **kw) for i in range(n_graphs)])


def triangle(labels=(0, 0, 0), attrs=None):
    return Graph(3, [(0, 1), (1, 2), (0, 2)], list(labels), node_attributes=attrs)


def path3(labels=(0, 0, 0), attrs=None):
    return Graph(3, [(0, 1), (1, 2)], list(labels), node_attributes=attrs)


def star(leaves=3, labels=None):
    n = leaves + 1
    return Graph(n, [(0, i) for i in range(1, n)], list(labels or [0] * n))


def single_edge(a=0, b=1, attrs=None):
    return Graph(2, [(0, 1)], [a, b], node_attributes=attrs)


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_dataset(request):
    return load_fixture(request.param)
