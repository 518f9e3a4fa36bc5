"""Seeded random dataset generators."""
from __future__ import annotations

import math

import numpy as np

from .graph import Dataset, Graph, SymbolTable


def _edge_count(n_nodes, density):
    return int(round(density * math.comb(n_nodes, 2)))


def _random_graph(rng, n_nodes, n_edges, n_labels, attribute_dim, graph_id, attr_offset=0.0):
    rows, cols = np.triu_indices(n_nodes, k=1)
    pick = np.sort(rng.choice(len(rows), size=n_edges, replace=False))
    labels = rng.integers(0, n_labels, size=n_nodes)
    attrs = None
    if attribute_dim > 0:
        attrs = rng.random((n_nodes, attribute_dim)) + attr_offset
    return Graph(
        node_count=n_nodes,
        edges=np.column_stack([rows[pick], cols[pick]]),
        node_labels=labels,
        node_attributes=attrs,
        graph_id=graph_id,
    )


def generate_synthetic(
    n_graphs: int,
    n_nodes: int,
    density: float,
    label_alphabet_size: int,
    attribute_dim: int,
    seed: int,
    name: str = "synthetic",
) -> Dataset:
    """Uniform random graphs with an exact edge count.

    Every graph has exactly ``round(density * C(n_nodes, 2))`` edges sampled
    without replacement, node labels uniform over ``label_alphabet_size``
    symbols and node attributes uniform in ``[0, 1)^attribute_dim``
    (``attribute_dim=0`` means no attributes). Output is a pure function of
    the arguments.
    """
    if n_graphs < 1 or n_nodes < 2:
        raise ValueError("need n_graphs >= 1 and n_nodes >= 2")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    if label_alphabet_size < 1:
        raise ValueError("label_alphabet_size must be >= 1")
    if attribute_dim < 0:
        raise ValueError("attribute_dim must be >= 0")
    m = _edge_count(n_nodes, density)
    if m < 1:
        raise ValueError(f"density {density} yields no edge on {n_nodes} nodes")
    rng = np.random.default_rng(seed)
    graphs = tuple(
        _random_graph(rng, n_nodes, m, label_alphabet_size, attribute_dim, gi) for gi in range(n_graphs)
    )
    return Dataset(
        graphs=graphs,
        name=name,
        node_symbols=SymbolTable(str(i) for i in range(label_alphabet_size)),
    )


def generate_planted(
    n_graphs: int,
    n_nodes: int,
    density: float,
    label_alphabet_size: int,
    attribute_dim: int,
    shift: float,
    seed: int,
    name: str = "planted",
) -> Dataset:
    """Two-class variant of :func:`generate_synthetic`.

    Classes alternate 0, 1, 0, ...; graphs of class 1 have every attribute
    shifted by ``shift``. Structure and labels follow the same distribution
    in both classes, so only attributes separate them.
    """
    if attribute_dim < 1:
        raise ValueError("planted classes need attribute_dim >= 1")
    m = _edge_count(n_nodes, density)
    if m < 1:
        raise ValueError(f"density {density} yields no edge on {n_nodes} nodes")
    rng = np.random.default_rng(seed)
    y = np.arange(n_graphs) % 2
    graphs = tuple(
        _random_graph(rng, n_nodes, m, label_alphabet_size, attribute_dim, gi, shift * y[gi])
        for gi in range(n_graphs)
    )
    return Dataset(
        graphs=graphs,
        name=name,
        class_labels=y,
        node_symbols=SymbolTable(str(i) for i in range(label_alphabet_size)),
    )
