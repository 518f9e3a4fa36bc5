"""Neighborhood preserving edge (NPE), optimal edge assignment (NPO) and combined (NP) kernels.

All pair kernels take two graphs and their :class:`~npkernel.wl.ColorAssignment`
objects, which must come from one shared refinement so that colors are
comparable across the two graphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .base import AttributeKernels, BaseKernelSpec, edge_pair_values
from .graph import Graph
from .wl import Bucket, ColorAssignment, EdgeAddress, FeatureIndex, graph_feature_index

KERNELS = ("npe", "npo", "np", "nps")
SCHEMES = ("global", "pairwise")


@dataclass(frozen=True)
class KernelConfig:
    kernel: str = "np"
    h: int = 2
    alpha: float = 0.5
    base: BaseKernelSpec = field(default_factory=BaseKernelSpec)
    include_level0: bool = False
    scheme: str = "global"
    normalize_gram: bool = False
    nps_normalize: bool = False
    max_path_len: int | None = None
    edge_budget: int | None = None

    def __post_init__(self):
        if self.kernel not in KERNELS:
            raise ValueError(f"unknown kernel {self.kernel!r}; expected one of {KERNELS}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.h < 1:
            raise ValueError("h must be >= 1")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def levels(self) -> range:
        return range(0 if self.include_level0 else 1, self.h + 1)

    def describe(self) -> dict:
        return {
            "kernel": self.kernel,
            "h": self.h,
            "alpha": self.alpha,
            "base": self.base.describe(),
            "scheme": self.scheme,
            "include_level0": self.include_level0,
            "normalize_gram": self.normalize_gram,
        }


def attribute_kernels(config: KernelConfig, g: Graph) -> AttributeKernels:
    edim = None if g.edge_attributes is None else g.edge_attributes.shape[1]
    return AttributeKernels.for_dims(config.base, g.attribute_dim, edim)


def bucket_sum(kernels: AttributeKernels, g: Graph, g2: Graph, b: Bucket, b2: Bucket, palindromic: bool) -> float:
    """Sum of ``k_edge`` over all member pairs of two equally addressed buckets, row-major."""
    n, n2 = len(b), len(b2)
    if kernels.trivial:
        return float(n * n2)
    i = np.repeat(np.arange(n), n2)
    j = np.tile(np.arange(n2), n)
    vals = edge_pair_values(
        kernels, g, g2,
        b.first[i], b.second[i], b.edge_ids[i],
        b2.first[j], b2.second[j], b2.edge_ids[j],
        palindromic,
    )
    return float(vals.sum())


def npe_from_indexes(kernels: AttributeKernels, g: Graph, g2: Graph, idx: FeatureIndex, idx2: FeatureIndex) -> float:
    total = 0.0
    for addr, b in idx.items():
        b2 = idx2.get(addr)
        if b2 is not None:
            total += bucket_sum(kernels, g, g2, b, b2, addr.palindromic) / (len(b) * len(b2))
    return total


def npo_from_indexes(idx: FeatureIndex, idx2: FeatureIndex) -> int:
    total = 0
    for addr, b in idx.items():
        b2 = idx2.get(addr)
        if b2 is not None:
            total += min(len(b), len(b2))
    return total


def npe_levels(g, g2, colors: ColorAssignment, colors2: ColorAssignment, config: KernelConfig) -> np.ndarray:
    """Per-level NPE values for ``config.levels``."""
    kernels = attribute_kernels(config, g)
    return np.array(
        [
            npe_from_indexes(kernels, g, g2, graph_feature_index(g, colors, i), graph_feature_index(g2, colors2, i))
            for i in config.levels
        ]
    )


def npo_levels(g, g2, colors: ColorAssignment, colors2: ColorAssignment, config: KernelConfig) -> np.ndarray:
    return np.array(
        [npo_from_indexes(graph_feature_index(g, colors, i), graph_feature_index(g2, colors2, i)) for i in config.levels],
        dtype=np.int64,
    )


def npe_pair(g, g2, colors, colors2, config: KernelConfig) -> float:
    """Sum over levels of the per-address averaged attribute edge kernel."""
    return float(npe_levels(g, g2, colors, colors2, config).sum())


def npo_pair(g, g2, colors, colors2, config: KernelConfig) -> int:
    """Sum over levels and shared addresses of ``min(|E_addr|, |E'_addr|)``."""
    return int(npo_levels(g, g2, colors, colors2, config).sum())


def np_pair(g, g2, colors, colors2, config: KernelConfig) -> float:
    a = config.alpha
    return a * npe_pair(g, g2, colors, colors2, config) + (1.0 - a) * npo_pair(g, g2, colors, colors2, config)


class HierarchyMismatch(ValueError):
    """An edge address is missing from the hierarchy (built on another dataset?)."""


@dataclass(frozen=True, eq=False)
class Hierarchy:
    """Forest of edge addresses; level-``i+1`` addresses hang below the level-``i`` address they refine.

    Node ``j`` of the forest is ``addresses[j]``; ``parent[j]`` is ``-1`` for roots.
    """

    addresses: tuple[EdgeAddress, ...]
    parent: np.ndarray
    location: dict
    start_level: int
    h: int

    def __len__(self):
        return len(self.addresses)

    def level_of(self) -> np.ndarray:
        return np.array([a.level for a in self.addresses], dtype=np.int64)

    def roots(self) -> list[int]:
        return np.flatnonzero(self.parent < 0).tolist()

    def children(self, j: int) -> list[int]:
        return np.flatnonzero(self.parent == j).tolist()


def _edge_chain(g: Graph, colors: ColorAssignment, k: int, levels) -> list[EdgeAddress]:
    u, v = g.edges[k].tolist()
    lab = int(g.edge_labels[k])
    chain = []
    for i in levels:
        c = colors.colors(i)
        a, b = int(c[u]), int(c[v])
        chain.append(EdgeAddress(i, min(a, b), lab, max(a, b)))
    return chain


def build_hierarchy(graphs, assignments: Sequence[ColorAssignment], h: int, start_level: int = 1) -> Hierarchy:
    """Address forest over every edge of ``graphs`` for levels ``start_level..h``."""
    if h < start_level:
        raise ValueError(f"h must be >= {start_level}")
    graphs = getattr(graphs, "graphs", graphs)
    levels = range(start_level, h + 1)
    parent_of: dict[EdgeAddress, EdgeAddress | None] = {}
    for g, colors in zip(graphs, assignments):
        for k in range(g.edge_count):
            chain = _edge_chain(g, colors, k, levels)
            for i, addr in enumerate(chain):
                up = chain[i - 1] if i else None
                known = parent_of.setdefault(addr, up)
                if known != up:
                    raise AssertionError(f"address {addr} has two parents {known} and {up}")
    addresses = tuple(sorted(parent_of))
    location = {a: j for j, a in enumerate(addresses)}
    parent = np.array(
        [-1 if parent_of[a] is None else location[parent_of[a]] for a in addresses], dtype=np.int64
    )
    return Hierarchy(addresses, parent, location, start_level, h)


def histogram_vector(g: Graph, hierarchy: Hierarchy, colors: ColorAssignment) -> np.ndarray:
    """Occurrence counts of hierarchy nodes: each edge walks from its leaf up to its root."""
    vec = np.zeros(len(hierarchy), dtype=np.int64)
    c = colors.colors(hierarchy.h)
    parent = hierarchy.parent
    for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist()):
        a, b = int(c[u]), int(c[v])
        leaf = EdgeAddress(hierarchy.h, min(a, b), lab, max(a, b))
        n = hierarchy.location.get(leaf)
        if n is None:
            raise HierarchyMismatch(f"edge ({u}, {v}) of graph {g.graph_id} has address {leaf} not in hierarchy")
        i = hierarchy.h
        while i >= hierarchy.start_level:
            vec[n] += 1
            n = parent[n]
            i -= 1
    return vec


def histogram_intersection(v: np.ndarray, v2: np.ndarray) -> int:
    v, v2 = np.asarray(v), np.asarray(v2)
    if v.shape != v2.shape:
        raise ValueError(f"histogram length mismatch: {v.shape} vs {v2.shape}")
    return int(np.minimum(v, v2).sum())
