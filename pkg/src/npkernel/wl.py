"""1-dimensional Weisfeiler-Lehman color refinement and edge addressing.

Colors come from a :class:`ColorDictionary` shared by every graph of a
dataset, so equal neighborhoods in different graphs get equal colors. New
signatures of one refinement round are numbered in sorted order, which makes
the integer order on colors a function of signature content only (node
numbering and graph order do not affect it).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TextIO

import numpy as np

from .graph import Dataset, Graph


class ColorDictionary:
    """Injective map from refinement signatures to compact color ids."""

    def __init__(self):
        self._ids: dict[tuple, int] = {}
        self.next_id = 0

    def __len__(self):
        return len(self._ids)

    def __contains__(self, signature):
        return signature in self._ids

    def __getitem__(self, signature) -> int:
        return self._ids[signature]

    def assign(self, signatures: Iterable[tuple]) -> None:
        """Give ids to unseen signatures, numbering them in sorted order."""
        for sig in sorted(set(signatures).difference(self._ids)):
            self._ids[sig] = self.next_id
            self.next_id += 1


@dataclass(frozen=True, eq=False)
class ColorAssignment:
    """Per-level node colors of one graph; ``levels[0]`` holds the original labels' colors."""

    levels: tuple[np.ndarray, ...]

    @property
    def h(self) -> int:
        return len(self.levels) - 1

    def colors(self, level: int) -> np.ndarray:
        return self.levels[level]


def _graphs(data) -> Sequence[Graph]:
    return data.graphs if isinstance(data, Dataset) else list(data)


def refine(dataset: Dataset | Sequence[Graph], h: int, dictionary: ColorDictionary | None = None) -> list[ColorAssignment]:
    """Run ``h`` refinement rounds over every graph of ``dataset``.

    The level-``i`` signature of node ``v`` is its level-``i-1`` color followed
    by the sorted level-``i-1`` colors of its neighbors.
    """
    if h < 0:
        raise ValueError("h must be >= 0")
    graphs = _graphs(dataset)
    dictionary = ColorDictionary() if dictionary is None else dictionary

    sigs = [[(int(x),) for x in g.node_labels.tolist()] for g in graphs]
    per_graph: list[list[np.ndarray]] = [[] for _ in graphs]
    for level in range(h + 1):
        if level > 0:
            sigs = []
            for g, levels in zip(graphs, per_graph):
                prev = levels[-1].tolist()
                sigs.append(
                    [(prev[v], tuple(sorted(prev[u] for u in nbrs))) for v, nbrs in enumerate(g.adjacency)]
                )
        dictionary.assign(s for gs in sigs for s in gs)
        for levels, gs in zip(per_graph, sigs):
            levels.append(np.array([dictionary[s] for s in gs], dtype=np.int64))

    out = []
    for levels in per_graph:
        for a in levels:
            a.setflags(write=False)
        out.append(ColorAssignment(tuple(levels)))
    return out


class EdgeAddress(NamedTuple):
    """Canonical ``(c_min, edge label, c_max)`` identity of an edge at a refinement level."""

    level: int
    c_min: int
    label: int
    c_max: int

    @property
    def palindromic(self) -> bool:
        return self.c_min == self.c_max


def edge_address(assignment: ColorAssignment, level: int, edge: tuple[int, int], edge_label: int) -> EdgeAddress:
    c = assignment.colors(level)
    a, b = int(c[edge[0]]), int(c[edge[1]])
    if a > b:
        a, b = b, a
    return EdgeAddress(level, a, int(edge_label), b)


def orient(u: int, v: int, colors) -> tuple[int, int]:
    """Endpoint order used everywhere: smaller color first, then smaller node index."""
    return (u, v) if (colors[u], u) <= (colors[v], v) else (v, u)


@dataclass(frozen=True, eq=False)
class Bucket:
    """Edges of one graph sharing an address, oriented by :func:`orient`, ascending edge id."""

    edge_ids: np.ndarray
    first: np.ndarray
    second: np.ndarray

    def __len__(self):
        return len(self.edge_ids)

    def oriented_edges(self) -> list[tuple[int, int]]:
        return list(zip(self.first.tolist(), self.second.tolist()))


FeatureIndex = dict  # EdgeAddress -> Bucket, keys in ascending order


def graph_feature_index(g: Graph, assignment: ColorAssignment, level: int) -> FeatureIndex:
    c = assignment.colors(level)
    u, v = g.edges[:, 0], g.edges[:, 1]
    cu, cv = c[u], c[v]
    swap = cu > cv
    first = np.where(swap, v, u)
    second = np.where(swap, u, v)
    cmin = np.minimum(cu, cv).tolist()
    cmax = np.maximum(cu, cv).tolist()
    labels = g.edge_labels.tolist()
    groups: dict[EdgeAddress, list[int]] = {}
    for k in range(g.edge_count):
        groups.setdefault(EdgeAddress(level, cmin[k], labels[k], cmax[k]), []).append(k)
    index = {}
    for addr in sorted(groups):
        ids = np.array(groups[addr], dtype=np.int64)
        index[addr] = Bucket(ids, first[ids], second[ids])
    return index


def build_feature_index(dataset, assignments: Sequence[ColorAssignment], level: int) -> list[FeatureIndex]:
    """Per-graph map from edge address to the bucket of edges carrying it."""
    return [graph_feature_index(g, a, level) for g, a in zip(_graphs(dataset), assignments)]


def dump_colorings(dataset, assignments: Sequence[ColorAssignment], out: TextIO) -> None:
    """Write ``graph_id level node color`` rows."""
    for g, a in zip(_graphs(dataset), assignments):
        for level, colors in enumerate(a.levels):
            for node, color in enumerate(colors.tolist()):
                out.write(f"{g.graph_id} {level} {node} {color}\n")
