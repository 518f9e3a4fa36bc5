"""Neighborhood preserving shortest path (NPS) kernel.

Each connected node pair contributes one shortest path. Among all shortest
paths between the pair, read in either direction, the one whose interleaved
color / edge-label sequence is lexicographically smallest is kept; that
sequence is the path's address and fixes which endpoint is the source.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .base import UNIT, AttributeKernels
from .graph import Graph
from .kernels import KernelConfig, attribute_kernels, bucket_sum
from .wl import Bucket, ColorAssignment


class PathAddress(NamedTuple):
    level: int
    tokens: tuple  # (c_1, l_1, c_2, ..., l_{n-1}, c_n)

    @property
    def length(self) -> int:
        return len(self.tokens) // 2

    @property
    def palindromic(self) -> bool:
        return self.tokens == self.tokens[::-1]


@dataclass(frozen=True)
class CanonicalPath:
    nodes: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def sink(self) -> int:
        return self.nodes[-1]


def distance_matrix(g: Graph) -> np.ndarray:
    n = g.node_count
    if g.edge_count == 0:
        d = np.full((n, n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    e = g.edges
    adj = csr_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
    return shortest_path(adj, directed=False, unweighted=True)


def _labeled_nbrs(g: Graph):
    out = [[] for _ in range(g.node_count)]
    for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist()):
        out[u].append((v, lab))
        out[v].append((u, lab))
    for row in out:
        row.sort()
    return out


def _lexmin_walk(nbrs, colors, dist, s, t):
    """Smallest token sequence over shortest s-t paths and one path realizing it."""
    D = int(dist[s, t])
    tokens = [colors[s]]
    frontier = [s]
    preds = []
    for k in range(1, D + 1):
        best = None
        cand: dict[int, int] = {}
        for x in frontier:
            for y, lab in nbrs[x]:
                if dist[s, y] != k or dist[y, t] != D - k:
                    continue
                tok = (lab, colors[y])
                if best is None or tok < best:
                    best, cand = tok, {y: x}
                elif tok == best and y not in cand:
                    cand[y] = x
        tokens.extend(best)
        preds.append(cand)
        frontier = sorted(cand)
    nodes = [t]
    for cand in reversed(preds):
        nodes.append(cand[nodes[-1]])
    return tuple(tokens), tuple(reversed(nodes))


def _records(g: Graph, colors, max_len):
    """``(tokens, path nodes, palindromic)`` for each connected node pair."""
    colors = [int(c) for c in colors]
    dist = distance_matrix(g)
    nbrs = _labeled_nbrs(g)
    out = []
    n = g.node_count
    for s in range(n):
        for t in range(s + 1, n):
            d = dist[s, t]
            if not np.isfinite(d) or (max_len is not None and d > max_len):
                continue
            fwd, fnodes = _lexmin_walk(nbrs, colors, dist, s, t)
            rev, rnodes = _lexmin_walk(nbrs, colors, dist, t, s)
            if rev < fwd:
                out.append((rev, rnodes, False))
            else:
                out.append((fwd, fnodes, fwd == rev))
    return out


def extract_paths(g: Graph, max_len: int | None = None, colors=None) -> list[CanonicalPath]:
    """One canonical shortest path per connected unordered node pair.

    ``colors`` defaults to the node labels; paths are canonical with respect
    to the coloring given.
    """
    colors = g.node_labels if colors is None else colors
    return [CanonicalPath(nodes) for _, nodes, _ in _records(g, colors, max_len)]


def path_tokens(g: Graph, nodes, colors) -> tuple:
    toks = [int(colors[nodes[0]])]
    for a, b in zip(nodes, nodes[1:]):
        toks.append(int(g.edge_labels[g.edge_id(a, b)]))
        toks.append(int(colors[b]))
    return tuple(toks)


def path_address(p: CanonicalPath, g: Graph, assignment: ColorAssignment, level: int) -> PathAddress:
    c = assignment.colors(level)
    fwd = path_tokens(g, p.nodes, c)
    return PathAddress(level, min(fwd, fwd[::-1]))


PathIndex = dict  # PathAddress -> Bucket (edge_ids hold path ordinals)


def graph_path_index(g: Graph, assignment: ColorAssignment, level: int, max_len=None) -> PathIndex:
    groups: dict[PathAddress, list[tuple[int, int, int]]] = {}
    for ordinal, (tokens, nodes, _) in enumerate(_records(g, assignment.colors(level), max_len)):
        groups.setdefault(PathAddress(level, tokens), []).append((ordinal, nodes[0], nodes[-1]))
    index = {}
    for addr in sorted(groups):
        rows = np.array(groups[addr], dtype=np.int64).reshape(-1, 3)
        index[addr] = Bucket(rows[:, 0], rows[:, 1], rows[:, 2])
    return index


def nps_from_indexes(kernels: AttributeKernels, g, g2, idx: PathIndex, idx2: PathIndex, normalize: bool) -> float:
    total = 0.0
    for addr, b in idx.items():
        b2 = idx2.get(addr)
        if b2 is None:
            continue
        s = bucket_sum(kernels, g, g2, b, b2, addr.palindromic)
        total += s / (len(b) * len(b2)) if normalize else s
    return total


def node_only(config: KernelConfig, g: Graph) -> AttributeKernels:
    return AttributeKernels(attribute_kernels(config, g).node, UNIT)


def nps_levels(g, g2, colors: ColorAssignment, colors2: ColorAssignment, config: KernelConfig) -> np.ndarray:
    kernels = node_only(config, g)
    out = []
    for i in config.levels:
        idx = graph_path_index(g, colors, i, config.max_path_len)
        idx2 = graph_path_index(g2, colors2, i, config.max_path_len)
        out.append(nps_from_indexes(kernels, g, g2, idx, idx2, config.nps_normalize))
    return np.array(out)


def nps_pair(g, g2, colors, colors2, config: KernelConfig) -> float:
    """Sum over levels and equally addressed path pairs of source and sink node kernels."""
    return float(nps_levels(g, g2, colors, colors2, config).sum())
