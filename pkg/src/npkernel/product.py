"""Direct product graphs of two color-refined graphs.

A product node ``(u, u')`` pairs equally colored nodes; a product edge joins
``(u, u')`` and ``(v, v')`` when ``{u, v}`` and ``{u', v'}`` are edges with the
same edge label. Product edges are stored as rows ``(u, u', v, v')`` with
``(u, u') < (v, v')``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import Graph
from .wl import ColorAssignment, EdgeAddress, orient


class ProductGraphTooLarge(RuntimeError):
    pass


def _colors_at(colors, level):
    if isinstance(colors, ColorAssignment):
        return colors.colors(level)
    return np.asarray(colors)


@dataclass(frozen=True, eq=False)
class ProductGraph:
    nodes: np.ndarray  # (k, 2) rows (u, u'), lexicographically sorted
    edges: np.ndarray  # (m, 4) rows (u, u', v, v'), lexicographically sorted
    level: int
    left: Graph
    right: Graph
    left_colors: np.ndarray
    right_colors: np.ndarray

    @property
    def provenance(self) -> tuple[int, int]:
        return self.left.graph_id, self.right.graph_id

    def same_structure(self, other: "ProductGraph") -> bool:
        return (
            self.level == other.level
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.edges, other.edges)
        )


def build_product(
    g: Graph, g2: Graph, colors, colors2, level: int, edge_budget: int | None = None
) -> ProductGraph:
    """Product graph of ``g`` and ``g2`` under their colorings at ``level``."""
    c = _colors_at(colors, level)
    c2 = _colors_at(colors2, level)
    by_color: dict[int, list[int]] = {}
    for x, col in enumerate(c2.tolist()):
        by_color.setdefault(col, []).append(x)
    nodes = [(u, x) for u, col in enumerate(c.tolist()) for x in by_color.get(col, ())]
    node_set = set(nodes)

    nbr = _labeled_adjacency(g)
    nbr2 = _labeled_adjacency(g2)
    edges = []
    for u, x in nodes:
        for v, lab in nbr[u]:
            for y, lab2 in nbr2[x]:
                if lab == lab2 and (u, x) < (v, y) and (v, y) in node_set:
                    edges.append((u, x, v, y))
        if edge_budget is not None and len(edges) > edge_budget:
            raise ProductGraphTooLarge(
                f"product of graphs {g.graph_id} and {g2.graph_id} exceeds {edge_budget} edges; "
                "use the global scheme or raise the edge budget"
            )
    edges.sort()
    return ProductGraph(
        nodes=np.array(nodes, dtype=np.int64).reshape(-1, 2),
        edges=np.array(edges, dtype=np.int64).reshape(-1, 4),
        level=level,
        left=g,
        right=g2,
        left_colors=c,
        right_colors=c2,
    )


def _labeled_adjacency(g: Graph):
    out = [[] for _ in range(g.node_count)]
    for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist()):
        out[u].append((v, lab))
        out[v].append((u, lab))
    return out


def prune_product(pg: ProductGraph, colors_next, colors_next2) -> ProductGraph:
    """Product graph one level up, obtained by deleting mismatched product nodes.

    A product node survives when both constituents still share a color at the
    next level; an edge survives when both of its product nodes do.
    """
    level = pg.level + 1
    c = _colors_at(colors_next, level)
    c2 = _colors_at(colors_next2, level)
    keep = c[pg.nodes[:, 0]] == c2[pg.nodes[:, 1]]
    e = pg.edges
    keep_e = (c[e[:, 0]] == c2[e[:, 1]]) & (c[e[:, 2]] == c2[e[:, 3]])
    return ProductGraph(
        nodes=pg.nodes[keep],
        edges=e[keep_e],
        level=level,
        left=pg.left,
        right=pg.right,
        left_colors=c,
        right_colors=c2,
    )


def np_edges(pg: ProductGraph, which: str = "left") -> set[tuple[int, int]]:
    """Neighborhood preserving edges of one side: projections of product edges."""
    if which == "left":
        cols = (0, 2)
    elif which == "right":
        cols = (1, 3)
    else:
        raise ValueError("which must be 'left' or 'right'")
    a, b = pg.edges[:, cols[0]].tolist(), pg.edges[:, cols[1]].tolist()
    return {(min(x, y), max(x, y)) for x, y in zip(a, b)}


class ConvolutionPair(NamedTuple):
    """Edge of the left graph matched with an equally addressed edge of the right graph."""

    address: EdgeAddress
    edge: tuple[int, int]
    edge2: tuple[int, int]
    edge_id: int
    edge_id2: int


def convolution_pairs(pg: ProductGraph) -> list[ConvolutionPair]:
    """One pair per matched ``(e, e')``, sorted by address then edge ids.

    Two product edges ``((u,u'),(v,v'))`` and ``((u,v'),(v,u'))`` arise from
    the same edge pair when all four endpoints share a color; keying by edge
    ids collapses them.
    """
    g, g2 = pg.left, pg.right
    ids, ids2 = g.edge_ids, g2.edge_ids
    seen = set()
    for u, x, v, y in pg.edges.tolist():
        seen.add((ids[(u, v) if u < v else (v, u)], ids2[(x, y) if x < y else (y, x)]))
    c, c2 = pg.left_colors, pg.right_colors
    out = []
    for k, k2 in seen:
        u, v = g.edges[k].tolist()
        x, y = g2.edges[k2].tolist()
        e = orient(u, v, c)
        e2 = orient(x, y, c2)
        addr = EdgeAddress(pg.level, int(c[e[0]]), int(g.edge_labels[k]), int(c[e[1]]))
        out.append(ConvolutionPair(addr, e, e2, k, k2))
    out.sort(key=lambda p: (p.address, p.edge_id, p.edge_id2))
    return out


def _dot_id(side, node):
    return f"{side}{node}"


def product_to_dot(pg: ProductGraph, name: str = "product") -> str:
    lines = [f"graph {name} {{", f'  label="product graph, level {pg.level}";']
    for u, x in pg.nodes.tolist():
        lines.append(f'  "{u},{x}" [label="({u},{x})\\nc={pg.left_colors[u]}"];')
    for u, x, v, y in pg.edges.tolist():
        lines.append(f'  "{u},{x}" -- "{v},{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def partition_to_dot(pg: ProductGraph, name: str = "partition") -> str:
    """Both input graphs colored at ``pg.level``; NP edges bold, the rest dashed."""
    lines = [f"graph {name} {{", f'  label="neighborhood preserving edges, level {pg.level}";']
    for side, g, colors, which in (("a", pg.left, pg.left_colors, "left"), ("b", pg.right, pg.right_colors, "right")):
        keep = np_edges(pg, which)
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f'    label="graph {g.graph_id}";')
        for v in range(g.node_count):
            lines.append(f'    {_dot_id(side, v)} [label="{v}\\nc={colors[v]}"];')
        for u, v in g.edges.tolist():
            style = "bold" if (u, v) in keep else "dashed"
            lines.append(f"    {_dot_id(side, u)} -- {_dot_id(side, v)} [style={style}];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
