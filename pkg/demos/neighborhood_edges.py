"""Which edges of two graphs are neighborhood preserving, level by level.

A triangle A-A-B with a pendant C hanging off B, against a bare A-A-B
triangle. At level 0 only the pendant edge lacks a counterpart. One round of
refinement gives the B node a different color in each graph, so its edges
drop out and only the A-A edge survives. At level 2 the A nodes differ too
and the product graph is empty.

    python3 demos/neighborhood_edges.py > pair.dot && dot -Tsvg pair.dot -o pair.svg
"""
import sys

from npkernel import Graph, build_product, convolution_pairs, np_edges, prune_product, refine
from npkernel.product import partition_to_dot, product_to_dot

A, B, C = 0, 1, 2
g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)], [A, A, B, C], graph_id=0)
g2 = Graph(3, [(0, 1), (1, 2), (0, 2)], [A, A, B], graph_id=1)

H = 2
a, a2 = refine([g, g2], H)
pg = build_product(g, g2, a, a2, 0)
for level in range(H + 1):
    if level:
        pg = prune_product(pg, a.colors(level), a2.colors(level))
    print(
        f"level {level}: {len(pg.nodes)} product nodes, {len(pg.edges)} product edges, "
        f"{len(convolution_pairs(pg))} edge pairs, left edges kept {sorted(np_edges(pg, 'left'))}",
        file=sys.stderr,
    )
    print(partition_to_dot(pg, f"partition_level{level}"))
    print(product_to_dot(pg, f"product_level{level}"))
