"""Brute-force reference kernels for testing.

Nothing here touches the production refinement, indexing or product-graph
code. Colors are kept as uncompressed nested signatures: level 0 is the node
label, level ``i`` is ``(own level-(i-1) signature, sorted neighbor
signatures)``. Python's tuple ordering on these signatures matches the
integer order of production color ids, which only matters for choosing
canonical shortest paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field


MAX_EDGES = 200
MAX_PATH_NODES = 12


class OracleSizeError(ValueError):
    pass


def naive_refine(g, h: int) -> list[list]:
    """Signature of every node at levels ``0..h``."""
    nbrs = [[] for _ in range(g.node_count)]
    for u, v in g.edges.tolist():
        nbrs[u].append(v)
        nbrs[v].append(u)
    levels = [[int(x) for x in g.node_labels.tolist()]]
    for _ in range(h):
        prev = levels[-1]
        levels.append([(prev[v], tuple(sorted(prev[u] for u in nbrs[v]))) for v in range(g.node_count)])
    return levels


def _base(kind, beta, x, y):
    if kind == "unit" or x is None:
        return 1.0
    x = [float(t) for t in x]
    y = [float(t) for t in y]
    if kind == "linear":
        return math.fsum(a * b for a, b in zip(x, y))
    if beta is None:
        beta = 1.0 / len(x)
    return math.exp(-beta * math.fsum((a - b) ** 2 for a, b in zip(x, y)))


def _node_k(base, g, u, g2, u2):
    X, X2 = g.node_attributes, g2.node_attributes
    if X is None:
        return 1.0
    return _base(base.kind, base.beta, X[u], X2[u2])


def _edge_k(base, g, k, g2, k2):
    Y, Y2 = g.edge_attributes, g2.edge_attributes
    if Y is None:
        return 1.0
    return _base(base.kind, base.beta, Y[k], Y2[k2])


def _levels(h, include_level0):
    return range(0 if include_level0 else 1, h + 1)


def _address(cu, lab, cv):
    return (lab, frozenset([cu, cv]) if cu != cv else frozenset([cu]), cu == cv)


def brute_npe(g, g2, h: int, base, include_level0: bool = False) -> float:
    """Quadruple loop over edge pairs with every delta condition spelled out."""
    if g.edge_count > MAX_EDGES or g2.edge_count > MAX_EDGES:
        raise OracleSizeError(f"brute_npe limited to {MAX_EDGES} edges per graph")
    s1, s2 = naive_refine(g, h), naive_refine(g2, h)
    E, E2 = g.edges.tolist(), g2.edges.tolist()
    L, L2 = g.edge_labels.tolist(), g2.edge_labels.tolist()
    total = 0.0
    for i in _levels(h, include_level0):
        c, c2 = s1[i], s2[i]
        count1 = {}
        for k, (u, v) in enumerate(E):
            a = _address(c[u], L[k], c[v])
            count1[a] = count1.get(a, 0) + 1
        count2 = {}
        for k, (u, v) in enumerate(E2):
            a = _address(c2[u], L2[k], c2[v])
            count2[a] = count2.get(a, 0) + 1
        for k, (u, v) in enumerate(E):
            for k2, (x, y) in enumerate(E2):
                if L[k] != L2[k2]:
                    continue
                straight = c[u] == c2[x] and c[v] == c2[y]
                crossed = c[u] == c2[y] and c[v] == c2[x]
                if not (straight or crossed):
                    continue
                ke = _edge_k(base, g, k, g2, k2)
                if straight and crossed:
                    kv = 0.5 * (
                        _node_k(base, g, u, g2, x) * _node_k(base, g, v, g2, y)
                        + _node_k(base, g, u, g2, y) * _node_k(base, g, v, g2, x)
                    )
                elif straight:
                    kv = _node_k(base, g, u, g2, x) * _node_k(base, g, v, g2, y)
                else:
                    kv = _node_k(base, g, u, g2, y) * _node_k(base, g, v, g2, x)
                a = _address(c[u], L[k], c[v])
                total += kv * ke / (count1[a] * count2[a])
    return total


def brute_npo(g, g2, h: int, include_level0: bool = False) -> int:
    if g.edge_count > MAX_EDGES or g2.edge_count > MAX_EDGES:
        raise OracleSizeError(f"brute_npo limited to {MAX_EDGES} edges per graph")
    s1, s2 = naive_refine(g, h), naive_refine(g2, h)
    total = 0
    for i in _levels(h, include_level0):
        addrs1 = [_address(s1[i][u], lab, s1[i][v]) for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist())]
        addrs2 = [_address(s2[i][u], lab, s2[i][v]) for (u, v), lab in zip(g2.edges.tolist(), g2.edge_labels.tolist())]
        for a in set(addrs1) & set(addrs2):
            total += min(addrs1.count(a), addrs2.count(a))
    return total


def _all_shortest_paths(g):
    """Every shortest path between every unordered connected node pair, by explicit enumeration."""
    n = g.node_count
    nbrs = [[] for _ in range(n)]
    for u, v in g.edges.tolist():
        nbrs[u].append(v)
        nbrs[v].append(u)
    dist = [[None] * n for _ in range(n)]
    for s in range(n):
        dist[s][s] = 0
        queue = [s]
        for x in queue:
            for y in nbrs[x]:
                if dist[s][y] is None:
                    dist[s][y] = dist[s][x] + 1
                    queue.append(y)
    out = {}
    for s in range(n):
        for t in range(s + 1, n):
            if dist[s][t] is None:
                continue
            paths = []

            def walk(path):
                x = path[-1]
                if x == t:
                    paths.append(tuple(path))
                    return
                for y in nbrs[x]:
                    if dist[s][y] == len(path) and dist[y][t] == dist[s][t] - len(path):
                        walk(path + [y])

            walk([s])
            out[(s, t)] = paths
    return out


def _tokens(path, colors, labels):
    toks = [colors[path[0]]]
    for a, b in zip(path, path[1:]):
        toks.append(labels[(min(a, b), max(a, b))])
        toks.append(colors[b])
    return tuple(toks)


def brute_nps(g, g2, h: int, base, include_level0: bool = False, max_len=None, normalize: bool = False) -> float:
    """All pairs of canonical shortest paths with the length, color and edge-label conditions checked one by one."""
    if g.node_count > MAX_PATH_NODES or g2.node_count > MAX_PATH_NODES:
        raise OracleSizeError(f"brute_nps limited to {MAX_PATH_NODES} nodes per graph")
    sp1, sp2 = _all_shortest_paths(g), _all_shortest_paths(g2)
    lab1 = {(u, v): lab for (u, v), lab in zip(g.edges.tolist(), g.edge_labels.tolist())}
    lab2 = {(u, v): lab for (u, v), lab in zip(g2.edges.tolist(), g2.edge_labels.tolist())}
    s1, s2 = naive_refine(g, h), naive_refine(g2, h)

    def canonical(sp, colors, labels):
        recs = []
        for (s, t), paths in sp.items():
            if max_len is not None and len(paths[0]) - 1 > max_len:
                continue
            best = None
            for p in paths:
                for q in (p, p[::-1]):
                    cand = (_tokens(q, colors, labels), q)
                    if best is None or cand[0] < best[0]:
                        best = cand
            toks, q = best
            colors_seq = [colors[x] for x in q]
            edge_seq = [labels[(min(a, b), max(a, b))] for a, b in zip(q, q[1:])]
            recs.append((toks, q[0], q[-1], colors_seq, edge_seq))
        return recs

    total = 0.0
    for i in _levels(h, include_level0):
        r1 = canonical(sp1, s1[i], lab1)
        r2 = canonical(sp2, s2[i], lab2)
        counts1, counts2 = {}, {}
        for r in r1:
            counts1[r[0]] = counts1.get(r[0], 0) + 1
        for r in r2:
            counts2[r[0]] = counts2.get(r[0], 0) + 1
        for toks, a, b, cs, es in r1:
            for toks2, x, y, cs2, es2 in r2:
                if len(cs) != len(cs2):
                    continue
                if any(p != q for p, q in zip(cs, cs2)):
                    continue
                if any(p != q for p, q in zip(es, es2)):
                    continue
                if cs == cs[::-1] and es == es[::-1]:
                    kv = 0.5 * (
                        _node_k(base, g, a, g2, x) * _node_k(base, g, b, g2, y)
                        + _node_k(base, g, a, g2, y) * _node_k(base, g, b, g2, x)
                    )
                else:
                    kv = _node_k(base, g, a, g2, x) * _node_k(base, g, b, g2, y)
                if normalize:
                    kv /= counts1[toks] * counts2[toks]
                total += kv
    return total


@dataclass
class OracleReport:
    rows: list = field(default_factory=list)

    def add(self, pair, reference: float, production: float):
        err = abs(reference - production) / max(1.0, abs(reference), abs(production))
        self.rows.append((pair, float(reference), float(production), err))

    @property
    def max_error(self) -> float:
        return max((r[3] for r in self.rows), default=0.0)

    def format(self) -> str:
        lines = [f"{'pair':>12}  {'reference':>22}  {'production':>22}  {'rel_err':>10}"]
        for (i, j), ref, prod, err in self.rows:
            lines.append(f"{f'({i},{j})':>12}  {ref:>22.15g}  {prod:>22.15g}  {err:>10.2e}")
        lines.append(f"max relative error: {self.max_error:.3e}")
        return "\n".join(lines)
