"""Reader and writer for the TU Dortmund flat-text graph dataset layout.

A dataset ``NAME`` stored in ``DIR`` consists of comma-separated files with
1-based global node ids::

    NAME_A.txt                 one edge row "u, v" per line (mandatory)
    NAME_graph_indicator.txt   graph id of every node (mandatory)
    NAME_node_labels.txt       one label per node
    NAME_node_attributes.txt   one attribute row per node
    NAME_edge_labels.txt       one label per row of NAME_A.txt
    NAME_edge_attributes.txt   one attribute row per row of NAME_A.txt
    NAME_graph_labels.txt      one class label per graph
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .graph import Dataset, Graph, GraphValidationError, SymbolTable, validate_graph


class TUFormatError(ValueError):
    pass


def _path(directory, name, suffix) -> Path:
    return Path(directory) / f"{name}_{suffix}.txt"


def _lines(path: Path) -> list[str]:
    with open(path) as fh:
        return [ln.strip() for ln in fh if ln.strip()]


def _rows(path: Path) -> list[list[str]]:
    return [[t.strip() for t in ln.split(",")] for ln in _lines(path)]


def _float_rows(path: Path, what: str) -> list[list[float]]:
    rows = []
    for i, r in enumerate(_rows(path), 1):
        try:
            rows.append([float(t) for t in r])
        except ValueError as exc:
            raise TUFormatError(f"{path.name}:{i}: bad {what} value: {exc}") from None
    dims = {len(r) for r in rows}
    if len(dims) > 1:
        raise TUFormatError(f"{path.name}: {what} rows have inconsistent dimension {sorted(dims)}")
    return rows


def _symbol_table(raw_values) -> SymbolTable:
    """Integer-valued labels get numeric order; anything else keeps first-seen order."""
    distinct = list(dict.fromkeys(raw_values))
    try:
        distinct = sorted(distinct, key=int)
    except ValueError:
        pass
    return SymbolTable(distinct)


def infer_name(directory) -> str:
    """Dataset name from the single ``*_A.txt`` file in ``directory``."""
    hits = sorted(p.name[: -len("_A.txt")] for p in Path(directory).glob("*_A.txt"))
    if len(hits) != 1:
        raise TUFormatError(f"cannot infer dataset name in {directory}: found {hits or 'no _A.txt'}")
    return hits[0]


def parse_tu_dataset(directory, name: str | None = None) -> Dataset:
    """Read a TU-format dataset into a :class:`Dataset`.

    Each edge may be listed once or in both directions; duplicate rows are
    merged. Without a node label file every node is labeled by its degree.
    """
    directory = Path(directory)
    name = name or infer_name(directory)
    for suffix in ("A", "graph_indicator"):
        if not _path(directory, name, suffix).exists():
            raise TUFormatError(f"missing mandatory file {_path(directory, name, suffix)}")

    indicator = _lines(_path(directory, name, "graph_indicator"))
    try:
        indicator = [int(t) for t in indicator]
    except ValueError as exc:
        raise TUFormatError(f"bad graph indicator: {exc}") from None
    n_total = len(indicator)
    graph_keys = sorted(set(indicator))
    gindex = {k: i for i, k in enumerate(graph_keys)}
    node_graph = np.array([gindex[k] for k in indicator], dtype=np.int64)
    local = np.zeros(n_total, dtype=np.int64)
    sizes = np.zeros(len(graph_keys), dtype=np.int64)
    for v, gi in enumerate(node_graph):
        local[v] = sizes[gi]
        sizes[gi] += 1

    members = [np.flatnonzero(node_graph == gi) for gi in range(len(graph_keys))]
    a_rows = _rows(_path(directory, name, "A"))
    n_rows = len(a_rows)

    def optional(suffix):
        p = _path(directory, name, suffix)
        return p if p.exists() else None

    edge_label_raw = None
    if (p := optional("edge_labels")) is not None:
        edge_label_raw = _lines(p)
        if len(edge_label_raw) != n_rows:
            raise TUFormatError(f"{p.name}: {len(edge_label_raw)} labels for {n_rows} edge rows")
    edge_attr_rows = None
    if (p := optional("edge_attributes")) is not None:
        edge_attr_rows = _float_rows(p, "edge attribute")
        if len(edge_attr_rows) != n_rows:
            raise TUFormatError(f"{p.name}: {len(edge_attr_rows)} rows for {n_rows} edge rows")

    # per graph: (u, v) local -> (first row index)
    per_graph: list[dict[tuple[int, int], int]] = [{} for _ in graph_keys]
    for r, row in enumerate(a_rows):
        if len(row) != 2:
            raise TUFormatError(f"{name}_A.txt:{r + 1}: expected 2 columns, got {len(row)}")
        try:
            u, v = int(row[0]), int(row[1])
        except ValueError:
            raise TUFormatError(f"{name}_A.txt:{r + 1}: non-integer node id") from None
        for x in (u, v):
            if not 1 <= x <= n_total:
                raise TUFormatError(f"{name}_A.txt:{r + 1}: node id {x} out of range [1, {n_total}]")
        if u == v:
            raise TUFormatError(f"{name}_A.txt:{r + 1}: self-loop at node {u}")
        gu, gv = node_graph[u - 1], node_graph[v - 1]
        if gu != gv:
            raise TUFormatError(f"{name}_A.txt:{r + 1}: edge joins graphs {graph_keys[gu]} and {graph_keys[gv]}")
        a, b = sorted((int(local[u - 1]), int(local[v - 1])))
        first = per_graph[gu].get((a, b))
        if first is None:
            per_graph[gu][(a, b)] = r
        else:
            if edge_label_raw is not None and edge_label_raw[first] != edge_label_raw[r]:
                raise TUFormatError(
                    f"{name}_A.txt:{r + 1}: edge ({u}, {v}) labeled {edge_label_raw[r]!r} "
                    f"but {edge_label_raw[first]!r} in the other direction"
                )

    has_node_labels = optional("node_labels") is not None
    if has_node_labels:
        raw_labels = _lines(optional("node_labels"))
        if len(raw_labels) != n_total:
            raise TUFormatError(f"{name}_node_labels.txt: {len(raw_labels)} labels for {n_total} nodes")
    else:
        degree = np.zeros(n_total, dtype=np.int64)
        for gi, edges in enumerate(per_graph):
            for a, b in edges:
                degree[members[gi][a]] += 1
                degree[members[gi][b]] += 1
        raw_labels = [str(d) for d in degree]
    node_symbols = _symbol_table(raw_labels)
    node_sym = np.array([node_symbols.symbol(t) for t in raw_labels], dtype=np.int64)

    attrs = None
    if (p := optional("node_attributes")) is not None:
        attrs = np.asarray(_float_rows(p, "node attribute"), dtype=np.float64)
        if len(attrs) != n_total:
            raise TUFormatError(f"{p.name}: {len(attrs)} rows for {n_total} nodes")

    edge_symbols = None
    if edge_label_raw is not None:
        edge_symbols = _symbol_table(edge_label_raw)

    class_labels = None
    if (p := optional("graph_labels")) is not None:
        class_labels = [int(t) for t in _lines(p)]
        if len(class_labels) != len(graph_keys):
            raise TUFormatError(f"{p.name}: {len(class_labels)} labels for {len(graph_keys)} graphs")

    graphs = []
    for gi in range(len(graph_keys)):
        idx = members[gi]
        edges = list(per_graph[gi])
        rows = list(per_graph[gi].values())
        g = Graph(
            node_count=int(sizes[gi]),
            edges=np.array(edges, dtype=np.int64).reshape(-1, 2),
            node_labels=node_sym[idx],
            node_attributes=None if attrs is None else attrs[idx],
            edge_labels=None
            if edge_label_raw is None
            else np.array([edge_symbols.symbol(edge_label_raw[r]) for r in rows], dtype=np.int64),
            edge_attributes=None
            if edge_attr_rows is None
            else np.array([edge_attr_rows[r] for r in rows], dtype=np.float64).reshape(len(rows), -1),
            graph_id=gi,
        )
        try:
            validate_graph(g)
        except GraphValidationError as exc:
            raise TUFormatError(str(exc)) from None
        graphs.append(g)

    return Dataset(
        graphs=tuple(graphs),
        name=name,
        class_labels=class_labels,
        node_symbols=node_symbols,
        edge_symbols=edge_symbols,
        has_node_labels=has_node_labels,
    )


def _fmt(x: float) -> str:
    return repr(float(x))


def write_tu_dataset(dataset: Dataset, directory, name: str | None = None) -> Path:
    """Write ``dataset`` in TU layout, listing each edge in both directions."""
    directory = Path(directory)
    name = name or dataset.name
    os.makedirs(directory, exist_ok=True)
    offset = 0
    a_lines, ind_lines, nl_lines, na_lines, el_lines, ea_lines = [], [], [], [], [], []
    for gi, g in enumerate(dataset.graphs):
        ind_lines.extend([str(gi + 1)] * g.node_count)
        for v in range(g.node_count):
            nl_lines.append(dataset.node_symbols.raw(int(g.node_labels[v])))
            if g.node_attributes is not None:
                na_lines.append(", ".join(_fmt(x) for x in g.node_attributes[v]))
        for k, (u, v) in enumerate(g.edges.tolist()):
            for a, b in ((u, v), (v, u)):
                a_lines.append(f"{a + offset + 1}, {b + offset + 1}")
                if dataset.edge_symbols is not None:
                    el_lines.append(dataset.edge_symbols.raw(int(g.edge_labels[k])))
                if g.edge_attributes is not None:
                    ea_lines.append(", ".join(_fmt(x) for x in g.edge_attributes[k]))
        offset += g.node_count

    def put(suffix, lines):
        with open(_path(directory, name, suffix), "w") as fh:
            fh.write("".join(ln + "\n" for ln in lines))

    put("A", a_lines)
    put("graph_indicator", ind_lines)
    if dataset.has_node_labels:
        put("node_labels", nl_lines)
    if dataset.attribute_dim is not None:
        put("node_attributes", na_lines)
    if dataset.edge_symbols is not None:
        put("edge_labels", el_lines)
    if dataset.edge_attribute_dim is not None:
        put("edge_attributes", ea_lines)
    if dataset.class_labels is not None:
        put("graph_labels", [str(int(y)) for y in dataset.class_labels])
    return directory
