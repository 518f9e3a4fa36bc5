"""Graph and dataset model.

Graphs are undirected and simple. Node labels are compact integer symbols
drawn from a :class:`SymbolTable`; attributes are optional float matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

#: Edge label carried by every edge of a dataset without edge labels.
DEFAULT_EDGE_LABEL = 0


class GraphValidationError(ValueError):
    """Raised when a graph violates one or more structural invariants.

    ``problems`` holds one diagnostic string per violated invariant.
    """

    def __init__(self, problems: Sequence[str], graph_id=None):
        self.problems = list(problems)
        self.graph_id = graph_id
        prefix = f"graph {graph_id}: " if graph_id is not None else ""
        super().__init__(prefix + "; ".join(self.problems))


class SymbolTable:
    """Insertion-ordered bijection between raw label text and integer symbols."""

    def __init__(self, raw: Iterable[str] = ()):
        self._to_symbol: dict[str, int] = {}
        self._to_raw: list[str] = []
        for r in raw:
            self.add(r)

    def add(self, raw) -> int:
        raw = str(raw)
        sym = self._to_symbol.get(raw)
        if sym is None:
            sym = len(self._to_raw)
            self._to_symbol[raw] = sym
            self._to_raw.append(raw)
        return sym

    def symbol(self, raw) -> int:
        return self._to_symbol[str(raw)]

    def raw(self, symbol: int) -> str:
        return self._to_raw[symbol]

    def __len__(self):
        return len(self._to_raw)

    def __contains__(self, raw):
        return str(raw) in self._to_symbol

    def __eq__(self, other):
        return isinstance(other, SymbolTable) and self._to_raw == other._to_raw

    def __repr__(self):
        return f"SymbolTable({self._to_raw!r})"


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected labeled graph with optional node and edge attributes.

    ``edges`` is an ``(m, 2)`` integer array; row ``k`` is edge ``k`` and the
    row index doubles as the edge id used by ``edge_labels`` and
    ``edge_attributes``. Rows are stored with the smaller endpoint first.
    Construction does not check invariants; call :func:`validate_graph`.
    """

    node_count: int
    edges: np.ndarray
    node_labels: np.ndarray
    node_attributes: np.ndarray | None = None
    edge_labels: np.ndarray | None = None
    edge_attributes: np.ndarray | None = None
    graph_id: int = 0

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        edges = np.sort(edges, axis=1)
        object.__setattr__(self, "edges", _frozen(edges, np.int64))
        object.__setattr__(self, "node_labels", _frozen(self.node_labels, np.int64))
        if self.edge_labels is None:
            labels = np.full(len(edges), DEFAULT_EDGE_LABEL, dtype=np.int64)
        else:
            labels = self.edge_labels
        object.__setattr__(self, "edge_labels", _frozen(labels, np.int64))
        if self.node_attributes is not None:
            x = np.asarray(self.node_attributes, dtype=np.float64)
            if x.ndim == 1:
                x = x.reshape(-1, 1)
            object.__setattr__(self, "node_attributes", _frozen(x, np.float64))
        if self.edge_attributes is not None:
            x = np.asarray(self.edge_attributes, dtype=np.float64)
            if x.ndim == 1:
                x = x.reshape(-1, 1)
            object.__setattr__(self, "edge_attributes", _frozen(x, np.float64))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def attribute_dim(self) -> int | None:
        if self.node_attributes is None:
            return None
        return self.node_attributes.shape[1]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuple per node."""
        nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges.tolist():
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(n)) for n in nbrs)

    @cached_property
    def edge_ids(self) -> dict[tuple[int, int], int]:
        """Map from ``(min, max)`` endpoint pair to edge id."""
        return {(u, v): k for k, (u, v) in enumerate(self.edges.tolist())}

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_ids[(u, v) if u < v else (v, u)]

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.node_count)

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Relabel nodes so that old node ``i`` becomes ``perm[i]``.

        Edge order is shuffled consistently so edge ids change too.
        """
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(perm)
        edges = perm[self.edges]
        order = np.lexsort((np.max(edges, 1), np.min(edges, 1)))
        return Graph(
            node_count=self.node_count,
            edges=edges[order],
            node_labels=self.node_labels[inv],
            node_attributes=None if self.node_attributes is None else self.node_attributes[inv],
            edge_labels=self.edge_labels[order],
            edge_attributes=None if self.edge_attributes is None else self.edge_attributes[order],
            graph_id=self.graph_id,
        )

    def same_as(self, other: "Graph") -> bool:
        """Structural and array equality (edge order included)."""

        def eq(a, b):
            if a is None or b is None:
                return a is None and b is None
            return a.shape == b.shape and np.array_equal(a, b)

        return (
            self.node_count == other.node_count
            and self.graph_id == other.graph_id
            and eq(self.edges, other.edges)
            and eq(self.node_labels, other.node_labels)
            and eq(self.node_attributes, other.node_attributes)
            and eq(self.edge_labels, other.edge_labels)
            and eq(self.edge_attributes, other.edge_attributes)
        )


def validate_graph(g: Graph) -> None:
    """Raise :class:`GraphValidationError` listing every violated invariant."""
    problems = []
    n = g.node_count
    if n < 0:
        problems.append(f"negative node count {n}")
    e = g.edges
    if len(e):
        if e.min() < 0 or e.max() >= n:
            problems.append(f"edge endpoint outside [0, {n})")
        loops = np.flatnonzero(e[:, 0] == e[:, 1])
        if len(loops):
            problems.append(f"self-loop at node {int(e[loops[0], 0])}")
        seen = set()
        for u, v in e.tolist():
            if (u, v) in seen:
                problems.append(f"parallel edge {{{u}, {v}}}")
                break
            seen.add((u, v))
    if len(g.node_labels) != n:
        problems.append(f"{len(g.node_labels)} node labels for {n} nodes")
    if len(g.edge_labels) != len(e):
        problems.append(f"{len(g.edge_labels)} edge labels for {len(e)} edges")
    x = g.node_attributes
    if x is not None:
        if x.shape[0] != n:
            problems.append(f"{x.shape[0]} attribute rows for {n} nodes")
        if x.shape[1] < 1:
            problems.append("attribute dimension must be >= 1")
        if not np.all(np.isfinite(x)):
            problems.append("non-finite node attribute")
    y = g.edge_attributes
    if y is not None:
        if y.shape[0] != len(e):
            problems.append(f"{y.shape[0]} edge attribute rows for {len(e)} edges")
        if not np.all(np.isfinite(y)):
            problems.append("non-finite edge attribute")
    if problems:
        raise GraphValidationError(problems, g.graph_id)


def graph_from_attribute_rows(rows: Sequence[Sequence[float]], **kwargs) -> Graph:
    """Build a graph from ragged attribute rows, rejecting inconsistent dimensions."""
    dims = {len(r) for r in rows}
    if len(dims) > 1:
        raise GraphValidationError(
            [f"node attribute dimensions differ: {sorted(dims)}"], kwargs.get("graph_id")
        )
    return Graph(node_attributes=np.asarray(rows, dtype=np.float64), **kwargs)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered collection of graphs sharing label alphabets and attribute dimension."""

    graphs: tuple[Graph, ...]
    name: str = "dataset"
    class_labels: np.ndarray | None = None
    node_symbols: SymbolTable = field(default_factory=SymbolTable)
    edge_symbols: SymbolTable | None = None
    has_node_labels: bool = True

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        if self.class_labels is not None:
            y = _frozen(self.class_labels, np.int64)
            if len(y) != len(self.graphs):
                raise ValueError(f"{len(y)} class labels for {len(self.graphs)} graphs")
            object.__setattr__(self, "class_labels", y)
        dims = {g.attribute_dim for g in self.graphs}
        if len(dims) > 1:
            raise GraphValidationError([f"graphs disagree on attribute dimension: {dims}"])

    @property
    def attribute_dim(self) -> int | None:
        return self.graphs[0].attribute_dim if self.graphs else None

    @property
    def edge_attribute_dim(self) -> int | None:
        if not self.graphs or self.graphs[0].edge_attributes is None:
            return None
        return self.graphs[0].edge_attributes.shape[1]

    def __len__(self):
        return len(self.graphs)

    def __getitem__(self, i) -> Graph:
        return self.graphs[i]

    def __iter__(self):
        return iter(self.graphs)

    def subset(self, indices: Sequence[int]) -> "Dataset":
        y = None if self.class_labels is None else self.class_labels[list(indices)]
        return Dataset(
            graphs=tuple(self.graphs[i] for i in indices),
            name=self.name,
            class_labels=y,
            node_symbols=self.node_symbols,
            edge_symbols=self.edge_symbols,
            has_node_labels=self.has_node_labels,
        )

    def same_as(self, other: "Dataset") -> bool:
        if len(self) != len(other) or self.name != other.name:
            return False
        if (self.class_labels is None) != (other.class_labels is None):
            return False
        if self.class_labels is not None and not np.array_equal(self.class_labels, other.class_labels):
            return False
        return all(a.same_as(b) for a, b in zip(self.graphs, other.graphs))


def dataset_from_graphs(graphs: Sequence[Graph], name="dataset", class_labels=None) -> Dataset:
    """Wrap already-symbolized graphs; symbols are their own raw text."""
    top = max((int(g.node_labels.max()) for g in graphs if g.node_count), default=-1)
    symbols = SymbolTable(str(s) for s in range(top + 1))
    return Dataset(graphs=tuple(graphs), name=name, class_labels=class_labels, node_symbols=symbols)
