import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npkernel import Graph, GraphValidationError, generate_synthetic, parse_tu_dataset, validate_graph, write_tu_dataset
from npkernel.graph import graph_from_attribute_rows
from npkernel.synthetic import generate_planted
from npkernel.tu import TUFormatError

from conftest import FIXTURES, triangle


def write_files(tmp_path, name, **files):
    tmp_path.mkdir(parents=True, exist_ok=True)
    for suffix, lines in files.items():
        (tmp_path / f"{name}_{suffix}.txt").write_text("".join(f"{ln}\n" for ln in lines))
    return tmp_path


TWO_TRIANGLES = dict(
    A=["1, 2", "2, 3", "3, 1", "4, 5", "5, 6", "6, 4"],
    graph_indicator=["1"] * 3 + ["2"] * 3,
    node_labels=["1"] * 6,
)


# ------------------------------------------------------------------ Graph


def test_triangle_validates():
    validate_graph(triangle(labels=(0, 1, 2)))


def test_edges_are_stored_smaller_endpoint_first():
    g = Graph(3, [(2, 0), (1, 0)], [0, 0, 0])
    assert g.edges.tolist() == [[0, 2], [0, 1]]
    assert g.edge_id(2, 0) == 0 and g.edge_id(0, 1) == 1


def test_graph_arrays_are_read_only():
    g = triangle()
    with pytest.raises(ValueError):
        g.edges[0, 0] = 2


def test_ragged_attribute_dims_rejected():
    with pytest.raises(GraphValidationError, match="dimensions"):
        graph_from_attribute_rows([[1, 2, 3], [1, 2, 3], [1, 2]], node_count=3, edges=[(0, 1)], node_labels=[0, 0, 0])


def test_parallel_edge_rejected():
    g = Graph(2, [(0, 1), (1, 0)], [0, 0])
    with pytest.raises(GraphValidationError, match="parallel"):
        validate_graph(g)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        (dict(node_count=2, edges=[(0, 2)], node_labels=[0, 0]), "outside"),
        (dict(node_count=2, edges=[(1, 1)], node_labels=[0, 0]), "self-loop"),
        (dict(node_count=3, edges=[(0, 1)], node_labels=[0, 0]), "node labels"),
        (dict(node_count=2, edges=[(0, 1)], node_labels=[0, 0], node_attributes=[[0.0], [np.nan]]), "non-finite"),
        (dict(node_count=2, edges=[(0, 1)], node_labels=[0, 0], edge_labels=[0, 1]), "edge labels"),
    ],
)
def test_invariant_violations(kwargs, fragment):
    with pytest.raises(GraphValidationError, match=fragment):
        validate_graph(Graph(**kwargs))


def test_every_violation_is_reported():
    g = Graph(3, [(0, 0), (0, 5)], [0, 0])
    with pytest.raises(GraphValidationError) as info:
        validate_graph(g)
    assert len(info.value.problems) == 3


def test_permuted_graph_keeps_labels_with_nodes():
    g = Graph(3, [(0, 1), (1, 2)], [5, 6, 7], node_attributes=[[0.0], [1.0], [2.0]])
    h = g.permuted([2, 0, 1])
    assert h.node_labels.tolist() == [6, 7, 5]
    assert h.node_attributes[:, 0].tolist() == [1.0, 2.0, 0.0]
    assert sorted(map(tuple, h.edges.tolist())) == [(0, 1), (0, 2)]


# ------------------------------------------------------------------ TU parsing


def test_two_triangles(tmp_path):
    ds = parse_tu_dataset(write_files(tmp_path, "TRI", **TWO_TRIANGLES))
    assert len(ds) == 2
    for g in ds:
        assert g.node_count == 3
        assert g.edge_count == 3


def test_self_loop_row(tmp_path):
    files = dict(TWO_TRIANGLES, A=TWO_TRIANGLES["A"] + ["5, 5"])
    with pytest.raises(TUFormatError, match="self-loop"):
        parse_tu_dataset(write_files(tmp_path, "TRI", **files))


@pytest.mark.parametrize(
    "change, fragment",
    [
        (dict(A=["1, 2", "2, 9"]), "out of range"),
        (dict(A=["1, 4"]), "joins graphs"),
        (dict(node_attributes=["1.0, 2.0"] * 5 + ["1.0"]), "dimension"),
        (dict(node_labels=["1"] * 5), "5 labels for 6 nodes"),
        (dict(A=["1, 2", "2, 1"], edge_labels=["a", "b"]), "other direction"),
    ],
)
def test_malformed_files(tmp_path, change, fragment):
    with pytest.raises(TUFormatError, match=fragment):
        parse_tu_dataset(write_files(tmp_path, "TRI", **dict(TWO_TRIANGLES, **change)))


def test_missing_indicator(tmp_path):
    write_files(tmp_path, "TRI", A=TWO_TRIANGLES["A"])
    with pytest.raises(TUFormatError, match="missing mandatory"):
        parse_tu_dataset(tmp_path)


def test_degree_labels_without_label_file(tmp_path):
    files = dict(A=["1, 2", "2, 3"], graph_indicator=["1", "1", "1"])
    ds = parse_tu_dataset(write_files(tmp_path, "P", **files))
    g = ds[0]
    raw = [ds.node_symbols.raw(int(s)) for s in g.node_labels]
    assert raw == ["1", "2", "1"]
    assert not ds.has_node_labels


def test_one_direction_and_both_directions_agree(tmp_path):
    a = parse_tu_dataset(write_files(tmp_path / "a", "T", A=["1, 2", "2, 3", "1, 3"], graph_indicator=["1"] * 3))
    b = parse_tu_dataset(write_files(tmp_path / "b", "T", A=["1, 2", "2, 1", "2, 3", "3, 2", "3, 1", "1, 3"], graph_indicator=["1"] * 3))
    assert a[0].same_as(b[0])


def _indicator_multiplicities(path: Path):
    counts = {}
    with open(path) as fh:
        for line in fh:
            counts[line.strip()] = counts.get(line.strip(), 0) + 1
    return [counts[k] for k in sorted(counts, key=int)]


def test_proteins_layout_sizes():
    ds = parse_tu_dataset(FIXTURES / "proteins_mini")
    assert ds.name == "PROTEINS"
    expected = _indicator_multiplicities(FIXTURES / "proteins_mini" / "PROTEINS_graph_indicator.txt")
    assert [g.node_count for g in ds] == expected
    with open(FIXTURES / "proteins_mini" / "PROTEINS_A.txt") as fh:
        n_rows = sum(1 for line in fh if line.strip())
    assert sum(g.edge_count for g in ds) * 2 == n_rows
    assert ds.attribute_dim == 1
    assert list(ds.class_labels) == [1, 1, 2, 2]


@pytest.mark.parametrize("name", ["tiny", "proteins_mini", "synth_small", "synth_dense"])
def test_round_trip(tmp_path, name):
    ds = parse_tu_dataset(FIXTURES / name)
    write_tu_dataset(ds, tmp_path)
    assert parse_tu_dataset(tmp_path).same_as(ds)


def test_tiny_edge_labels():
    ds = parse_tu_dataset(FIXTURES / "tiny")
    star = ds[2]
    raw = {tuple(e): ds.edge_symbols.raw(int(l)) for e, l in zip(star.edges.tolist(), star.edge_labels)}
    assert raw == {(0, 1): "1", (0, 2): "2", (0, 3): "1"}


# ------------------------------------------------------------------ synthetic


def test_paper_scale_edge_count():
    ds = generate_synthetic(100, 300, 0.10, 2, 1, seed=7)
    assert len(ds) == 100
    assert round(0.10 * math.comb(300, 2)) == 4485
    assert all(g.edge_count == 4485 for g in ds)


def test_complete_graph_on_two_nodes():
    ds = generate_synthetic(1, 2, 1.0, 1, 1, seed=3)
    assert ds[0].edges.tolist() == [[0, 1]]


def test_same_seed_same_dataset():
    assert generate_synthetic(5, 12, 0.3, 3, 2, seed=42).same_as(generate_synthetic(5, 12, 0.3, 3, 2, seed=42))
    assert not generate_synthetic(5, 12, 0.3, 3, 2, seed=42).same_as(generate_synthetic(5, 12, 0.3, 3, 2, seed=43))


@pytest.mark.parametrize(
    "args",
    [(0, 5, 0.5, 2, 1), (3, 1, 0.5, 2, 1), (3, 5, 0.0, 2, 1), (3, 5, 1.5, 2, 1), (3, 5, 0.5, 0, 1), (3, 5, 0.5, 2, -1)],
)
def test_parameter_out_of_range(args):
    with pytest.raises(ValueError):
        generate_synthetic(*args, seed=0)


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(2, 25),
    density=st.floats(0.05, 1.0),
    labels=st.integers(1, 5),
    seed=st.integers(0, 2**32 - 1),
)
def test_synthetic_graphs_are_valid(n, density, labels, seed):
    m = round(density * math.comb(n, 2))
    if m < 1:
        return
    ds = generate_synthetic(3, n, density, labels, 2, seed)
    for g in ds:
        validate_graph(g)
        assert g.edge_count == m
        assert g.node_labels.max() < labels


def test_planted_classes_alternate_and_shift():
    ds = generate_planted(6, 8, 0.3, 2, 2, 2.0, seed=1)
    assert list(ds.class_labels) == [0, 1, 0, 1, 0, 1]
    assert all(g.node_attributes.min() >= 2.0 for g in ds.graphs[1::2])
    assert all(g.node_attributes.max() < 1.0 for g in ds.graphs[0::2])
