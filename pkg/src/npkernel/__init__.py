"""Neighborhood preserving graph kernels (NPE, NPO, NP, NPS)."""
from .base import BaseKernelSpec, eval_node_kernel
from .engine import GramMatrix, check_psd, gram, knn_eval, normalize_gram
from .graph import Dataset, Graph, GraphValidationError, SymbolTable, validate_graph
from .kernels import (
    Hierarchy,
    KernelConfig,
    build_hierarchy,
    histogram_intersection,
    histogram_vector,
    np_pair,
    npe_pair,
    npo_pair,
)
from .nps import extract_paths, nps_pair, path_address
from .product import build_product, convolution_pairs, np_edges, prune_product
from .synthetic import generate_planted, generate_synthetic
from .tu import parse_tu_dataset, write_tu_dataset
from .wl import ColorAssignment, ColorDictionary, EdgeAddress, build_feature_index, edge_address, refine

__version__ = "0.1.0"

__all__ = [
    "BaseKernelSpec",
    "ColorAssignment",
    "ColorDictionary",
    "Dataset",
    "EdgeAddress",
    "Graph",
    "GraphValidationError",
    "GramMatrix",
    "Hierarchy",
    "KernelConfig",
    "SymbolTable",
    "build_feature_index",
    "build_hierarchy",
    "build_product",
    "check_psd",
    "convolution_pairs",
    "edge_address",
    "eval_node_kernel",
    "extract_paths",
    "generate_planted",
    "generate_synthetic",
    "gram",
    "histogram_intersection",
    "histogram_vector",
    "knn_eval",
    "normalize_gram",
    "np_edges",
    "np_pair",
    "npe_pair",
    "npo_pair",
    "nps_pair",
    "parse_tu_dataset",
    "path_address",
    "prune_product",
    "refine",
    "validate_graph",
    "write_tu_dataset",
]
