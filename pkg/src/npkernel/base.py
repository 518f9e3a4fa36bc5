"""Base kernels on node and edge attribute vectors."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

KINDS = ("linear", "gaussian", "unit")


@dataclass(frozen=True)
class BaseKernelSpec:
    """Attribute kernel: ``linear`` (dot product), ``gaussian`` or ``unit`` (constant 1).

    For ``gaussian`` the kernel is ``exp(-beta * ||x - y||^2)``; ``beta=None``
    means ``1 / d`` and is fixed by :meth:`resolve` once ``d`` is known.
    """

    kind: str = "gaussian"
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown base kernel {self.kind!r}; expected one of {KINDS}")
        if self.beta is not None and not self.beta > 0:
            raise ValueError(f"gaussian beta must be > 0, got {self.beta}")

    def resolve(self, dim: int | None) -> "BaseKernelSpec":
        """Concrete spec for attributes of dimension ``dim`` (``None``: no attributes -> unit)."""
        if dim is None:
            return UNIT
        if self.kind == "gaussian" and self.beta is None:
            return replace(self, beta=1.0 / dim)
        return self

    def describe(self) -> str:
        if self.kind == "gaussian":
            return "gaussian" if self.beta is None else f"gaussian:{self.beta!r}"
        return self.kind


UNIT = BaseKernelSpec("unit")


def eval_node_kernel(spec: BaseKernelSpec, x, y) -> float:
    if spec.kind == "unit":
        return 1.0
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ValueError(f"attribute dimension mismatch: {x.shape[0]} vs {y.shape[0]}")
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.kind == "linear":
            val = float(x @ y)
        else:
            beta = spec.beta if spec.beta is not None else 1.0 / len(x)
            d = x - y
            val = float(np.exp(-beta * (d @ d)))
    if not np.isfinite(val):
        raise FloatingPointError(f"non-finite base kernel value {val}")
    return val


def rowwise(spec: BaseKernelSpec, X: np.ndarray | None, Y: np.ndarray | None) -> np.ndarray | float:
    """Kernel between matched rows ``X[k]`` and ``Y[k]``; a scalar 1.0 for ``unit``."""
    if spec.kind == "unit" or X is None:
        return 1.0
    if X.shape[1] != Y.shape[1]:
        raise ValueError(f"attribute dimension mismatch: {X.shape[1]} vs {Y.shape[1]}")
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.kind == "linear":
            out = np.einsum("ij,ij->i", X, Y)
        else:
            d = X - Y
            out = np.exp(-spec.beta * np.einsum("ij,ij->i", d, d))
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("non-finite base kernel value")
    return out


@dataclass(frozen=True)
class AttributeKernels:
    """Resolved node and edge kernels for a pair of graphs' attribute arrays."""

    node: BaseKernelSpec
    edge: BaseKernelSpec

    @classmethod
    def for_dims(cls, spec: BaseKernelSpec, node_dim, edge_dim) -> "AttributeKernels":
        return cls(spec.resolve(node_dim), spec.resolve(edge_dim))

    @property
    def trivial(self) -> bool:
        return self.node.kind == "unit" and self.edge.kind == "unit"


def edge_pair_values(kernels: AttributeKernels, g, g2, first, second, eids, first2, second2, eids2, palindromic: bool) -> np.ndarray:
    """``kappa_V(u,u') * k(e,e') * kappa_V(v,v')`` for matched arrays of oriented edge pairs.

    When both endpoints share a color the endpoint pairing is ambiguous, so
    both pairings are averaged.
    """
    n = len(first)
    if kernels.trivial:
        return np.ones(n)
    X, X2 = g.node_attributes, g2.node_attributes
    if kernels.node.kind == "unit" or X is None:
        node_part = np.ones(n)
    else:
        straight = rowwise(kernels.node, X[first], X2[first2]) * rowwise(kernels.node, X[second], X2[second2])
        if palindromic:
            crossed = rowwise(kernels.node, X[first], X2[second2]) * rowwise(kernels.node, X[second], X2[first2])
            node_part = 0.5 * (straight + crossed)
        else:
            node_part = straight
    if kernels.edge.kind == "unit" or g.edge_attributes is None:
        return node_part
    return node_part * rowwise(kernels.edge, g.edge_attributes[eids], g2.edge_attributes[eids2])
