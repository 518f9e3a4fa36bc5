"""Gram matrix assembly under the global and pairwise schemes.

global
    Feature indexes are built once per level. For every graph pair the
    dataset-wide address list of a level is scanned in ascending order and
    each address present in both graphs contributes its bucket pair.
pairwise
    Every graph pair builds its product graph at the first level and derives
    the product graphs of later levels by pruning. Matched edge pairs are read
    from product edges.

Both schemes evaluate attribute kernels through the same vectorized routine
over identically ordered edge pairs, so their results agree to rounding.
"""
from __future__ import annotations

import json
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field, replace
from itertools import groupby
from pathlib import Path
from typing import Sequence

import numpy as np
from sklearn.model_selection import StratifiedKFold

from .base import edge_pair_values
from .graph import Dataset
from .kernels import KernelConfig, attribute_kernels, bucket_sum
from .nps import graph_path_index, node_only
from .product import build_product, convolution_pairs, prune_product
from .wl import ColorAssignment, build_feature_index, refine

log = logging.getLogger(__name__)

WORKERS_ENV = "NPKERNEL_WORKERS"


@dataclass(eq=False)
class GramMatrix:
    values: np.ndarray
    graph_ids: list[int]
    config: KernelConfig
    timing: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def header(self) -> str:
        c = self.config
        return (
            f"# npkernel gram kernel={c.kernel} h={c.h} alpha={c.alpha!r} "
            f"base={c.base.describe()} scheme={c.scheme}"
        )


def _as_matrix(gm) -> np.ndarray:
    return gm.values if isinstance(gm, GramMatrix) else np.asarray(gm, dtype=np.float64)


# ---------------------------------------------------------------- cell work

class _Context:
    """Read-only state shared by every cell of one Gram computation."""

    def __init__(self, graphs, colors, config):
        self.graphs = graphs
        self.colors = colors
        self.config = config
        self.kernels = attribute_kernels(config, graphs[0]) if graphs else None
        self.addresses: dict[int, list] = {}
        # level -> per graph list of length |addresses|, bucket or None at key k
        self.tensors: dict[int, list] = {}

    def build_indexes(self):
        cfg = self.config
        for level in cfg.levels:
            if cfg.kernel == "nps":
                idx = [graph_path_index(g, c, level, cfg.max_path_len) for g, c in zip(self.graphs, self.colors)]
            else:
                idx = build_feature_index(self.graphs, self.colors, level)
            addresses = sorted(set().union(*(i.keys() for i in idx)))
            key = {a: k for k, a in enumerate(addresses)}
            tensors = []
            for i in idx:
                row = [None] * len(addresses)
                for a, b in i.items():
                    row[key[a]] = b
                tensors.append(row)
            self.addresses[level] = addresses
            self.tensors[level] = tensors
        if cfg.kernel == "nps":
            self.kernels = node_only(cfg, self.graphs[0])

    def cell(self, i: int, j: int) -> float:
        cfg = self.config
        if cfg.kernel == "nps":
            return self._nps_global(i, j)
        if cfg.scheme == "global":
            npe, npo = self._global(i, j)
        else:
            npe, npo = self._pairwise(i, j)
        if cfg.kernel == "npe":
            return npe
        if cfg.kernel == "npo":
            return float(npo)
        return cfg.alpha * npe + (1.0 - cfg.alpha) * npo

    def _global(self, i, j):
        g, g2 = self.graphs[i], self.graphs[j]
        want_npe = self.config.kernel != "npo"
        npe, npo = 0.0, 0
        for level in self.config.levels:
            fi, fj = self.tensors[level][i], self.tensors[level][j]
            for addr, b, b2 in zip(self.addresses[level], fi, fj):
                if b is None or b2 is None:
                    continue
                if want_npe:
                    npe += bucket_sum(self.kernels, g, g2, b, b2, addr.palindromic) / (len(b) * len(b2))
                npo += min(len(b), len(b2))
        return npe, npo

    def _pairwise(self, i, j):
        cfg = self.config
        g, g2 = self.graphs[i], self.graphs[j]
        ci, cj = self.colors[i], self.colors[j]
        levels = list(cfg.levels)
        want_npe = cfg.kernel != "npo"
        npe, npo = 0.0, 0
        pg = build_product(g, g2, ci, cj, levels[0], cfg.edge_budget)
        for level in levels:
            if level > pg.level:
                pg = prune_product(pg, ci.colors(level), cj.colors(level))
            pairs = convolution_pairs(pg)
            if not pairs:
                break
            for addr, group in groupby(pairs, key=lambda p: p.address):
                group = list(group)
                omega = len(group)
                npo += min(len({p.edge_id for p in group}), len({p.edge_id2 for p in group}))
                if want_npe:
                    if self.kernels.trivial:
                        npe += 1.0
                        continue
                    a = np.array([(*p.edge, p.edge_id, *p.edge2, p.edge_id2) for p in group], dtype=np.int64)
                    vals = edge_pair_values(
                        self.kernels, g, g2, a[:, 0], a[:, 1], a[:, 2], a[:, 3], a[:, 4], a[:, 5], addr.palindromic
                    )
                    npe += float(vals.sum()) / omega
        return npe, npo

    def _nps_global(self, i, j):
        g, g2 = self.graphs[i], self.graphs[j]
        total = 0.0
        for level in self.config.levels:
            fi, fj = self.tensors[level][i], self.tensors[level][j]
            for addr, b, b2 in zip(self.addresses[level], fi, fj):
                if b is None or b2 is None:
                    continue
                s = bucket_sum(self.kernels, g, g2, b, b2, addr.palindromic)
                total += s / (len(b) * len(b2)) if self.config.nps_normalize else s
        return total


_CTX: _Context | None = None


def _run_cells(cells):
    return [_CTX.cell(i, j) for i, j in cells]


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    return max(1, int(workers))


def _fill(ctx: _Context, n: int, workers: int) -> np.ndarray:
    global _CTX
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    K = np.zeros((n, n))
    if workers == 1 or len(cells) < 2:
        values = [ctx.cell(i, j) for i, j in cells]
    else:
        size = max(1, len(cells) // (workers * 4))
        chunks = [cells[k : k + size] for k in range(0, len(cells), size)]
        _CTX = ctx
        try:
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                values = [v for part in pool.map(_run_cells, chunks) for v in part]
        finally:
            _CTX = None
    for (i, j), v in zip(cells, values):
        K[i, j] = v
        K[j, i] = v
    return K


def gram(
    dataset: Dataset | Sequence,
    config: KernelConfig,
    workers: int | None = None,
    assignments: Sequence[ColorAssignment] | None = None,
) -> GramMatrix:
    """Kernel matrix of ``dataset`` under ``config``.

    ``assignments`` may pass a precomputed refinement (through ``config.h``)
    shared with other computations.
    """
    graphs = list(getattr(dataset, "graphs", dataset))
    workers = resolve_workers(workers)
    if config.kernel == "nps" and config.scheme == "pairwise":
        log.info("nps has no product-graph form; using the global path index")
    timing = {}
    t0 = time.perf_counter()
    if assignments is None:
        assignments = refine(graphs, config.h)
    t1 = time.perf_counter()
    ctx = _Context(graphs, assignments, config)
    if config.scheme == "global" or config.kernel == "nps":
        ctx.build_indexes()
    t2 = time.perf_counter()
    K = _fill(ctx, len(graphs), workers)
    t3 = time.perf_counter()
    timing.update(refine=t1 - t0, index=t2 - t1, fill=t3 - t2, total=t3 - t0, workers=workers)
    gm = GramMatrix(K, [g.graph_id for g in graphs], config, timing)
    if config.normalize_gram:
        gm = normalize_gram(gm)
    return gm


# ---------------------------------------------------------------- checks

class NotSymmetricError(ValueError):
    pass


@dataclass(frozen=True)
class PSDCheck:
    min_eigenvalue: float
    max_eigenvalue: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -self.tol * max(self.max_eigenvalue, 0.0)


def check_symmetric(K: np.ndarray) -> None:
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise NotSymmetricError(f"Gram matrix must be square, got shape {K.shape}")
    scale = max(1.0, float(np.max(np.abs(K)))) if K.size else 1.0
    bad = np.abs(K - K.T) > 1e-12 * scale
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise NotSymmetricError(f"K[{i},{j}]={K[i, j]!r} differs from K[{j},{i}]={K[j, i]!r}")


def check_psd(gm, tol: float = 1e-8, max_n: int = 5000) -> PSDCheck:
    """Smallest and largest eigenvalue of a symmetric Gram matrix.

    ``passed`` holds when ``lambda_min >= -tol * lambda_max``.
    """
    K = _as_matrix(gm)
    check_symmetric(K)
    if K.shape[0] > max_n:
        raise ValueError(f"{K.shape[0]} graphs exceed the dense eigensolve cap {max_n}")
    eig = np.linalg.eigvalsh(K)
    res = PSDCheck(float(eig[0]), float(eig[-1]), tol)
    if not res.passed:
        log.warning("Gram matrix not PSD: lambda_min=%g, lambda_max=%g", res.min_eigenvalue, res.max_eigenvalue)
    return res


def normalize_gram(gm):
    """Cosine normalization ``K[i,j] / sqrt(K[i,i] K[j,j])`` with an exact unit diagonal."""
    K = _as_matrix(gm)
    d = np.diag(K).copy()
    if np.any(d <= 0):
        raise ValueError(f"cannot normalize: diagonal entry {int(np.argmin(d))} is {d.min()!r}")
    s = np.sqrt(d)
    out = K / np.outer(s, s)
    np.fill_diagonal(out, 1.0)
    if isinstance(gm, GramMatrix):
        return GramMatrix(out, list(gm.graph_ids), replace(gm.config, normalize_gram=True), dict(gm.timing), dict(gm.stats))
    return out


def knn_eval(gm, class_labels, k: int = 3, folds: int = 5, seed: int = 0) -> float:
    """Stratified cross-validated accuracy of a k-nearest-neighbor vote in kernel distance."""
    K = _as_matrix(gm)
    y = np.asarray(class_labels)
    n = len(y)
    if n < folds:
        raise ValueError(f"{n} graphs cannot fill {folds} folds")
    diag = np.diag(K)
    d2 = diag[:, None] + diag[None, :] - 2.0 * K
    correct = 0
    splitter = StratifiedKFold(n_splits=folds, shuffle=True, random_state=seed)
    for train, test in splitter.split(np.zeros(n), y):
        for i in test:
            dist = d2[i, train]
            order = np.lexsort((train, dist))[:k]
            votes: dict = {}
            for rank, t in enumerate(order):
                lab = y[train[t]]
                cnt, first = votes.get(lab, (0, rank))
                votes[lab] = (cnt + 1, first)
            pred = min(votes, key=lambda c: (-votes[c][0], votes[c][1]))
            correct += int(pred == y[i])
    return correct / n


# ---------------------------------------------------------------- output

def format_csv(gm: GramMatrix) -> str:
    rows = [gm.header()]
    for row in gm.values:
        rows.append(",".join(repr(float(x)) for x in row))
    return "\n".join(rows) + "\n"


def write_gram_csv(gm: GramMatrix, path) -> Path:
    path = Path(path)
    path.write_text(format_csv(gm))
    return path


def metadata(gm: GramMatrix) -> dict:
    return {
        "n": gm.n,
        "graph_ids": list(map(int, gm.graph_ids)),
        "config": gm.config.describe(),
        "dtype": "float64",
        "byte_order": "little",
        "layout": "row-major",
    }


def write_gram_binary(gm: GramMatrix, path) -> tuple[Path, Path]:
    """Raw little-endian float64 matrix plus a ``.json`` sidecar describing it."""
    path = Path(path)
    path.write_bytes(np.ascontiguousarray(gm.values, dtype="<f8").tobytes())
    side = path.with_suffix(path.suffix + ".json")
    side.write_text(json.dumps(metadata(gm), indent=2) + "\n")
    return path, side


def read_gram_binary(path) -> np.ndarray:
    path = Path(path)
    meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
    n = meta["n"]
    return np.frombuffer(path.read_bytes(), dtype="<f8").reshape(n, n).copy()


def read_gram_csv(path) -> tuple[str, np.ndarray]:
    lines = Path(path).read_text().splitlines()
    body = [list(map(float, ln.split(","))) for ln in lines[1:] if ln.strip()]
    return lines[0], np.array(body, dtype=np.float64).reshape(len(body), -1)


def write_timing(gm: GramMatrix, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps({"config": gm.config.describe(), "timing": gm.timing}, indent=2) + "\n")
    return path
