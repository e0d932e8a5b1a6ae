"""Uniform fuzzy partitions built from symmetric triangular (hat) functions.

Basis indices in the scalar API (``basis_eval``, ``covering_indices``) are
1-based, matching the notation used in the documentation and file formats.
Array-valued helpers (``hat_weights``, ``basis_matrix``) work with 0-based
node indices, as numpy arrays do.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .errors import PartitionError


@dataclass(frozen=True)
class FuzzyPartition:
    a: float
    b: float
    n: int
    h: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a, b, n = self.a, self.b, self.n
        if not (math.isfinite(a) and math.isfinite(b)):
            raise PartitionError(f"endpoints must be finite, got a={a!r}, b={b!r}")
        if int(n) != n or n < 2:
            raise PartitionError(f"need n >= 2 nodes, got n={n!r}")
        if not b > a:
            raise PartitionError(f"need b > a, got a={a!r}, b={b!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "b", float(b))
        object.__setattr__(self, "h", (self.b - self.a) / (self.n - 1))
        nodes = np.linspace(self.a, self.b, self.n)
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    def node(self, i: int) -> float:
        """Coordinate of node ``i`` (1-based)."""
        self._check_index(i)
        return float(self.nodes[i - 1])

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise PartitionError(f"basis index {i} outside 1..{self.n}")

    def _check_points(self, x):
        x = np.asarray(x, dtype=float)
        bad = ~((x >= self.a) & (x <= self.b))
        if np.any(bad):
            first = x[bad].flat[0]
            raise PartitionError(f"x = {first!r} outside [{self.a!r}, {self.b!r}]")
        return x


def build_uniform_partition(a: float, b: float, n: int) -> FuzzyPartition:
    return FuzzyPartition(a, b, n)


def hat_weights(p: FuzzyPartition, x):
    """Locate each point of ``x`` in the node grid.

    Returns ``(lo, hi, w_lo, w_hi)`` as arrays: 0-based indices of the two
    (possibly equal) basis functions that are nonzero at each point and their
    values there. ``w_lo + w_hi == 1`` up to rounding, and at an exact node
    ``hi == lo`` with ``w_hi == 0``.
    """
    x = p._check_points(x)
    nodes = p.nodes
    k = np.clip(np.floor((x - p.a) / p.h).astype(np.int64), 0, p.n - 2)
    # floor on (x-a)/h can be off by one near nodes; fix against the stored nodes
    k = np.where(x < nodes[k], k - 1, k)
    k = np.where((k < p.n - 2) & (x >= nodes[np.minimum(k + 1, p.n - 1)]), k + 1, k)
    k = np.clip(k, 0, p.n - 2)

    theta = np.clip((x - nodes[k]) / p.h, 0.0, 1.0)
    at_right = x == nodes[k + 1]
    at_left = x == nodes[k]
    lo = np.where(at_right, k + 1, k)
    theta = np.where(at_right | at_left, 0.0, theta)
    hi = np.minimum(lo + 1, p.n - 1)
    return lo, np.where(theta == 0.0, lo, hi), 1.0 - theta, theta


def basis_eval(p: FuzzyPartition, i: int, x: float) -> float:
    """Value of the i-th (1-based) hat function at ``x``."""
    p._check_index(i)
    lo, hi, wlo, whi = hat_weights(p, np.array([x]))
    k = i - 1
    if lo[0] == k:
        return float(wlo[0])
    if hi[0] == k and hi[0] != lo[0]:
        return float(whi[0])
    return 0.0


def basis_values(p: FuzzyPartition, i: int, x) -> np.ndarray:
    """Vectorised ``basis_eval`` over an array of points."""
    p._check_index(i)
    lo, hi, wlo, whi = hat_weights(p, x)
    k = i - 1
    out = np.where(lo == k, wlo, 0.0)
    return np.where((hi == k) & (hi != lo), whi, out)


def covering_indices(p: FuzzyPartition, x: float) -> tuple[int, int]:
    """1-based indices of the basis functions that are nonzero at ``x``.

    Returns ``(i, i + 1)`` between nodes and ``(i, i)`` at node ``x_i``.
    """
    lo, hi, _, _ = hat_weights(p, np.array([x]))
    return int(lo[0]) + 1, int(hi[0]) + 1


def basis_matrix(p: FuzzyPartition, x):
    """Sparse matrix ``M`` with ``M[k, i] = A_i(x_k)`` (CSR, sorted columns)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi, wlo, whi = hat_weights(p, x)
    rows = np.arange(x.size)
    keep = hi != lo
    r = np.concatenate([rows, rows[keep]])
    c = np.concatenate([lo, hi[keep]])
    v = np.concatenate([wlo, whi[keep]])
    m = sparse.csr_matrix((v, (r, c)), shape=(x.size, p.n))
    m.sort_indices()
    return m
