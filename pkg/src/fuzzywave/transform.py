"""Forward and inverse F-transforms of sampled fields.

Components are weighted averages ``sum(w f A_i) / sum(w A_i)`` where ``w`` are
composite-trapezoid weights on the field's own sample grid. Numerator and
denominator share abscissae and weights, so constants are reproduced to
rounding. Two-dimensional transforms use the tensor-product weight
``A_i(x) B_j(t)``, which factorises into one sparse product per axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainMismatchError, ResolutionError
from .partition import FuzzyPartition, basis_matrix


@dataclass
class SampledField:
    """Values on a uniform grid that includes both endpoints of each axis.

    ``values`` has shape ``(nx,)`` for a 1D field or ``(nx, nt)`` for a
    space-time field (first index is space).
    """

    values: np.ndarray
    x_range: tuple[float, float]
    t_range: tuple[float, float] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.x_range = (float(self.x_range[0]), float(self.x_range[1]))
        if self.t_range is not None:
            self.t_range = (float(self.t_range[0]), float(self.t_range[1]))
        want = 1 if self.t_range is None else 2
        if self.values.ndim != want:
            raise ValueError(
                f"values must be {want}-D for this domain, got shape {self.values.shape}"
            )
        if any(s < 2 for s in self.values.shape):
            raise ValueError(f"need at least 2 samples per axis, got {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")

    @property
    def ndim(self):
        return self.values.ndim

    @property
    def nx(self):
        return self.values.shape[0]

    @property
    def nt(self):
        return self.values.shape[1] if self.ndim == 2 else 1

    @property
    def xs(self):
        return np.linspace(self.x_range[0], self.x_range[1], self.nx)

    @property
    def ts(self):
        if self.t_range is None:
            return None
        return np.linspace(self.t_range[0], self.t_range[1], self.nt)

    @classmethod
    def from_function(cls, func, x_range, nx, t_range=None, nt=None, **meta):
        xs = np.linspace(x_range[0], x_range[1], nx)
        if t_range is None:
            return cls(np.asarray(func(xs), dtype=float) * np.ones(nx), x_range, meta=meta)
        ts = np.linspace(t_range[0], t_range[1], nt)
        X, T = np.meshgrid(xs, ts, indexing="ij")
        vals = np.asarray(func(X, T), dtype=float) * np.ones((nx, nt))
        return cls(vals, x_range, t_range, meta=meta)


@dataclass
class FTComponents:
    F: np.ndarray
    px: FuzzyPartition
    pt: FuzzyPartition | None = None


def trapezoid_weights(lo: float, hi: float, n: int) -> np.ndarray:
    w = np.full(n, (hi - lo) / (n - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _same_range(r, p: FuzzyPartition):
    scale = max(abs(p.a), abs(p.b), p.b - p.a)
    return all(
        math.isclose(u, v, rel_tol=1e-12, abs_tol=1e-12 * scale)
        for u, v in zip(r, (p.a, p.b))
    )


def check_resolution(xs: np.ndarray, p: FuzzyPartition, axis="x"):
    """Every interior support must hold >= 3 samples, each half-support >= 2."""
    nodes = p.nodes
    left = np.concatenate([[nodes[0]], nodes[:-1]])
    right = np.concatenate([nodes[1:], [nodes[-1]]])
    # widen by a few ulps so samples sitting on a support edge are counted
    tol = 4 * np.finfo(float).eps * max(abs(p.a), abs(p.b), p.h)
    counts = np.searchsorted(xs, right + tol, side="right") - np.searchsorted(
        xs, left - tol, side="left"
    )
    need = np.full(p.n, 3)
    need[0] = need[-1] = 2
    short = np.flatnonzero(counts < need)
    if short.size:
        i = short[0]
        raise ResolutionError(
            f"{axis}-axis basis {i + 1} support holds {counts[i]} samples "
            f"(need {need[i]}); sample the field more finely than h = {p.h!r}"
        )


def _weight_matrix(xs: np.ndarray, p: FuzzyPartition):
    """Sparse ``W[i, k] = w_k A_i(x_k)`` and its row sums."""
    w = trapezoid_weights(xs[0], xs[-1], xs.size)
    W = (basis_matrix(p, xs).multiply(w[:, None])).T.tocsr()
    W.sort_indices()
    return W, np.asarray(W.sum(axis=1)).ravel()


def ftransform_1d(f: SampledField, p: FuzzyPartition) -> FTComponents:
    if f.ndim != 1:
        raise ValueError("ftransform_1d needs a 1-D field")
    if not _same_range(f.x_range, p):
        raise DomainMismatchError(
            f"field domain {f.x_range} does not match partition [{p.a}, {p.b}]"
        )
    xs = f.xs
    check_resolution(xs, p)
    W, den = _weight_matrix(xs, p)
    return FTComponents((W @ f.values) / den, p)


def ftransform_2d(f: SampledField, px: FuzzyPartition, pt: FuzzyPartition) -> FTComponents:
    if f.ndim != 2:
        raise ValueError("ftransform_2d needs a 2-D field")
    if not _same_range(f.x_range, px):
        raise DomainMismatchError(f"x domain {f.x_range} does not match [{px.a}, {px.b}]")
    if not _same_range(f.t_range, pt):
        raise DomainMismatchError(f"t domain {f.t_range} does not match [{pt.a}, {pt.b}]")
    xs, ts = f.xs, f.ts
    check_resolution(xs, px, "x")
    check_resolution(ts, pt, "t")
    Wx, denx = _weight_matrix(xs, px)
    Wt, dent = _weight_matrix(ts, pt)
    num = (Wt @ (Wx @ f.values).T).T
    return FTComponents(num / np.outer(denx, dent), px, pt)


def inverse_ftransform_1d(c: FTComponents, xs) -> np.ndarray:
    """Evaluate ``sum_i A_i(x) F_i`` at each point of ``xs``."""
    M = basis_matrix(c.px, xs)
    return M @ np.asarray(c.F, dtype=float)


def inverse_ftransform_2d(c: FTComponents, grid) -> SampledField:
    """Evaluate the 2-D inverse transform on the tensor grid ``(xs, ts)``.

    Both coordinate sequences must be uniform and include the domain
    endpoints so the result is a valid ``SampledField``.
    """
    xs, ts = (np.asarray(g, dtype=float) for g in grid)
    Mx = basis_matrix(c.px, xs)
    Mt = basis_matrix(c.pt, ts)
    vals = (Mt @ (Mx @ c.F).T).T
    return SampledField(vals, (xs[0], xs[-1]), (ts[0], ts[-1]))


def denoise(f: SampledField, px: FuzzyPartition, pt: FuzzyPartition | None = None) -> SampledField:
    """Forward then inverse transform, resampled on ``f``'s own grid."""
    if f.ndim == 1:
        comps = ftransform_1d(f, px)
        vals = inverse_ftransform_1d(comps, f.xs)
        return SampledField(vals, f.x_range, meta=dict(f.meta))
    if pt is None:
        raise ValueError("2-D denoise needs a time partition")
    comps = ftransform_2d(f, px, pt)
    out = inverse_ftransform_2d(comps, (f.xs, f.ts))
    out.meta = dict(f.meta)
    return out
