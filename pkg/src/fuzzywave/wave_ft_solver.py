"""Explicit time stepping of the 1-D wave equation on F-transform components.

The problem is ``u_xx - u_tt / c**2 = q`` on ``[a, b] x [0, T]`` with
``u(x, 0) = f``, ``u_t(x, 0) = g``, ``u(a, t) = T1`` and ``u(b, t) = T2``.
Components ``U[i, j]`` (space index first) obey the centred recursion

    U[i, j+1] = r^2 (U[i-1, j] + U[i+1, j]) + 2 (1 - r^2) U[i, j]
                - U[i, j-1] - c^2 ht^2 Q[i, j]

with ``r = c ht / hx``. Boundary rows come from the transforms of T1/T2 and
the first column from the transform of f.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import NumericalAbort, StabilityError
from .partition import FuzzyPartition
from .transform import (
    FTComponents,
    SampledField,
    ftransform_1d,
    ftransform_2d,
    inverse_ftransform_2d,
)

log = logging.getLogger(__name__)

Data = Union[Callable, SampledField, None]


@dataclass
class WaveProblem:
    """Wave-equation data. Each of f, g, T1, T2, q is a vectorised callable,
    a ``SampledField`` on the matching axis (or space-time grid for q), or
    ``None`` for identically zero."""

    a: float
    b: float
    T: float
    c: float
    f: Data = None
    g: Data = None
    T1: Data = None
    T2: Data = None
    q: Data = None
    corner_tol: float = 1e-9

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"wave speed must be positive, got c={self.c!r}")
        if not (self.b > self.a and self.T > 0):
            raise ValueError("need b > a and T > 0")
        for side, x, trace in (("left", self.a, self.T1), ("right", self.b, self.T2)):
            fx = _point_value(self.f, x, self.a, self.b)
            t0 = _point_value(trace, 0.0, 0.0, self.T)
            if abs(fx - t0) > self.corner_tol:
                warnings.warn(
                    f"{side} corner mismatch: f({x}) = {fx!r} but boundary(0) = {t0!r}",
                    stacklevel=2,
                )


def _point_value(data, x, lo, hi):
    if data is None:
        return 0.0
    if isinstance(data, SampledField):
        vals = data.values
        return float(vals[0] if np.isclose(x, lo) else vals[-1])
    return float(np.asarray(data(np.array([x], dtype=float)))[0])


def sample_1d(data: Data, lo: float, hi: float, n: int) -> SampledField:
    """Turn callable/None data into a field with ``n`` samples on [lo, hi]."""
    if isinstance(data, SampledField):
        return data
    xs = np.linspace(lo, hi, n)
    if data is None:
        return SampledField(np.zeros(n), (lo, hi))
    return SampledField(np.asarray(data(xs), dtype=float) * np.ones(n), (lo, hi))


@dataclass
class FTWaveSolution:
    U: np.ndarray
    r: float
    px: FuzzyPartition
    pt: FuzzyPartition

    def components(self) -> FTComponents:
        return FTComponents(self.U, self.px, self.pt)


def check_stability(c: float, hx: float, ht: float, *, strict: bool = True) -> float:
    """Courant number ``r = c ht / hx``; raise ``StabilityError`` if r > 1."""
    for name, v in (("c", c), ("hx", hx), ("ht", ht)):
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v!r}")
    r = c * ht / hx
    if r > 1.0 and strict:
        raise StabilityError(r)
    return r


def transform_conditions(prob: WaveProblem, px: FuzzyPartition, pt: FuzzyPartition, refine: int = 8):
    """F-transform the initial, boundary and force data.

    Callables are sampled with ``refine`` sub-intervals per partition cell;
    data already given as ``SampledField`` is used on its own grid.
    Returns ``(F, G, T1, T2, Q)``; ``Q`` is ``None`` when q is identically zero.
    """
    nxs = (px.n - 1) * refine + 1
    nts = (pt.n - 1) * refine + 1
    F = ftransform_1d(sample_1d(prob.f, prob.a, prob.b, nxs), px).F
    G = ftransform_1d(sample_1d(prob.g, prob.a, prob.b, nxs), px).F
    T1 = ftransform_1d(sample_1d(prob.T1, 0.0, prob.T, nts), pt).F
    T2 = ftransform_1d(sample_1d(prob.T2, 0.0, prob.T, nts), pt).F
    Q = None
    if prob.q is not None:
        q = prob.q
        if not isinstance(q, SampledField):
            q = SampledField.from_function(q, (prob.a, prob.b), nxs, (0.0, prob.T), nts)
        Q = ftransform_2d(q, px, pt).F
    return F, G, T1, T2, Q


def step(U_prev, U_curr, Q_col, r, c, ht, T1_next, T2_next, out=None):
    """Advance one time level. ``Q_col`` may be ``None`` for zero force."""
    U_prev = np.asarray(U_prev, dtype=float)
    U_curr = np.asarray(U_curr, dtype=float)
    n = U_curr.shape[0]
    if U_prev.shape != (n,) or (Q_col is not None and np.shape(Q_col) != (n,)):
        raise ValueError("U_prev, U_curr and Q_col must have equal length")
    if out is None:
        out = np.empty(n)
    r2 = r * r
    interior = r2 * (U_curr[:-2] + U_curr[2:]) + 2.0 * (1.0 - r2) * U_curr[1:-1] - U_prev[1:-1]
    if Q_col is not None:
        interior = interior - c * c * ht * ht * np.asarray(Q_col)[1:-1]
    out[1:-1] = interior
    out[0] = T1_next
    out[-1] = T2_next
    return out


def init_first_step(F, G, Q_col0, r, c, ht, T1_1, T2_1, out=None):
    """Second time level, with the ghost level eliminated through
    ``U[i, -1] = U[i, 1] - 2 ht G[i]``."""
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    n = F.shape[0]
    if G.shape != (n,) or (Q_col0 is not None and np.shape(Q_col0) != (n,)):
        raise ValueError("F, G and Q_col0 must have equal length")
    if out is None:
        out = np.empty(n)
    r2 = r * r
    inner = r2 * (F[:-2] + F[2:]) + 2.0 * (1.0 - r2) * F[1:-1]
    if Q_col0 is not None:
        inner = inner - c * c * ht * ht * np.asarray(Q_col0)[1:-1]
    out[1:-1] = 0.5 * inner + ht * G[1:-1]
    out[0] = T1_1
    out[-1] = T2_1
    return out


def _abort_if_bad(col, j):
    if not np.all(np.isfinite(col)):
        i = int(np.flatnonzero(~np.isfinite(col))[0])
        raise NumericalAbort(i + 1, j + 1)


def march(F, G, T1, T2, Q, r, c, ht) -> np.ndarray:
    """Run the recursion from transformed data; returns the ``(n, m)`` matrix."""
    n, m = len(F), len(T1)
    U = np.empty((n, m))
    U[:, 0] = F
    U[0, 0] = T1[0]
    U[-1, 0] = T2[0]
    _abort_if_bad(U[:, 0], 0)
    if m == 1:
        return U
    init_first_step(U[:, 0], G, None if Q is None else Q[:, 0], r, c, ht, T1[1], T2[1], out=U[:, 1])
    _abort_if_bad(U[:, 1], 1)
    for j in range(1, m - 1):
        step(U[:, j - 1], U[:, j], None if Q is None else Q[:, j], r, c, ht,
             T1[j + 1], T2[j + 1], out=U[:, j + 1])
        _abort_if_bad(U[:, j + 1], j + 1)
    return U


def solve(prob: WaveProblem, px: FuzzyPartition, pt: FuzzyPartition, refine: int = 8) -> FTWaveSolution:
    if not (np.isclose(px.a, prob.a) and np.isclose(px.b, prob.b)
            and np.isclose(pt.a, 0.0) and np.isclose(pt.b, prob.T)):
        raise ValueError("partitions do not cover the problem domain")
    r = check_stability(prob.c, px.h, pt.h)
    F, G, T1, T2, Q = transform_conditions(prob, px, pt, refine)
    log.debug("marching %d x %d components, r = %.6g", px.n, pt.n, r)
    U = march(F, G, T1, T2, Q, r, prob.c, pt.h)
    return FTWaveSolution(U, r, px, pt)


def reconstruct(sol: FTWaveSolution, grid) -> SampledField:
    return inverse_ftransform_2d(sol.components(), grid)
