"""Error metrics, convergence order, slicing and the sine test problem."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .partition import build_uniform_partition
from .transform import SampledField
from .wave_ft_solver import WaveProblem, solve, reconstruct


def exact_solution(x, t):
    """Standing sine wave, the d'Alembert solution
    ``(sin(pi (x - t)) + sin(pi (x + t))) / 2`` for u(x,0) = sin(pi x), u_t(x,0) = 0.

    Evaluated in the equivalent product form, which keeps the zero walls and
    the nodal lines of cos(pi t) free of cancellation error.
    """
    return np.sin(np.pi * x) * np.cos(np.pi * t)


def sine_problem(a=0.0, b=10.0, T=10.0, c=1.0) -> WaveProblem:
    """Homogeneous test problem with sine initial displacement and zero walls."""
    return WaveProblem(a, b, T, c, f=lambda x: np.sin(np.pi * x))


@dataclass(frozen=True)
class ErrorReport:
    max_abs: float
    rmse: float
    l2_rel: float
    n_points: int

    def as_text(self, prefix=""):
        return "".join(
            f"{prefix}{k} = {v!r}\n"
            for k, v in (("max_abs", self.max_abs), ("rmse", self.rmse),
                         ("l2_rel", self.l2_rel), ("n_points", self.n_points))
        )


def _same_grid(a: SampledField, b: SampledField):
    return (a.values.shape == b.values.shape and a.x_range == b.x_range
            and a.t_range == b.t_range)


def compare(a: SampledField, b: SampledField) -> ErrorReport:
    """Metrics of ``a - b``; ``l2_rel`` is relative to ``b``."""
    if not _same_grid(a, b):
        raise ValueError(
            f"grid mismatch: {a.values.shape} on {a.x_range}x{a.t_range} "
            f"vs {b.values.shape} on {b.x_range}x{b.t_range}"
        )
    d = (a.values - b.values).ravel()
    nd = np.linalg.norm(d)
    nb = np.linalg.norm(b.values)
    if nb > 0:
        rel = nd / nb
    else:
        rel = 0.0 if nd == 0 else np.inf
    return ErrorReport(float(np.max(np.abs(d))), float(np.sqrt(np.mean(d * d))),
                       float(rel), int(d.size))


def convergence_order(errors) -> float:
    """Least-squares slope of log(error) against log(h)."""
    errors = list(errors)
    if len(errors) < 3:
        raise ValueError(f"need at least 3 (h, error) pairs, got {len(errors)}")
    h = np.array([e[0] for e in errors], dtype=float)
    err = np.array([e[1] for e in errors], dtype=float)
    if np.any(err <= 0) or np.any(h <= 0):
        raise ValueError("h and errors must be positive")
    if np.any(np.diff(h) >= 0):
        raise ValueError("h must be strictly decreasing")
    slope, _ = np.polyfit(np.log(h), np.log(err), 1)
    return float(slope)


class Axis(str, enum.Enum):
    time = "time"
    space = "space"

    @classmethod
    def parse(cls, s):
        return {"t": cls.time, "x": cls.space}.get(s) or cls(s)


def slice(f: SampledField, axis, at: float):
    """Grid line nearest to ``at``.

    Returns ``(coords, values, snapped)``: the coordinates along the
    remaining axis, the values there and the snapped coordinate.
    """
    axis = Axis.parse(axis) if isinstance(axis, str) else axis
    if f.ndim != 2:
        raise ValueError("slice needs a space-time field")
    grid, other = (f.ts, f.xs) if axis is Axis.time else (f.xs, f.ts)
    if not grid[0] <= at <= grid[-1]:
        raise ValueError(f"{axis.value} = {at!r} outside [{grid[0]!r}, {grid[-1]!r}]")
    k = int(np.argmin(np.abs(grid - at)))
    vals = f.values[:, k] if axis is Axis.time else f.values[k, :]
    return other, vals.copy(), float(grid[k])


def refinement_study(nxs=(51, 101, 201, 401), r=2 / 3, a=0.0, b=10.0, T=10.0, c=1.0,
                     refine=8, probe=None):
    """Solve the sine problem on jointly refined grids at fixed Courant number.

    Returns a list of dicts with ``h`` (space step), ``node_err`` (max over
    all nodes of |u - U|) and, when ``probe=(xs, ts)`` is given,
    ``probe_err`` (max of |u - inverse(U)| over the probe grid).
    """
    prob = sine_problem(a, b, T, c)
    rows = []
    for nx in nxs:
        hx = (b - a) / (nx - 1)
        nt = int(round(T * c / (r * hx))) + 1
        px = build_uniform_partition(a, b, nx)
        pt = build_uniform_partition(0.0, T, nt)
        sol = solve(prob, px, pt, refine=refine)
        X, Tm = np.meshgrid(px.nodes, pt.nodes, indexing="ij")
        row = {"n_x": nx, "n_t": nt, "h": px.h, "r": sol.r,
               "node_err": float(np.max(np.abs(exact_solution(X, Tm) - sol.U)))}
        if probe is not None:
            xs, ts = probe
            rec = reconstruct(sol, (xs, ts))
            Xp, Tp = np.meshgrid(xs, ts, indexing="ij")
            row["probe_err"] = float(np.max(np.abs(exact_solution(Xp, Tp) - rec.values)))
        rows.append(row)
    return rows
