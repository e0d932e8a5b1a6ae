"""Pointwise centred finite differences and seeded initial-condition noise."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NumericalAbort, StabilityError
from .transform import SampledField
from .wave_ft_solver import WaveProblem, sample_1d

GENERATOR = f"numpy.random.PCG64 (numpy {np.__version__})"


class Distribution(str, enum.Enum):
    gaussian = "gaussian"
    uniform = "uniform"


@dataclass(frozen=True)
class NoiseSpec:
    """Amplitude scale ``amp_level`` and phase jitter ``phase_level`` (radians).

    ``uniform`` draws on [-1, 1); ``gaussian`` draws standard normals.
    """

    amp_level: float = 0.1
    phase_level: float = 0.1
    seed: int = 42
    distribution: Distribution = Distribution.gaussian

    def __post_init__(self):
        if not (np.isfinite(self.amp_level) and np.isfinite(self.phase_level)):
            raise ValueError("noise levels must be finite")
        if self.amp_level < 0 or self.phase_level < 0:
            raise ValueError("noise levels must be >= 0")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "distribution", Distribution(self.distribution))


def _draw(rng, dist, n):
    if dist is Distribution.gaussian:
        return rng.standard_normal(n)
    return rng.uniform(-1.0, 1.0, n)


def add_noise(samples, xs, spec: NoiseSpec, *, sine_wavenumber: float | None = None):
    """Perturb samples with amplitude and phase noise; endpoints stay clean.

    With ``sine_wavenumber=k`` the clean data is taken to be ``sin(k x)`` and
    the result is ``(1 + a xi_a) sin(k x + b xi_p)``. Otherwise the phase
    jitter is applied to first order through the local slope:
    ``s (1 + a xi_a) + b xi_p ds/dx``.
    The amplitude stream is drawn first, then the phase stream, one value
    per sample in index order.
    """
    samples = np.asarray(samples, dtype=float)
    xs = np.asarray(xs, dtype=float)
    if samples.shape != xs.shape:
        raise ValueError(f"length mismatch: {samples.shape} samples vs {xs.shape} xs")
    if spec.amp_level == 0 and spec.phase_level == 0:
        return samples.copy()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    xi_a = _draw(rng, spec.distribution, samples.size)
    xi_p = _draw(rng, spec.distribution, samples.size)
    if sine_wavenumber is not None:
        k = sine_wavenumber
        out = (1.0 + spec.amp_level * xi_a) * np.sin(k * xs + spec.phase_level * xi_p)
    else:
        slope = np.gradient(samples, xs) if samples.size > 1 else np.zeros_like(samples)
        out = samples * (1.0 + spec.amp_level * xi_a) + spec.phase_level * xi_p * slope
    out[0] = samples[0]
    out[-1] = samples[-1]
    return out


def _check_stride(n, factor, axis):
    if factor < 1 or (n - 1) % factor:
        raise ValueError(f"{axis} factor {factor} does not divide {n - 1}")


def decimate(f: SampledField, factor_x: int, factor_t: int = 1) -> SampledField:
    _check_stride(f.nx, factor_x, "x")
    if f.ndim == 1:
        return SampledField(f.values[::factor_x].copy(), f.x_range, meta=dict(f.meta))
    _check_stride(f.nt, factor_t, "t")
    return SampledField(
        f.values[::factor_x, ::factor_t].copy(), f.x_range, f.t_range, meta=dict(f.meta)
    )


def fd_march(u0, v0, left, right, r, c, ht, q=None, keep_x=1, keep_t=1):
    """Centred three-level scheme from pointwise (or any) level vectors.

    ``u0``/``v0`` are the initial displacement and velocity on the space
    grid, ``left``/``right`` the boundary values per time level and ``q`` an
    optional callable ``q(j) -> column`` of force samples at level ``j``.
    Only three levels are held in memory; every ``keep_t``-th level and
    ``keep_x``-th point is stored.
    """
    u0 = np.asarray(u0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    nx, nt = u0.size, len(left)
    _check_stride(nx, keep_x, "x")
    _check_stride(nt, keep_t, "t")
    out = np.empty(((nx - 1) // keep_x + 1, (nt - 1) // keep_t + 1))

    r2 = r * r
    c2h2 = c * c * ht * ht
    prev = u0.copy()
    prev[0] = left[0]
    prev[-1] = right[0]
    _finite_or_abort(prev, 0)
    out[:, 0] = prev[::keep_x]
    if nt == 1:
        return out

    cur = np.empty(nx)
    inner = r2 * (prev[:-2] + prev[2:]) + 2.0 * (1.0 - r2) * prev[1:-1]
    if q is not None:
        inner = inner - c2h2 * q(0)[1:-1]
    cur[1:-1] = 0.5 * inner + ht * v0[1:-1]
    cur[0] = left[1]
    cur[-1] = right[1]
    _finite_or_abort(cur, 1)
    if keep_t == 1:
        out[:, 1] = cur[::keep_x]

    nxt = np.empty(nx)
    for j in range(1, nt - 1):
        lap = r2 * (cur[:-2] + cur[2:]) + 2.0 * (1.0 - r2) * cur[1:-1] - prev[1:-1]
        if q is not None:
            lap = lap - c2h2 * q(j)[1:-1]
        nxt[1:-1] = lap
        nxt[0] = left[j + 1]
        nxt[-1] = right[j + 1]
        _finite_or_abort(nxt, j + 1)
        if (j + 1) % keep_t == 0:
            out[:, (j + 1) // keep_t] = nxt[::keep_x]
        prev, cur, nxt = cur, nxt, prev
    return out


def _finite_or_abort(col, j):
    if not np.all(np.isfinite(col)):
        i = int(np.flatnonzero(~np.isfinite(col))[0])
        raise NumericalAbort(i + 1, j + 1)


def fd_solve(prob: WaveProblem, nx: int, nt: int, keep_x: int = 1, keep_t: int = 1) -> SampledField:
    """Solve on an ``nx`` by ``nt`` point grid, returning every
    ``keep_x``-th point of every ``keep_t``-th level."""
    hx = (prob.b - prob.a) / (nx - 1)
    ht = prob.T / (nt - 1)
    r = prob.c * ht / hx
    if r > 1.0:
        raise StabilityError(r)
    f = sample_1d(prob.f, prob.a, prob.b, nx)
    g = sample_1d(prob.g, prob.a, prob.b, nx)
    t1 = sample_1d(prob.T1, 0.0, prob.T, nt)
    t2 = sample_1d(prob.T2, 0.0, prob.T, nt)
    if f.nx != nx or g.nx != nx or t1.nx != nt or t2.nx != nt:
        raise ValueError("sampled data does not match the FD grid")

    force = None
    if prob.q is not None:
        if isinstance(prob.q, SampledField):
            qv = prob.q.values
            force = lambda j: qv[:, j]  # noqa: E731
        else:
            xs = f.xs
            ts = t1.xs
            force = lambda j: np.asarray(prob.q(xs, np.full(nx, ts[j])), dtype=float)  # noqa: E731

    vals = fd_march(f.values, g.values, t1.values, t2.values, r, prob.c, ht, force, keep_x, keep_t)
    return SampledField(vals, (prob.a, prob.b), (0.0, prob.T))
