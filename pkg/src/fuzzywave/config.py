"""Experiment configuration in flat ``section.key = value`` text."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .fd_reference import Distribution, NoiseSpec
from .wave_ft_solver import check_stability

REQUIRED = ("domain.a", "domain.b", "domain.T", "domain.c", "grid.n_x", "grid.n_t")
OPTIONAL = {
    "grid.fd_refine": "35",
    "solver.method": "ft",
    "noise.enabled": "false",
    "noise.amp_level": "0.1",
    "noise.phase_level": "0.1",
    "noise.seed": "42",
    "noise.distribution": "gaussian",
    "output.prefix": "out/run",
}


@dataclass(frozen=True)
class ExperimentConfig:
    a: float
    b: float
    T: float
    c: float
    n_x: int
    n_t: int
    fd_refine: int = 35
    method: str = "ft"
    noise: NoiseSpec | None = None
    prefix: str = "out/run"

    @property
    def hx(self):
        return (self.b - self.a) / (self.n_x - 1)

    @property
    def ht(self):
        return self.T / (self.n_t - 1)

    @property
    def r(self):
        return self.c * self.ht / self.hx

    def replace(self, **kw):
        return dataclasses.replace(self, **kw)


def _bool(s):
    v = s.lower()
    if v in ("true", "yes", "on", "1"):
        return True
    if v in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _int(s):
    v = float(s)
    if not v.is_integer():
        raise ValueError(f"not an integer: {s!r}")
    return int(v)


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config. Stability (r <= 1) is *not* checked here;
    see ``check_config_stability``."""
    raw, lines = {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value': {line.strip()!r}")
        key, value = (s.strip() for s in body.split("=", 1))
        if key not in REQUIRED and key not in OPTIONAL:
            raise ConfigError(f"line {lineno}: unknown key: {key}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key: {key}")
        raw[key], lines[key] = value, lineno
    for key in REQUIRED:
        if key not in raw:
            raise ConfigError(f"missing key: {key}")
    vals = {**OPTIONAL, **raw}

    def conv(key, fn):
        try:
            return fn(vals[key])
        except ValueError as exc:
            where = f"line {lines[key]}: " if key in lines else ""
            raise ConfigError(f"{where}bad value for {key}: {exc}") from None

    def check(ok, key, msg):
        if not ok:
            where = f"line {lines[key]}: " if key in lines else ""
            raise ConfigError(f"{where}{key}: {msg}")

    a, b, T, c = (conv(k, float) for k in REQUIRED[:4])
    n_x, n_t, refine = (conv(k, _int) for k in ("grid.n_x", "grid.n_t", "grid.fd_refine"))
    check(b > a, "domain.b", "need domain.b > domain.a")
    check(T > 0, "domain.T", "need domain.T > 0")
    check(c > 0, "domain.c", "need domain.c > 0")
    check(n_x >= 2, "grid.n_x", f"need n >= 2 partition nodes, got {n_x}")
    check(n_t >= 2, "grid.n_t", f"need n >= 2 partition nodes, got {n_t}")
    check(refine >= 1, "grid.fd_refine", f"need fd_refine >= 1, got {refine}")
    method = vals["solver.method"]
    check(method in ("ft", "fd"), "solver.method", f"must be ft or fd, got {method!r}")

    noise = None
    if conv("noise.enabled", _bool):
        dist = vals["noise.distribution"]
        check(dist in Distribution.__members__, "noise.distribution",
              f"must be gaussian or uniform, got {dist!r}")
        seed = conv("noise.seed", _int)
        check(0 <= seed < 2**64, "noise.seed", "must be an unsigned 64-bit integer")
        amp, phase = conv("noise.amp_level", float), conv("noise.phase_level", float)
        check(amp >= 0, "noise.amp_level", "must be >= 0")
        check(phase >= 0, "noise.phase_level", "must be >= 0")
        noise = NoiseSpec(amp, phase, seed, Distribution(dist))
    return ExperimentConfig(a, b, T, c, n_x, n_t, refine, method, noise, vals["output.prefix"])


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def check_config_stability(cfg: ExperimentConfig) -> float:
    return check_stability(cfg.c, cfg.hx, cfg.ht)
