"""Command-line entry point (``fuzzywave``).

Exit codes: 0 success, 2 config or input-value error, 3 stability refusal, 4 numerical
abort, 5 I/O or file-format error.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

import numpy as np

from . import analysis
from .config import load_config, check_config_stability
from .errors import ConfigError, FieldFormatError, NumericalAbort, PartitionError, StabilityError
from .experiment import run_experiment, run_fd, run_ft
from .fd_reference import NoiseSpec
from .fieldio import read_field, write_field, write_slice
from .partition import basis_values, build_uniform_partition, hat_weights
from .transform import SampledField, denoise, ftransform_1d, ftransform_2d

EXIT_CONFIG, EXIT_STABILITY, EXIT_NUMERICAL, EXIT_IO = 2, 3, 4, 5


def _partition_checks(p, n_points=1000, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.uniform(p.a, p.b, n_points)
    lo, hi, wlo, whi = hat_weights(p, x)
    pou = float(np.max(np.abs(wlo + whi - 1.0)))
    sym = shift = 0.0
    if p.n >= 3:
        i = int(rng.integers(2, p.n))  # interior, 1-based
        d = rng.uniform(0, p.h, 200)
        xi = p.node(i)
        sym = float(np.max(np.abs(basis_values(p, i, np.clip(xi - d, p.a, p.b))
                                  - basis_values(p, i, np.clip(xi + d, p.a, p.b)))))
    if p.n >= 4:
        i = int(rng.integers(2, p.n - 1))
        xs = rng.uniform(p.a + p.h, p.b, 200)
        shift = float(np.max(np.abs(basis_values(p, i + 1, xs) - basis_values(p, i, xs - p.h))))
    return {"partition_of_unity": pou, "symmetry": sym, "shift": shift}


def cmd_partition_info(args):
    p = build_uniform_partition(args.a, args.b, args.n)
    print(f"a = {p.a!r}\nb = {p.b!r}\nn = {p.n}\nh = {p.h!r}")
    checks = _partition_checks(p)
    # Mirror and shifted points are themselves rounded, so symmetry and shift
    # can only hold to a few ulps of the largest coordinate, divided by h.
    ulp_bound = 8 * float(np.spacing(max(abs(p.a), abs(p.b)))) / p.h
    tol = {"partition_of_unity": 1e-12, "symmetry": ulp_bound, "shift": ulp_bound}
    ok = True
    for k, v in checks.items():
        good = v < tol[k]
        ok &= good
        print(f"{k} = {v!r} (tol {tol[k]:.3g}: {'ok' if good else 'FAIL'})")
    return 0 if ok else 1


def _partitions_for(f: SampledField, args):
    px = build_uniform_partition(*f.x_range, args.n)
    pt = None
    if f.ndim == 2:
        if args.n_t is None:
            raise ConfigError("2-D field needs --n-t")
        pt = build_uniform_partition(*f.t_range, args.n_t)
    return px, pt


def cmd_transform(args):
    f = read_field(args.input)
    px, pt = _partitions_for(f, args)
    if f.ndim == 1:
        comps = ftransform_1d(f, px)
        out = SampledField(comps.F, (px.a, px.b), meta=dict(f.meta))
    else:
        comps = ftransform_2d(f, px, pt)
        out = SampledField(comps.F, (px.a, px.b), (pt.a, pt.b), meta=dict(f.meta))
    write_field(out, args.output, kind="ft-components")
    return 0


def cmd_denoise(args):
    f = read_field(args.input)
    px, pt = _partitions_for(f, args)
    write_field(denoise(f, px, pt), args.output)
    return 0


def _apply_overrides(cfg, args):
    kw = {}
    for name in ("n_x", "n_t", "fd_refine"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    cfg = cfg.replace(**kw)
    if getattr(args, "seed", None) is not None and cfg.noise is not None:
        cfg = cfg.replace(noise=dataclasses.replace(cfg.noise, seed=args.seed))
    return cfg


def cmd_solve(args):
    cfg = load_config(args.config)
    method = args.method or cfg.method
    if args.noise:
        noise = cfg.noise or NoiseSpec()
        if args.seed is not None:
            noise = dataclasses.replace(noise, seed=args.seed)
    else:
        noise = None
    cfg = _apply_overrides(cfg, args).replace(noise=noise)
    r = check_config_stability(cfg)
    prefix = args.out or cfg.prefix
    if method == "fd":
        path = write_field(run_fd(cfg, noisy=noise is not None), f"{prefix}_fd.txt")
        print(path)
    else:
        sol, rec = run_ft(cfg)
        comps = SampledField(sol.U, (sol.px.a, sol.px.b), (sol.pt.a, sol.pt.b),
                             meta=dict(rec.meta, r=repr(sol.r)))
        print(write_field(comps, f"{prefix}_ft_components.txt", kind="ft-components"))
        print(write_field(rec, f"{prefix}_ft.txt"))
    print(f"r = {r!r}")
    return 0


def cmd_compare(args):
    rep = analysis.compare(read_field(args.a), read_field(args.b))
    sys.stdout.write(rep.as_text())
    return 0


def cmd_slice(args):
    f = read_field(args.field)
    coords, vals, snapped = analysis.slice(f, args.axis, args.at)
    header = {"axis": analysis.Axis.parse(args.axis).value, "at": repr(args.at),
              "snapped": repr(snapped)}
    if args.out:
        write_slice(args.out, coords, vals, header)
    else:
        for k, v in header.items():
            print(f"# {k} = {v}")
        for x, v in zip(coords, vals):
            print("%.17g %.17g" % (x, v))
    return 0


def cmd_convergence(args):
    probe = None
    if args.probe:
        probe = (np.linspace(0.0, 10.0, args.probe), np.linspace(0.0, 10.0, args.probe))
    rows = analysis.refinement_study(args.nx, r=args.r, probe=probe)
    cols = ["n_x", "n_t", "h", "node_err"] + (["probe_err"] if probe else [])
    print("# " + " ".join(cols))
    for row in rows:
        print(" ".join(repr(row[c]) for c in cols))
    order = analysis.convergence_order([(row["h"], row["node_err"]) for row in rows])
    print(f"# order = {order!r}")
    return 0


def cmd_run(args):
    cfg = load_config(args.config)
    if args.no_noise:
        cfg = cfg.replace(noise=None)
    cfg = _apply_overrides(cfg, args)
    res = run_experiment(cfg, prefix=args.out)
    for name, rep in res.reports.items():
        sys.stdout.write(rep.as_text(prefix=f"{name}."))
    for path in res.files.values():
        print(path)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="fuzzywave", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("partition-info", help="print a partition and check its axioms")
    s.add_argument("--a", type=float, default=0.0)
    s.add_argument("--b", type=float, default=10.0)
    s.add_argument("--n", type=int, default=401)
    s.set_defaults(func=cmd_partition_info)

    for name, func, helptext in (("transform", cmd_transform, "field file -> components file"),
                                 ("denoise", cmd_denoise, "forward + inverse transform")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("input")
        s.add_argument("output")
        s.add_argument("--n", type=int, required=True, help="space partition nodes")
        s.add_argument("--n-t", type=int, help="time partition nodes (2-D fields)")
        s.set_defaults(func=func)

    def grid_flags(s):
        s.add_argument("--n-x", type=int)
        s.add_argument("--n-t", type=int)
        s.add_argument("--fd-refine", type=int)
        s.add_argument("--seed", type=int)
        s.add_argument("--out", help="output path prefix")

    s = sub.add_parser("solve", help="run one solver")
    s.add_argument("config")
    s.add_argument("--method", choices=("ft", "fd"))
    s.add_argument("--noise", action="store_true", help="perturb the initial displacement")
    grid_flags(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("compare", help="error report of A against reference B")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("slice", help="extract a time or space grid line")
    s.add_argument("field")
    s.add_argument("--axis", choices=("t", "x", "time", "space"), required=True)
    s.add_argument("--at", type=float, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_slice)

    s = sub.add_parser("convergence", help="refinement study of the sine problem")
    s.add_argument("--nx", type=int, nargs="+", default=[51, 101, 201, 401])
    s.add_argument("--r", type=float, default=2 / 3)
    s.add_argument("--probe", type=int, default=0, help="probe points per axis (0: off)")
    s.set_defaults(func=cmd_convergence)

    s = sub.add_parser("run", help="full noisy-initial-condition experiment")
    s.add_argument("config")
    s.add_argument("--no-noise", action="store_true")
    grid_flags(s)
    s.set_defaults(func=cmd_run)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STABILITY
    except NumericalAbort as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, FieldFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, PartitionError, ValueError) as exc:
        # bad user input: unknown grid size, out-of-range slice, too few samples
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
