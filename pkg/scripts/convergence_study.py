"""Refinement study of the noise-free sine problem at fixed Courant number.

Prints node and probe-grid errors per level and the fitted order.
"""
import argparse

import numpy as np

from fuzzywave.analysis import convergence_order, refinement_study


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, nargs="+", default=[51, 101, 201, 401])
    ap.add_argument("--r", type=float, default=2 / 3)
    ap.add_argument("--probe", type=int, default=2001, help="probe points per axis")
    args = ap.parse_args()

    probe = np.linspace(0, 10, args.probe)
    rows = refinement_study(args.nx, r=args.r, probe=(probe, probe))
    print(f"{'n_x':>5} {'n_t':>5} {'h':>10} {'node err':>12} {'probe err':>12}")
    for row in rows:
        print(f"{row['n_x']:5d} {row['n_t']:5d} {row['h']:10.5f} "
              f"{row['node_err']:12.4e} {row['probe_err']:12.4e}")
    for key in ("node_err", "probe_err"):
        order = convergence_order([(row["h"], row[key]) for row in rows])
        print(f"observed order ({key}): {order:.3f}")


if __name__ == "__main__":
    main()
