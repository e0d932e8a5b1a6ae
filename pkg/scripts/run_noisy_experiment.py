"""Run the noisy sine experiment from a config and print the error summary.

    python3 scripts/run_noisy_experiment.py [configs/paper_s5.cfg] [--fd-refine 5]
"""
import argparse
import logging

from fuzzywave.config import load_config
from fuzzywave.experiment import run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config", nargs="?", default="configs/paper_s5.cfg")
    ap.add_argument("--fd-refine", type=int, help="override grid.fd_refine")
    ap.add_argument("--out", help="output prefix (default: output.prefix)")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = load_config(args.config)
    if args.fd_refine:
        cfg = cfg.replace(fd_refine=args.fd_refine)
    res = run_experiment(cfg, prefix=args.out)
    noisy, ft = res.reports["fd_noisy"], res.reports["ft"]
    print(f"{'':10s}{'max_abs':>12s}{'rmse':>12s}")
    print(f"{'noisy FD':10s}{noisy.max_abs:12.5f}{noisy.rmse:12.5f}")
    print(f"{'FT':10s}{ft.max_abs:12.5f}{ft.rmse:12.5f}")
    print(f"improvement: max_abs x{noisy.max_abs / ft.max_abs:.3f}, rmse x{noisy.rmse / ft.rmse:.3f}")
    print(f"files written under {res.files['report'].parent}/")


if __name__ == "__main__":
    main()
