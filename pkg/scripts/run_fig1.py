"""Sweep the (alpha, beta) grid on the 2-D test problem and print per-cell diagnostics.

    python scripts/run_fig1.py [--output-dir fig1] [--jobs 4]

Writes the same CSVs as ``padisno fig1`` and then prints a table with the
iteration count, burn-in index, descent constant and (H2) ratio per cell.
"""

import argparse
from dataclasses import dataclass

from padisno import experiments as ex
from padisno.cli import cmd_fig1


@dataclass
class Fig1Config:
    output_dir: str = "fig1"
    jobs: int = 1


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--output-dir", default=Fig1Config.output_dir)
    p.add_argument("--jobs", type=int, default=Fig1Config.jobs)
    cfg = Fig1Config(**vars(p.parse_args()))
    status = cmd_fig1(cfg.output_dir, jobs=cfg.jobs)
    print(f"{'alpha':>6} {'beta':>6} {'iters':>6} {'N':>4} {'A':>9} {'h2/b':>6}")
    for a, b in ex.fig1_cells():
        s = ex.summarize_cell(a, b, ex.toy2d_cell(a, b))
        print(f"{a:6.2f} {b:6.2f} {s.iters_to_tol:6d} {s.burn_in_N:4d} "
              f"{s.descent_constant_A:9.3g} {s.h2_max_ratio / s.h2_bound:6.3f}")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
