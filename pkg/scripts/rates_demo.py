"""Classify the convergence regime of two runs: the strongly convex composite
(expected linear) and the 2-D test problem.

    python scripts/rates_demo.py
"""

import json

import numpy as np

from padisno import experiments as ex
from padisno.diagnostics import fit_rate
from padisno.problems import make_strongly_convex_test
from padisno.solver import InertialSchedule, SolverConfig, Variant, run


def strongly_convex(mu: float = 0.05, iters: int = 200, skip: int = 20):
    obj = make_strongly_convex_test(20, mu)
    cfg = SolverConfig(1.0, InertialSchedule.constant(0, 0), variant=Variant.C_PADISNO,
                       max_iters=iters, tol_displacement=0.0)
    err = run(np.zeros(20), cfg, obj).fg_values - obj.known_minimum[1]
    return fit_rate(err[skip:], start=skip)


def toy(alpha: float = 0.0, beta: float = 0.0, skip: int = 10):
    traj = ex.toy2d_cell(alpha, beta)
    err = traj.fg_values
    # keep the part above the rounding floor
    err = err[skip:np.argmax(err < 1e-30) or len(err)]
    return fit_rate(err, start=skip, floor=0.0)


if __name__ == "__main__":
    for name, rep in [("strongly convex, mu=0.05", strongly_convex()),
                      ("2-D problem, alpha=beta=0", toy())]:
        print(name, json.dumps(rep.to_dict(), sort_keys=True))
