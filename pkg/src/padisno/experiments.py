"""Experiment drivers: the 2-D parameter grid and the deblurring runs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagnostics import check_descent, check_h2, summability
from .imaging import (BlurOperator, HaarTransform, add_gaussian_noise,
                      add_salt_pepper, isnr)
from .problems import CompositeObjective, make_log_misfit, make_toy2d
from .prox import wavelet_l0_oracle
from .solver import InertialSchedule, SolverConfig, Trajectory, Variant, max_step_size, run

FIG1_ALPHAS = (-0.9, -0.5, 0.0, 0.5, 0.6, 0.9)
FIG1_BETAS = (-2.0, -1.5, -1.0, -0.75, -0.5, -0.25, 0.0,
              0.25, 0.5, 0.75, 1.0, 1.5, 2.0)
FIG1_START = (0.5, -0.5)
FIG1_TOL = 1e-12
FISTA_CELL = (1.0, 1.0)

TABLE1_PAIRS = ((0.0, 0.0), (0.0, -2.5), (0.0, 2.5),
                (-0.4, -2.5), (-0.4, -0.4), (-0.4, 0.0), (-0.4, 0.4), (-0.4, 2.5),
                (0.4, -2.5), (0.4, -0.4), (0.4, 0.0), (0.4, 0.4), (0.4, 2.5))


def toy2d_step(alpha: float, beta: float) -> float:
    """``s = 7/50 * (1 - |alpha|) / (2|beta| + 1)``, just under the c-PADISNO bound for L = 14."""
    return 0.14 * (1.0 - abs(alpha)) / (2.0 * abs(beta) + 1.0)


def toy2d_cell(alpha: float, beta: float, max_iters: int = 50_000,
               tol_displacement: float = 1e-15) -> Trajectory:
    """c-PADISNO on the 2-D problem with ``alpha n/(n+3.1)``, ``beta n/(n+3.1)``.

    The ``(1, 1)`` cell is the FISTA-like reference run with ``s = 1/14``,
    which lies outside the admissible parameter range and is run unchecked.
    """
    fista = (alpha, beta) == FISTA_CELL
    cfg = SolverConfig(
        step_size=1.0 / 14.0 if fista else toy2d_step(alpha, beta),
        schedule=InertialSchedule.ratio(alpha, beta),
        variant=Variant.C_PADISNO, max_iters=max_iters,
        tol_displacement=tol_displacement, allow_unsafe_step=fista)
    return run(np.array(FIG1_START), cfg, make_toy2d())


@dataclass(frozen=True)
class CellSummary:
    alpha: float
    beta: float
    iters_to_tol: int          # -1 when the tolerance was never reached
    final_error: float
    stayed_in_D: bool
    descent_violations: int
    burn_in_N: int
    descent_constant_A: float
    h2_max_ratio: float
    h2_bound: float
    summable: bool


def summarize_cell(alpha: float, beta: float, traj: Trajectory,
                   tol: float = FIG1_TOL) -> CellSummary:
    obj = make_toy2d()
    xs = traj.xs
    err = np.linalg.norm(xs, axis=1)
    hit = np.flatnonzero(err < tol)
    cert = check_descent(traj, obj)
    h2 = check_h2(traj, obj, burn_in_N=cert.burn_in_N)
    _, summable = summability(traj)
    A = cert.descent_constant_A
    return CellSummary(
        alpha, beta, int(hit[0]) if hit.size else -1, float(err[-1]),
        bool(np.all(np.abs(xs) < 1.0)), len(cert.violations), cert.burn_in_N,
        float("nan") if A is None else float(A), h2.max_ratio, h2.bound_b,
        summable)


def fig1_cells(include_fista: bool = True):
    cells = [(a, b) for a in FIG1_ALPHAS for b in FIG1_BETAS]
    if include_fista:
        cells.append(FISTA_CELL)
    return cells


# -- restoration ----------------------------------------------------------------

RESTORE_LAMBDA = 1e-5
RESTORE_ITERS = 300
RESTORE_LIPSCHITZ = 2.0


@dataclass
class Observation:
    original: np.ndarray
    observed: np.ndarray
    blur: BlurOperator


def make_observation(original, seed: int = 0, salt_pepper: float = 0.3,
                     gaussian_sigma: float = 0.0, blur: bool = True) -> Observation:
    """Blur ``original`` (9x9, sigma 4, periodic) and add noise.

    Salt-and-pepper corruption is applied after blurring; Gaussian noise, if
    any, after that.  Pixels are not clipped.
    """
    x = np.asarray(original, dtype=float)
    op = BlurOperator(x.shape)
    b = op.apply(x) if blur else x.copy()
    if salt_pepper > 0:
        b = add_salt_pepper(b, salt_pepper, seed)
    if gaussian_sigma > 0:
        b = add_gaussian_noise(b, gaussian_sigma, seed + 1)
    if not blur:
        op = BlurOperator(x.shape, kernel=np.ones((1, 1)))
    return Observation(x, b, op)


def restoration_objective(obs: Observation, lam: float = RESTORE_LAMBDA) -> CompositeObjective:
    wavelet = HaarTransform(obs.original.shape, levels=4)
    return CompositeObjective(wavelet_l0_oracle(lam, wavelet),
                              make_log_misfit(obs.blur, obs.observed.ravel()))


def restore(obs: Observation, alpha: float, beta: float, *,
            variant=Variant.PADISNO, iters: int = RESTORE_ITERS,
            lam: float = RESTORE_LAMBDA, step_size: float | None = None,
            allow_unsafe_step: bool = False):
    """Run from the observation with constant inertial coefficients.

    Returns the trajectory and the ISNR of every iterate.
    """
    obj = restoration_objective(obs, lam)
    if step_size is None:
        step_size = 0.999 * max_step_size(variant, False, alpha, beta,
                                          obj.smooth.lipschitz)
    cfg = SolverConfig(step_size=step_size,
                       schedule=InertialSchedule.constant(alpha, beta),
                       variant=variant, max_iters=iters, tol_displacement=0.0,
                       allow_unsafe_step=allow_unsafe_step)
    traj = run(obs.observed.ravel(), cfg, obj)
    shape = obs.original.shape
    curve = np.array([isnr(obs.original, obs.observed, r.x.reshape(shape))
                      for r in traj.records])
    return traj, curve
