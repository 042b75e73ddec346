"""Runtime checks of the descent certificates along a computed trajectory,
and empirical classification of the convergence rate regime.

The Lyapunov sequence is ``E_n = (f+g)(x_n) + delta_n ||x_n - x_{n-1}||^2``.
Past some index ``N`` it should decrease by at least ``A ||x_{n+1}-x_n||^2``
per step, and the regularized subgradient ``W_n`` should satisfy
``||W_n|| <= b (||x_n - x_{n-1}|| + ||x_{n-1} - x_{n-2}||)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError
from .solver import InertialSchedule, Trajectory, Variant


def delta_n(variant, g_concave: bool, s: float, lipschitz: float,
            beta_n: float, beta_prev: float) -> float:
    """Weight of the squared displacement in the Lyapunov value."""
    if not (s > 0 and lipschitz > 0):
        raise ParameterError("s and lipschitz must be positive")
    base = 1.0 / (4.0 * s) if Variant(variant) is Variant.PADISNO else 1.0 / (2.0 * s)
    shift = abs(beta_n) - abs(beta_prev) - (0.0 if g_concave else 1.0)
    return base + lipschitz / 4.0 * shift


@dataclass
class DescentCertificate:
    delta_seq: np.ndarray
    lyapunov_seq: np.ndarray
    burn_in_N: int
    descent_constant_A: Optional[float]
    violations: list[tuple[int, float]]
    tol: float

    @property
    def violations_after_burn_in(self) -> list[tuple[int, float]]:
        return [v for v in self.violations if v[0] >= self.burn_in_N]

    @property
    def delta_positive_after_burn_in(self) -> bool:
        return bool(np.all(self.delta_seq[self.burn_in_N:] > 0))

    @property
    def holds(self) -> bool:
        """Burn-in leaves a nonempty tail with a positive descent constant."""
        return (self.burn_in_N < len(self.lyapunov_seq) - 1
                and not self.violations_after_burn_in
                and self.delta_positive_after_burn_in
                and (self.descent_constant_A is None or self.descent_constant_A > 0))


def delta_sequence(traj: Trajectory, lipschitz: float) -> np.ndarray:
    """``delta_n`` for every record, with ``beta_{-1} := beta_0``."""
    cfg = traj.config_snapshot
    betas = [cfg.schedule.beta(r.n) for r in traj.records]
    prev = [betas[0]] + betas[:-1]
    return np.array([delta_n(cfg.variant, cfg.g_concave, cfg.step_size,
                             lipschitz, b, bp) for b, bp in zip(betas, prev)])


def check_descent(traj: Trajectory, objective, tol: float = 1e-10) -> DescentCertificate:
    """Lyapunov values, detected burn-in ``N`` and descent constant ``A``.

    ``N`` is the first index from which every step satisfies
    ``E_{n+1} <= E_n + tol`` and ``delta_n > 0``.  Violations are recorded over
    the whole run, so any before ``N`` remain visible.
    """
    if len(traj) < 3:
        raise ParameterError("need at least 3 iterates")
    L = objective.smooth.lipschitz
    deltas = delta_sequence(traj, L)
    disp = traj.displacements
    E = traj.fg_values + deltas * disp ** 2
    rise = np.diff(E)
    violations = [(int(n), float(r)) for n, r in enumerate(rise) if r > tol]

    ok = np.append(rise <= tol, True) & (deltas > 0)
    N = len(E)
    while N > 0 and ok[N - 1]:
        N -= 1

    A = None
    for n in range(N, len(E) - 1):
        d2 = disp[n + 1] ** 2
        if d2 > 0:
            ratio = (E[n] - E[n + 1]) / d2
            A = ratio if A is None else min(A, ratio)
    return DescentCertificate(deltas, E, int(N), A, violations, tol)


@dataclass
class H2Report:
    indices: np.ndarray
    subgradient_norms: np.ndarray
    bound_b: float
    ratios: np.ndarray
    max_ratio: float

    @property
    def holds(self) -> bool:
        return self.max_ratio <= self.bound_b + 1e-9


def check_h2(traj: Trajectory, objective, schedule: Optional[InertialSchedule] = None,
             burn_in_N: Optional[int] = None) -> H2Report:
    """Bound the explicit subgradient of the regularized objective.

    For ``n >= N + 2``::

        W_n = ((y_{n-1} - x_n)/s - grad g(z_{n-1}) + grad g(x_n) - dt_n d_n,
               dt_n d_n)

    with ``d_n = x_n - x_{n-1}`` and ``dt_n = sqrt(2 delta_n)``.  The constant
    is ``b = sqrt(max(4/s^2 + 4L^2 + 4 dt^2, 4 a^2/s^2 + 4 L^2 c^2))`` with the
    suprema ``a`` of ``|alpha_n|``, ``c`` of ``|beta_n|`` and ``dt`` of
    ``dt_n`` over the checked range.
    """
    recs = traj.records
    if any(r.y is None or r.z is None for r in recs):
        raise ParameterError("trajectory records lack y/z iterates")
    cfg = traj.config_snapshot
    schedule = schedule or cfg.schedule
    s, L = cfg.step_size, objective.smooth.lipschitz
    if burn_in_N is None:
        burn_in_N = check_descent(traj, objective).burn_in_N
    deltas = delta_sequence(traj, L)
    grad = objective.smooth.gradient

    idx, norms, ratios, dt_sq = [], [], [], []
    for n in range(max(burn_in_N + 2, 2), len(recs)):
        dt = math.sqrt(max(2.0 * deltas[n], 0.0))
        x, xp = recs[n].x, recs[n - 1].x
        d = x - xp
        first = (recs[n - 1].y - x) / s - grad(recs[n - 1].z) + grad(x) - dt * d
        w = math.sqrt(float(np.dot(first, first)) + dt * dt * float(np.dot(d, d)))
        dt_sq.append(dt * dt)
        denom = recs[n].displacement + recs[n - 1].displacement
        norms.append(w)
        idx.append(n)
        ratios.append(w / denom if denom > 0 else math.nan)

    dmax = max(dt_sq, default=0.0)
    b = math.sqrt(max(4.0 / s ** 2 + 4.0 * L ** 2 + 4.0 * dmax,
                      4.0 * schedule.alpha_sup ** 2 / s ** 2
                      + 4.0 * L ** 2 * schedule.beta_sup ** 2))
    ratios = np.array(ratios)
    finite = ratios[np.isfinite(ratios)]
    return H2Report(np.array(idx, dtype=int), np.array(norms), b, ratios,
                    float(finite.max()) if finite.size else 0.0)


def summability(traj_or_displacements, tol: float = 1e-14, window: int = 10):
    """Partial sums of squared displacements.

    ``converged`` is true when the last ``window`` increments add up to less
    than ``tol``.
    """
    if isinstance(traj_or_displacements, Trajectory):
        disp = traj_or_displacements.displacements
    else:
        disp = np.asarray(traj_or_displacements, dtype=float)
    inc = disp ** 2
    sums = np.cumsum(inc)
    converged = len(inc) > window and float(inc[-window:].sum()) < tol
    return sums, bool(converged)


class Regime(str, enum.Enum):
    FINITE_STEPS = "FiniteSteps"
    LINEAR = "Linear"
    SUBLINEAR = "Sublinear"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RateReport:
    regime: Regime
    fitted_Q: Optional[float] = None
    fitted_theta: Optional[float] = None
    fit_residual: float = 0.0
    linear_residual: float = math.nan
    sublinear_residual: float = math.nan
    loglog_slope: float = math.nan

    def to_dict(self) -> dict:
        return {"regime": self.regime.value, "fitted_Q": self.fitted_Q,
                "fitted_theta": self.fitted_theta,
                "fit_residual": self.fit_residual,
                "linear_residual": self.linear_residual,
                "sublinear_residual": self.sublinear_residual,
                "loglog_slope": self.loglog_slope}


def _line_fit(t, y):
    coef = np.polyfit(t, y, 1)
    resid = y - np.polyval(coef, t)
    return coef[0], float(np.sqrt(np.mean(resid ** 2)))


def fit_rate(errors, start: int = 1, floor: float = 1e-15,
             separation: float = 0.1) -> RateReport:
    """Classify ``errors`` (index ``start, start+1, ...``) into a rate regime.

    Fits ``log e_n`` against ``n`` (geometric decay ``Q^n``) and against
    ``log n`` (power decay ``n^{-1/(2 theta - 1)}``) and keeps the fit with the
    smaller RMS residual.  Residuals within ``separation`` (relative) of each
    other, a non-contracting ``Q`` or an exponent outside ``theta in (1/2, 1)``
    give ``Inconclusive``.  A sequence that drops below ``floor`` and stays
    there is ``FiniteSteps``.
    """
    e = np.asarray(errors, dtype=float)
    if e.ndim != 1 or e.size < 10:
        raise ParameterError("need a 1-D sequence of at least 10 errors")
    if not np.all(np.isfinite(e)) or np.any(e < 0):
        raise ParameterError("errors must be finite and nonnegative")
    if start < 1:
        raise ParameterError("start index must be >= 1")
    small = (e == 0.0) | (e < floor)
    if small.any():
        k = int(np.argmax(small))
        if not small[k:].all():
            raise ParameterError(f"errors vanish at index {k} and then reappear")
        return RateReport(Regime.FINITE_STEPS, fit_residual=0.0)

    n = np.arange(start, start + e.size, dtype=float)
    y = np.log(e)
    lin_slope, r_lin = _line_fit(n, y)
    pow_slope, r_pow = _line_fit(np.log(n), y)
    common = dict(linear_residual=r_lin, sublinear_residual=r_pow,
                  loglog_slope=float(pow_slope))
    if abs(r_lin - r_pow) <= separation * max(r_lin, r_pow):
        return RateReport(Regime.INCONCLUSIVE, fit_residual=min(r_lin, r_pow), **common)
    if r_lin < r_pow:
        Q = math.exp(lin_slope)
        if Q >= 1.0:
            return RateReport(Regime.INCONCLUSIVE, fit_residual=r_lin, **common)
        return RateReport(Regime.LINEAR, fitted_Q=Q, fit_residual=r_lin, **common)
    # slope = -1 / (2 theta - 1)  =>  theta = (1 - 1/slope) / 2, needs slope < -1
    if pow_slope >= -1.0:
        return RateReport(Regime.INCONCLUSIVE, fit_residual=r_pow, **common)
    theta = 0.5 * (1.0 - 1.0 / pow_slope)
    return RateReport(Regime.SUBLINEAR, fitted_theta=theta, fit_residual=r_pow, **common)
