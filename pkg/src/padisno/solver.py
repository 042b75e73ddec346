"""Inertial forward-backward iterations with separate prox and gradient anchors.

Both variants compute, from ``x_{n-1}`` and ``x_n``::

    y_n     = x_n + alpha_n (x_n - x_{n-1})
    z_n     = x_n + beta_n  (x_n - x_{n-1})
    x_{n+1} = prox_{s f}(y_n - s grad g(z_n))

``Variant.PADISNO`` allows a non-convex ``f`` (set-valued prox, smaller
admissible step); ``Variant.C_PADISNO`` requires ``f`` convex and admits
roughly twice the step size.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import NumericalError, OracleError, ParameterError, StepSizeError


class Variant(str, enum.Enum):
    PADISNO = "Padisno"
    C_PADISNO = "CPadisno"


class Termination(str, enum.Enum):
    DISPLACEMENT_TOL = "DisplacementTol"
    OBJECTIVE_TOL = "ObjectiveTol"
    MAX_ITERS = "MaxIters"


def _exact(v: float) -> Fraction:
    # Parameters are usually typed as short decimals (0.4, 2.5); reading them
    # back from repr keeps bounds like 1/60 correctly rounded.
    return Fraction(repr(float(v)))


def max_step_size(variant: Variant, g_concave: bool, alpha_limit: float,
                  beta_limit: float, lipschitz: float) -> float:
    """Strict upper bound on the step size ``s``.

    ==========  ===========================  ==========================
    variant     general ``g``                concave ``g``
    ==========  ===========================  ==========================
    PADISNO     (1-2|a|) / (L (2|b|+1))      (1-2|a|) / (2 L |b|)
    C_PADISNO   2(1-|a|) / (L (2|b|+1))      (1-|a|) / (L |b|)
    ==========  ===========================  ==========================

    The concave bounds are ``inf`` when ``b == 0``.
    """
    variant = Variant(variant)
    if not (lipschitz > 0 and math.isfinite(lipschitz)):
        raise ParameterError(f"lipschitz must be positive and finite, got {lipschitz}")
    a, b, L = abs(_exact(alpha_limit)), abs(_exact(beta_limit)), _exact(lipschitz)
    if variant is Variant.PADISNO:
        if not a < Fraction(1, 2):
            raise ParameterError(f"PADISNO needs |alpha| < 1/2, got {alpha_limit}")
        if g_concave:
            return math.inf if b == 0 else float((1 - 2 * a) / (2 * L * b))
        return float((1 - 2 * a) / (L * (2 * b + 1)))
    if not a < 1:
        raise ParameterError(f"c-PADISNO needs |alpha| < 1, got {alpha_limit}")
    if g_concave:
        return math.inf if b == 0 else float((1 - a) / (L * b))
    return float(2 * (1 - a) / (L * (2 * b + 1)))


@dataclass(frozen=True)
class _Constant:
    value: float

    def __call__(self, n: int) -> float:
        return self.value


@dataclass(frozen=True)
class _Ratio:
    value: float
    shift: float

    def __call__(self, n: int) -> float:
        return self.value * n / (n + self.shift)


@dataclass(frozen=True)
class InertialSchedule:
    """Inertial coefficient sequences ``alpha_n``, ``beta_n`` and their limits.

    ``alpha_sup``/``beta_sup`` must bound ``|alpha_n|``/``|beta_n|`` over all
    ``n``; the subgradient bound in :mod:`padisno.diagnostics` relies on it.
    """

    alpha_fn: Callable[[int], float]
    beta_fn: Callable[[int], float]
    alpha_limit: float
    beta_limit: float
    alpha_sup: float
    beta_sup: float

    @classmethod
    def constant(cls, alpha: float, beta: float) -> "InertialSchedule":
        return cls(_Constant(alpha), _Constant(beta), alpha, beta,
                   abs(alpha), abs(beta))

    @classmethod
    def ratio(cls, alpha: float, beta: float, shift: float = 3.1) -> "InertialSchedule":
        """``alpha_n = alpha n / (n + shift)``, likewise for beta."""
        if not shift > 0:
            raise ParameterError("shift must be positive")
        return cls(_Ratio(alpha, shift), _Ratio(beta, shift),
                   alpha, beta, abs(alpha), abs(beta))

    def alpha(self, n: int) -> float:
        return self.alpha_fn(n)

    def beta(self, n: int) -> float:
        return self.beta_fn(n)

    def validate(self, samples: int = 2000, check_limit_at: int = 10**9,
                 limit_tol: float = 1e-6) -> None:
        """Spot-check the sup bounds and the limits. Raises ParameterError."""
        ns = list(range(samples)) + [10**k for k in range(4, 10)]
        for n in ns:
            a, b = self.alpha_fn(n), self.beta_fn(n)
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ParameterError(f"non-finite coefficient at n={n}")
            if abs(a) > self.alpha_sup + 1e-15 or abs(b) > self.beta_sup + 1e-15:
                raise ParameterError(f"coefficient exceeds declared sup at n={n}")
        if (abs(self.alpha_fn(check_limit_at) - self.alpha_limit) > limit_tol
                or abs(self.beta_fn(check_limit_at) - self.beta_limit) > limit_tol):
            raise ParameterError("schedule does not approach its declared limits")


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of one run.

    ``target_value`` enables the objective stopping rule
    ``|(f+g)(x_n) - target_value| < tol_objective``; without it that rule is
    off.  ``allow_unsafe_step`` skips the step-size gate entirely (needed for
    FISTA-like schedules with ``alpha_n -> 1``).
    """

    step_size: float
    schedule: InertialSchedule
    variant: Variant = Variant.C_PADISNO
    g_concave: bool = False
    max_iters: int = 10_000
    tol_displacement: float = 1e-12
    tol_objective: float = 0.0
    target_value: Optional[float] = None
    allow_unsafe_step: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.step_size > 0:
            raise ParameterError("step size must be positive")
        if self.max_iters < 0:
            raise ParameterError("max_iters must be nonnegative")
        if self.tol_displacement < 0 or self.tol_objective < 0:
            raise ParameterError("tolerances must be nonnegative")

    def step_bound(self, lipschitz: float) -> float:
        return max_step_size(self.variant, self.g_concave,
                             self.schedule.alpha_limit,
                             self.schedule.beta_limit, lipschitz)

    def validate(self, lipschitz: float) -> None:
        """Enforce ``step_size < max_step_size(...)`` unless overridden."""
        if self.allow_unsafe_step:
            return
        bound = self.step_bound(lipschitz)
        if not self.step_size < bound:
            raise StepSizeError(
                f"step size {self.step_size!r} is not below the admissible "
                f"bound {bound!r} for {self.variant.value} "
                f"(alpha={self.schedule.alpha_limit}, "
                f"beta={self.schedule.beta_limit}, L={lipschitz})")


@dataclass(frozen=True)
class IterateRecord:
    n: int
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    fg_value: float
    displacement: float


@dataclass
class Trajectory:
    records: list[IterateRecord]
    config_snapshot: SolverConfig
    termination: Termination
    lipschitz: float = field(default=math.nan)

    def __len__(self):
        return len(self.records)

    @property
    def xs(self) -> np.ndarray:
        return np.array([r.x for r in self.records])

    @property
    def fg_values(self) -> np.ndarray:
        return np.array([r.fg_value for r in self.records])

    @property
    def displacements(self) -> np.ndarray:
        return np.array([r.displacement for r in self.records])

    @property
    def final(self) -> IterateRecord:
        return self.records[-1]


def _check_finite(v, what: str, n: int):
    if not np.all(np.isfinite(v)):
        raise NumericalError(f"non-finite {what} at iteration {n}")


def step(prev, curr, n: int, config: SolverConfig, objective):
    """One iteration: returns ``(y_n, z_n, x_{n+1})``."""
    d = curr - prev
    y = curr + config.schedule.alpha(n) * d
    z = curr + config.schedule.beta(n) * d
    s = config.step_size
    grad = np.asarray(objective.smooth.gradient(z), dtype=float)
    _check_finite(grad, "gradient", n)
    try:
        nxt = objective.nonsmooth.prox(y - s * grad, s)
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        raise OracleError(f"prox oracle failed at iteration {n}: {exc}") from exc
    if nxt is None:
        raise OracleError(f"prox oracle returned no point at iteration {n}")
    nxt = np.asarray(nxt, dtype=float)
    _check_finite(nxt, "iterate", n + 1)
    return y, z, nxt


def run(x0, config: SolverConfig, objective) -> Trajectory:
    """Iterate from ``x_{-1} = x_0`` until a stopping rule fires.

    Rules, checked after each new iterate ``x_n`` (``n >= 1``): displacement
    ``||x_n - x_{n-1}|| < tol_displacement``; objective gap below
    ``tol_objective`` when a target value is configured; ``n == max_iters``.
    """
    config.validate(objective.smooth.lipschitz)
    x = np.array(x0, dtype=float)
    _check_finite(x, "starting point", 0)
    prev = x
    records: list[IterateRecord] = []
    target = config.target_value
    n = 0
    disp = 0.0
    while True:
        fg = float(objective.value(x))
        if n >= 1 and disp < config.tol_displacement:
            termination = Termination.DISPLACEMENT_TOL
        elif target is not None and abs(fg - target) < config.tol_objective:
            termination = Termination.OBJECTIVE_TOL
        elif n >= config.max_iters:
            termination = Termination.MAX_ITERS
        else:
            termination = None
        if termination is not None:
            d = x - prev
            records.append(IterateRecord(
                n, x, x + config.schedule.alpha(n) * d,
                x + config.schedule.beta(n) * d, fg, disp))
            break
        y, z, nxt = step(prev, x, n, config, objective)
        records.append(IterateRecord(n, x, y, z, fg, disp))
        prev, x = x, nxt
        disp = float(np.linalg.norm(x - prev))
        n += 1
    return Trajectory(records, config, termination,
                      lipschitz=objective.smooth.lipschitz)

