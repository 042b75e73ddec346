"""Inertial forward-backward splitting with distinct, possibly negative,
inertial coefficients for the prox and gradient anchors."""

from .diagnostics import (DescentCertificate, H2Report, RateReport, Regime,
                          check_descent, check_h2, delta_n, fit_rate,
                          summability)
from .errors import (FormatError, NumericalError, OracleError, ParameterError,
                     StepSizeError)
from .problems import (CompositeObjective, SmoothPart, hessian_norm_toy2d,
                       lipschitz_on_box, make_log_misfit,
                       make_strongly_convex_test, make_toy2d)
from .prox import (ProxOracle, prox_l0_scalar, prox_l0_vector, prox_l1,
                   prox_norm_cubed, prox_wavelet_l0)
from .solver import (InertialSchedule, IterateRecord, SolverConfig,
                     Termination, Trajectory, Variant, max_step_size, run,
                     step)

__version__ = "0.1.0"

__all__ = [
    "CompositeObjective", "DescentCertificate", "FormatError", "H2Report",
    "InertialSchedule", "IterateRecord", "NumericalError", "OracleError",
    "ParameterError", "ProxOracle", "RateReport", "Regime", "SmoothPart",
    "SolverConfig", "StepSizeError", "Termination", "Trajectory", "Variant",
    "check_descent", "check_h2", "delta_n", "fit_rate", "hessian_norm_toy2d",
    "lipschitz_on_box", "make_log_misfit", "make_strongly_convex_test",
    "make_toy2d", "max_step_size", "prox_l0_scalar", "prox_l0_vector",
    "prox_l1", "prox_norm_cubed", "prox_wavelet_l0", "run", "step",
    "summability",
]
