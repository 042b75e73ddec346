"""Proximal operators and the oracle contract for non-smooth terms.

``prox(x, s)`` always means a minimizer of ``f(y) + ||y - x||^2 / (2 s)``.
For non-convex ``f`` the minimizer may be set-valued; oracles must return
one of them deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError
from .imaging.haar import HaarTransform


@dataclass(frozen=True)
class ProxOracle:
    """Value and proximal map of a (possibly non-convex) non-smooth term.

    Parameters
    ----------
    evaluate : callable
        ``x -> f(x)``; may return ``inf`` outside the domain.
    prox : callable
        ``(x, s) -> prox_{s f}(x)``.
    convex : bool
        If true, ``prox`` is single-valued and firmly nonexpansive.
    bounded_below : bool
        Non-convex terms must be bounded below so the prox subproblem has a
        minimizer.
    """

    evaluate: Callable[[np.ndarray], float]
    prox: Callable[[np.ndarray, float], np.ndarray]
    convex: bool
    bounded_below: bool = True
    name: str = "f"

    def __post_init__(self):
        if not self.convex and not self.bounded_below:
            raise ParameterError(
                "a non-convex term must be bounded below to have a prox")

    def __call__(self, x) -> float:
        return self.evaluate(x)


def prox_l0_scalar(t, gamma_lambda: float):
    """Hard threshold at ``sqrt(2 * gamma_lambda)``.

    Values exactly at the threshold map to 0 (both 0 and t are minimizers
    there; zero is the sparser choice).
    """
    gl = np.asarray(gamma_lambda, dtype=float)
    if not np.all(gl > 0):
        raise ParameterError("gamma_lambda must be positive")
    thr = np.sqrt(2.0 * gl)
    t = np.asarray(t, dtype=float)
    out = np.where(np.abs(t) > thr, t, 0.0)
    return float(out) if out.ndim == 0 else out


def prox_l0_vector(x, gamma_lambda: float) -> np.ndarray:
    return np.asarray(prox_l0_scalar(np.asarray(x, dtype=float).ravel(),
                                     gamma_lambda)).reshape(np.shape(x))


def prox_wavelet_l0(x, gamma_lambda: float, wavelet: HaarTransform) -> np.ndarray:
    """Hard thresholding in the Haar domain: ``W^* H(W x)``."""
    x = np.asarray(x, dtype=float)
    if x.size != wavelet.size:
        raise ParameterError(
            f"vector of length {x.size} does not match transform on "
            f"{wavelet.shape}")
    coeffs = wavelet.forward(x)
    return wavelet.inverse(prox_l0_vector(coeffs, gamma_lambda)).reshape(x.shape)


def prox_norm_cubed(x, lam: float) -> np.ndarray:
    """Prox of ``lam * ||x||^3`` (closed form; radial shrinkage)."""
    if lam < 0:
        raise ParameterError("lambda must be nonnegative")
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x)
    return (2.0 / (1.0 + np.sqrt(1.0 + 12.0 * lam * r))) * x


def prox_l1(x, gamma_lambda: float) -> np.ndarray:
    """Soft threshold."""
    if gamma_lambda < 0:
        raise ParameterError("gamma_lambda must be nonnegative")
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.maximum(np.abs(x) - gamma_lambda, 0.0)


# -- oracle factories ---------------------------------------------------------

def zero_oracle() -> ProxOracle:
    return ProxOracle(evaluate=lambda x: 0.0,
                      prox=lambda x, s: np.array(x, dtype=float),
                      convex=True, name="zero")


def norm_cubed_oracle(weight: float = 1.0) -> ProxOracle:
    """``f(x) = weight * ||x||^3``."""
    return ProxOracle(
        evaluate=lambda x: weight * float(np.linalg.norm(x)) ** 3,
        prox=lambda x, s: prox_norm_cubed(x, weight * s),
        convex=True, name="norm_cubed")


def l1_oracle(weight: float) -> ProxOracle:
    """``f(x) = weight * ||x||_1``."""
    return ProxOracle(
        evaluate=lambda x: weight * float(np.sum(np.abs(x))),
        prox=lambda x, s: prox_l1(x, weight * s),
        convex=True, name="l1")


def l0_oracle(weight: float) -> ProxOracle:
    """``f(x) = weight * ||x||_0``."""
    return ProxOracle(
        evaluate=lambda x: weight * float(np.count_nonzero(x)),
        prox=lambda x, s: prox_l0_vector(x, weight * s),
        convex=False, name="l0")


def wavelet_l0_oracle(weight: float, wavelet: HaarTransform,
                      atol: float = 1e-10) -> ProxOracle:
    """``f(x) = weight * ||W x||_0`` with ``W`` an orthonormal Haar transform.

    Coefficients with magnitude ``<= atol`` count as zero: a thresholded
    coefficient comes back from the ``W^* -> W`` round trip as rounding noise,
    not as an exact zero.
    """
    return ProxOracle(
        evaluate=lambda x: weight * float(
            np.count_nonzero(np.abs(wavelet.forward(x)) > atol)),
        prox=lambda x, s: prox_wavelet_l0(x, weight * s, wavelet),
        convex=False, name="wavelet_l0")
