"""Concrete objectives: the 2-D test problem, the log-misfit deblurring term,
and a strongly convex composite with a closed-form minimizer."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParameterError
from .prox import ProxOracle, l1_oracle, norm_cubed_oracle, zero_oracle


@dataclass(frozen=True)
class SmoothPart:
    """Differentiable term ``g`` with an ``lipschitz``-Lipschitz gradient.

    ``domain_box`` is ``(lower, upper)`` when the constant is only valid on
    a box.
    """

    evaluate: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    lipschitz: float
    domain_box: Optional[tuple[np.ndarray, np.ndarray]] = None
    concave: bool = False

    def __post_init__(self):
        if not self.lipschitz > 0:
            raise ParameterError("lipschitz constant must be positive")

    def __call__(self, x) -> float:
        return self.evaluate(x)


@dataclass(frozen=True)
class CompositeObjective:
    """``f + g`` with ``f`` given by a prox oracle and ``g`` smooth."""

    nonsmooth: ProxOracle
    smooth: SmoothPart
    known_minimum: Optional[tuple[np.ndarray, float]] = None

    def value(self, x) -> float:
        return self.nonsmooth.evaluate(x) + self.smooth.evaluate(x)

    __call__ = value

    @property
    def lipschitz(self) -> float:
        return self.smooth.lipschitz


# -- 2-D test problem -----------------------------------------------------------

def _toy_g(p) -> float:
    x, y = p
    return (x * x - y) ** 2 + x * x


def _toy_grad(p) -> np.ndarray:
    x, y = p
    return np.array([4.0 * x ** 3 - 4.0 * x * y + 2.0 * x, 2.0 * y - 2.0 * x * x])


TOY2D_BOX = (np.array([-1.0, -1.0]), np.array([1.0, 1.0]))


def make_toy2d() -> CompositeObjective:
    """``f(x, y) = (x^2 + y^2)^{3/2}``, ``g(x, y) = (x^2 - y)^2 + x^2``.

    The global minimum is 0 at the origin.  ``lipschitz`` is the value 14
    obtained from the case-split Hessian bound on ``[-1, 1]^2`` (see
    :func:`hessian_norm_toy2d`); the exact supremum of the Hessian norm on
    that box is larger, about 18.94, at the corners ``(+-1, -1)``.
    """
    smooth = SmoothPart(evaluate=_toy_g, gradient=_toy_grad,
                        lipschitz=lipschitz_on_box(*TOY2D_BOX),
                        domain_box=TOY2D_BOX)
    return CompositeObjective(norm_cubed_oracle(), smooth,
                              known_minimum=(np.zeros(2), 0.0))


def hessian_norm_toy2d(x: float, y: float) -> float:
    """Case-split Hessian norm: ``8x^2 - 4y + 2`` if ``x^2 >= y`` else ``4x^2 + 2``."""
    if x * x >= y:
        return 8.0 * x * x - 4.0 * y + 2.0
    return 4.0 * x * x + 2.0


def hessian_toy2d(x: float, y: float) -> np.ndarray:
    return np.array([[12.0 * x * x - 4.0 * y + 2.0, -4.0 * x],
                     [-4.0 * x, 2.0]])


def hessian_spectral_norm_toy2d(x: float, y: float) -> float:
    """Exact spectral norm of the Hessian of ``g`` at ``(x, y)``."""
    return float(np.max(np.abs(np.linalg.eigvalsh(hessian_toy2d(x, y)))))


def lipschitz_on_box(lower, upper) -> float:
    """Supremum of :func:`hessian_norm_toy2d` over ``[lower, upper]``.

    The case-split value equals ``max(8x^2 - 4y + 2, 4x^2 + 2)``, so each
    branch is maximized at the largest ``x^2`` and (first branch) the
    smallest ``y`` in the box.
    """
    (xl, yl), (xu, yu) = np.asarray(lower, float), np.asarray(upper, float)
    if xl > xu or yl > yu:
        raise ParameterError("empty box")
    x2 = max(xl * xl, xu * xu)
    return float(max(8.0 * x2 - 4.0 * yl + 2.0, 4.0 * x2 + 2.0))


# -- log misfit -------------------------------------------------------------------

class _Matrix:
    def __init__(self, mat):
        self.mat = np.atleast_2d(np.asarray(mat, dtype=float))
        self.out_size, self.size = self.mat.shape

    def apply(self, x):
        return self.mat @ x

    def adjoint(self, r):
        return self.mat.T @ r


def make_log_misfit(blur, observed) -> SmoothPart:
    """``g(x) = sum log(1 + (A x - b)^2)``, gradient ``A^T (2r / (1 + r^2))``.

    ``blur`` is a linear operator exposing ``apply``/``adjoint`` (such as
    :class:`~padisno.imaging.BlurOperator`), a dense matrix, or ``None`` for
    the identity.  The declared Lipschitz constant is ``2 ||A||^2``, which is
    2 for kernels that are nonnegative and sum to one.
    """
    b = np.asarray(observed, dtype=float).ravel()
    if blur is None:
        op, norm2 = _Matrix(np.eye(b.size)), 1.0
    elif isinstance(blur, np.ndarray):
        op = _Matrix(blur)
        norm2 = float(np.linalg.norm(op.mat, 2)) ** 2
    else:
        op, norm2 = blur, 1.0
        k = getattr(blur, "kernel", None)
        if k is not None and (np.any(k < 0) or abs(k.sum() - 1.0) > 1e-12):
            norm2 = float(np.abs(k).sum()) ** 2
    n_out = getattr(op, "out_size", op.size)
    if n_out != b.size:
        raise ParameterError(
            f"operator produces {n_out} entries, observation has {b.size}")
    n_in = op.size

    def residual(x):
        x = np.asarray(x, dtype=float)
        if x.size != n_in:
            raise ParameterError(f"expected {n_in} entries, got {x.size}")
        return np.asarray(op.apply(x.ravel()), dtype=float).ravel() - b

    def evaluate(x):
        return float(np.sum(np.log1p(residual(x) ** 2)))

    def gradient(x):
        r = residual(x)
        g = np.asarray(op.adjoint(2.0 * r / (1.0 + r * r)), dtype=float)
        return g.reshape(np.shape(x))

    return SmoothPart(evaluate, gradient, lipschitz=2.0 * norm2)


# -- strongly convex composite ----------------------------------------------------

def make_strongly_convex_test(dim: int, mu: float, l1_weight: float = 0.1,
                              center=None, with_l1: bool = True
                              ) -> CompositeObjective:
    """``w ||x||_1 + 1/2 (x - c)^T D (x - c)`` with ``D = diag(mu, 1, ..., 1)``.

    The objective is ``mu``-strongly convex with ``L_g = 1`` (``mu`` when
    ``dim == 1``) and its minimizer is the coordinatewise soft threshold
    ``soft(c_i, w / d_i)``.  A single slow direction makes forward-backward
    with ``s = 1/L_g`` contract the objective gap by exactly ``(1 - mu)^2``
    per step once the support is identified.  The default center keeps the
    slow coordinate active and zeroes every third one.
    """
    if dim < 1:
        raise ParameterError("dim must be >= 1")
    if not mu > 0:
        raise ParameterError("mu must be positive")
    d = np.ones(dim)
    d[0] = mu
    w = l1_weight if with_l1 else 0.0
    if center is None:
        i = np.arange(dim)
        active = (1.0 + i / dim) * np.where(i % 2 == 0, 1.0, -1.0)
        # c = x* + sign(x*) w/d gives x* back under the soft threshold
        center = np.where(i % 3 == 2, 0.5 * w / d, active + np.sign(active) * w / d)
    c = np.broadcast_to(np.asarray(center, dtype=float), (dim,)).copy()

    def g(x):
        r = np.asarray(x, dtype=float) - c
        return 0.5 * float(np.dot(d * r, r))

    def grad(x):
        return d * (np.asarray(x, dtype=float) - c)

    smooth = SmoothPart(g, grad, lipschitz=float(d.max()))
    nonsmooth = l1_oracle(w) if with_l1 else zero_oracle()
    xstar = np.sign(c) * np.maximum(np.abs(c) - w / d, 0.0)
    obj = CompositeObjective(nonsmooth, smooth)
    return CompositeObjective(nonsmooth, smooth,
                              known_minimum=(xstar, obj.value(xstar)))
