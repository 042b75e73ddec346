"""Gaussian blur with periodic boundary, plus noise models and ISNR."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from ..errors import ParameterError


def gaussian_kernel(size: int = 9, sigma: float = 4.0) -> np.ndarray:
    """Sampled isotropic Gaussian on a centered ``size x size`` grid, summing to 1."""
    if size < 1 or size % 2 == 0:
        raise ParameterError(f"kernel size must be odd and positive, got {size}")
    if not sigma > 0:
        raise ParameterError("sigma must be positive")
    half = size // 2
    t = np.arange(-half, half + 1, dtype=float)
    k = np.exp(-(t[:, None] ** 2 + t[None, :] ** 2) / (2.0 * sigma ** 2))
    return k / k.sum()


@dataclass(frozen=True)
class BlurOperator:
    """Periodic 2-D convolution ``A`` acting on images of a fixed shape.

    For a nonnegative kernel summing to one, ``||A||_2 <= 1``.
    """

    shape: tuple[int, int]
    kernel: np.ndarray = field(default_factory=gaussian_kernel)

    def __post_init__(self):
        k = np.asarray(self.kernel, dtype=float)
        if k.ndim != 2 or k.shape[0] % 2 == 0 or k.shape[1] % 2 == 0:
            raise ParameterError("kernel must be 2-D with odd sides")
        object.__setattr__(self, "kernel", k)

    @property
    def size(self) -> int:
        return self.shape[0] * self.shape[1]

    def _as_image(self, x):
        a = np.asarray(x, dtype=float)
        if a.size != self.size:
            raise ParameterError(
                f"operator acts on {self.shape} images, got {a.shape}")
        return a.reshape(self.shape)

    def apply(self, x) -> np.ndarray:
        a = np.asarray(x)
        out = ndimage.convolve(self._as_image(x), self.kernel, mode="wrap")
        return out.reshape(a.shape)

    def adjoint(self, x) -> np.ndarray:
        a = np.asarray(x)
        out = ndimage.correlate(self._as_image(x), self.kernel, mode="wrap")
        return out.reshape(a.shape)

    __call__ = apply


def blur_apply(op: BlurOperator, img) -> np.ndarray:
    return op.apply(img)


def blur_adjoint(op: BlurOperator, img) -> np.ndarray:
    return op.adjoint(img)


def add_gaussian_noise(img, sigma: float, seed: int) -> np.ndarray:
    """Add i.i.d. N(0, sigma^2) noise. No clipping."""
    if sigma < 0:
        raise ParameterError("sigma must be nonnegative")
    img = np.asarray(img, dtype=float)
    if sigma == 0:
        return img.copy()
    rng = np.random.default_rng(seed)
    return img + sigma * rng.standard_normal(img.shape)


def add_salt_pepper(img, density: float, seed: int) -> np.ndarray:
    """Set each pixel to 0 or 1 (equal odds) with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ParameterError(f"density must lie in [0, 1], got {density}")
    img = np.asarray(img, dtype=float)
    rng = np.random.default_rng(seed)
    hit = rng.random(img.shape) < density
    salt = rng.random(img.shape) < 0.5
    out = img.copy()
    out[hit] = salt[hit].astype(float)
    return out


def isnr(original, observed, estimate) -> float:
    """Improvement in SNR (dB) of ``estimate`` over ``observed``.

    Returns ``inf`` when the estimate is exact.  Raises ParameterError when
    the observation already equals the original, since the ratio is then
    meaningless.
    """
    x = np.asarray(original, dtype=float)
    b = np.asarray(observed, dtype=float)
    xn = np.asarray(estimate, dtype=float)
    if not (x.shape == b.shape == xn.shape):
        raise ParameterError("images must share a shape")
    num = float(np.sum((x - b) ** 2))
    den = float(np.sum((x - xn) ** 2))
    if num == 0.0:
        raise ParameterError("observed equals original: ISNR undefined")
    if den == 0.0:
        return math.inf
    return 10.0 * math.log10(num / den)
