"""Orthonormal separable 2-D Haar transform with a fixed number of dyadic levels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError

_SQRT1_2 = np.sqrt(0.5)


def _split_rows(a):
    lo = (a[:, 0::2] + a[:, 1::2]) * _SQRT1_2
    hi = (a[:, 0::2] - a[:, 1::2]) * _SQRT1_2
    return lo, hi


def _merge_rows(lo, hi):
    out = np.empty((lo.shape[0], 2 * lo.shape[1]))
    out[:, 0::2] = (lo + hi) * _SQRT1_2
    out[:, 1::2] = (lo - hi) * _SQRT1_2
    return out


def _analyze_level(a):
    lo, hi = _split_rows(a)
    ll, lh = _split_rows(lo.T)
    hl, hh = _split_rows(hi.T)
    return ll.T, lh.T, hl.T, hh.T


def _synthesize_level(ll, lh, hl, hh):
    lo = _merge_rows(ll.T, lh.T).T
    hi = _merge_rows(hl.T, hh.T).T
    return _merge_rows(lo, hi)


@dataclass(frozen=True)
class HaarTransform:
    """Multilevel orthonormal Haar transform on ``shape`` images.

    Coefficients are packed as the coarsest approximation band followed by
    the three detail bands of each level, coarsest level first, every band
    flattened row-major.  Because the filters are orthonormal the inverse
    transform equals the adjoint.
    """

    shape: tuple[int, int]
    levels: int = 4

    def __post_init__(self):
        rows, cols = self.shape
        if self.levels < 1:
            raise ParameterError("levels must be positive")
        block = 2 ** self.levels
        if rows < block or cols < block or rows % block or cols % block:
            raise ParameterError(
                f"image shape {self.shape} not divisible by {block} "
                f"({self.levels} dyadic levels)")

    @property
    def size(self) -> int:
        return self.shape[0] * self.shape[1]

    def forward(self, x) -> np.ndarray:
        """Analysis: image (or its row-major vectorization) -> coefficients."""
        a = np.asarray(x, dtype=float)
        if a.size != self.size:
            raise ParameterError(
                f"expected {self.size} pixels, got {a.size}")
        a = a.reshape(self.shape)
        details = []
        for _ in range(self.levels):
            a, lh, hl, hh = _analyze_level(a)
            details.append((lh, hl, hh))
        parts = [a.ravel()]
        for bands in reversed(details):
            parts.extend(b.ravel() for b in bands)
        return np.concatenate(parts)

    def inverse(self, coeffs) -> np.ndarray:
        """Synthesis: coefficients -> image of shape ``self.shape``."""
        c = np.asarray(coeffs, dtype=float).ravel()
        if c.size != self.size:
            raise ParameterError(
                f"expected {self.size} coefficients, got {c.size}")
        rows, cols = self.shape
        r, q = rows >> self.levels, cols >> self.levels
        pos = r * q
        a = c[:pos].reshape(r, q)
        for _ in range(self.levels):
            n = r * q
            lh, hl, hh = (c[pos + k * n:pos + (k + 1) * n].reshape(r, q)
                          for k in range(3))
            pos += 3 * n
            a = _synthesize_level(a, lh, hl, hh)
            r, q = 2 * r, 2 * q
        return a

    adjoint = inverse


def haar_analyze(img, levels: int = 4) -> np.ndarray:
    img = np.asarray(img, dtype=float)
    if img.ndim != 2:
        raise ParameterError("expected a 2-D image")
    return HaarTransform(img.shape, levels).forward(img)


def haar_synthesize(coeffs, rows: int, cols: int, levels: int = 4) -> np.ndarray:
    return HaarTransform((rows, cols), levels).inverse(coeffs)
