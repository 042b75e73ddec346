"""Deterministic synthetic test images (stand-ins for natural photographs)."""

import numpy as np


def synthetic_image(size: int = 64) -> np.ndarray:
    """Gradient background with a checkerboard patch and a bright disk."""
    t = np.linspace(0.0, 1.0, size)
    img = 0.15 + 0.35 * (t[:, None] + t[None, :]) / 2.0
    rr, cc = np.mgrid[0:size, 0:size]
    cell = max(size // 16, 1)
    patch = (rr < size // 2) & (cc < size // 2)
    checker = ((rr // cell + cc // cell) % 2).astype(float)
    img = np.where(patch, 0.2 + 0.6 * checker, img)
    disk = (rr - 0.68 * size) ** 2 + (cc - 0.66 * size) ** 2 < (0.2 * size) ** 2
    img = np.where(disk, 0.9, img)
    return img
