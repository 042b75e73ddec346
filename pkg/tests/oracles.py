"""Independent reference computations used only by the tests."""

import numpy as np
from scipy.optimize import minimize_scalar


def l0_grid_argmin(t, gamma_lambda, lo=-2.5, hi=2.5, step=1e-4, chunk=128):
    """Minimize gamma_lambda*|y|_0 + (y - t)^2/2 over a uniform grid (0 included)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    gl = np.broadcast_to(np.asarray(gamma_lambda, dtype=float), t.shape)
    grid = np.round(np.arange(lo, hi + step / 2, step) / step) * step
    zero = int(np.flatnonzero(grid == 0.0)[0])
    out = np.empty_like(t)
    for i in range(0, t.size, chunk):
        tt = t[i:i + chunk, None]
        vals = grid[None, :] - tt
        vals *= vals
        vals *= 0.5
        # every nonzero point pays gamma_lambda; equivalently credit y = 0
        vals[:, zero] -= gl[i:i + chunk]
        out[i:i + chunk] = grid[np.argmin(vals, axis=1)]
    return out


def radial_prox_norm_cubed(v, lam):
    """prox of lam*||x||^3 via 1-D search over the radius along v."""
    v = np.asarray(v, dtype=float)
    R = np.linalg.norm(v)
    if R == 0:
        return np.zeros_like(v)
    phi = lambda r: lam * r ** 3 + 0.5 * (r - R) ** 2
    grid = np.linspace(0.0, R, 2001)
    k = int(np.argmin(phi(grid)))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, grid.size - 1)]
    res = minimize_scalar(phi, bounds=(a, b), method="bounded",
                          options={"xatol": 1e-13})
    return res.x / R * v


def haar_matrix_1d(n):
    """Single-level orthonormal Haar analysis matrix: low-pass rows on top."""
    H = np.zeros((n, n))
    c = 1 / np.sqrt(2)
    for k in range(n // 2):
        H[k, 2 * k] = H[k, 2 * k + 1] = c
        H[n // 2 + k, 2 * k] = c
        H[n // 2 + k, 2 * k + 1] = -c
    return H


def haar_reference(img, levels):
    """Multilevel 2-D Haar by explicit matrices, packed like padisno's transform:
    coarsest approximation, then (row-detail, column-detail, diagonal) bands
    from coarsest to finest, each row-major."""
    a = np.array(img, dtype=float)
    bands = []
    for _ in range(levels):
        r, q = a.shape
        b = haar_matrix_1d(r) @ a @ haar_matrix_1d(q).T
        hr, hq = r // 2, q // 2
        # bottom-left: high-pass over rows, low-pass over columns
        bands.append((b[hr:, :hq], b[:hr, hq:], b[hr:, hq:]))
        a = b[:hr, :hq]
    out = [a.ravel()]
    for lh, hl, hh in reversed(bands):
        out += [lh.ravel(), hl.ravel(), hh.ravel()]
    return np.concatenate(out)


def haar_full_matrix(shape, levels):
    m = shape[0] * shape[1]
    cols = [haar_reference(e.reshape(shape), levels) for e in np.eye(m)]
    return np.array(cols).T


def central_gradient(fun, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e.flat[i] = h
        g.flat[i] = (fun(x + e) - fun(x - e)) / (2 * h)
    return g
