import math
import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import haar_full_matrix, l0_grid_argmin, radial_prox_norm_cubed
from padisno.errors import ParameterError
from padisno.imaging import HaarTransform
from padisno.prox import (ProxOracle, l0_oracle, l1_oracle, norm_cubed_oracle,
                          prox_l0_scalar, prox_l0_vector, prox_l1,
                          prox_norm_cubed, prox_wavelet_l0, wavelet_l0_oracle,
                          zero_oracle)

finite = st.floats(-50, 50, allow_nan=False)
vec2 = arrays(np.float64, 2, elements=finite)


# -- hard threshold ------------------------------------------------------------

@pytest.mark.parametrize("t, gl", [(2.0, 0.5), (0.5, 0.5), (-1.7, 0.3), (0.9, 0.1)])
def test_l0_scalar_matches_grid_oracle(t, gl):
    assert prox_l0_scalar(t, gl) == pytest.approx(l0_grid_argmin(t, gl)[0], abs=5e-5)


def test_l0_scalar_examples():
    assert prox_l0_scalar(2.0, 0.5) == 2.0
    assert prox_l0_scalar(0.5, 0.5) == 0.0
    assert prox_l0_scalar(0.0, 123.0) == 0.0


def test_l0_tie_goes_to_zero():
    # threshold sqrt(2 * 0.5) = 1 exactly
    assert prox_l0_scalar(1.0, 0.5) == 0.0
    assert prox_l0_scalar(-1.0, 0.5) == 0.0


def test_l0_rejects_nonpositive_parameter():
    with pytest.raises(ParameterError):
        prox_l0_scalar(1.0, 0.0)


def test_l0_vector():
    np.testing.assert_array_equal(prox_l0_vector([2.0, 0.5], 0.5), [2.0, 0.0])
    np.testing.assert_array_equal(prox_l0_vector(np.zeros(5), 3.0), np.zeros(5))
    assert prox_l0_vector([1.3], 0.2)[0] == prox_l0_scalar(1.3, 0.2)


@given(arrays(np.float64, 8, elements=finite), st.floats(1e-3, 10))
def test_l0_idempotent(x, gl):
    once = prox_l0_vector(x, gl)
    np.testing.assert_array_equal(prox_l0_vector(once, gl), once)


# -- norm cubed ---------------------------------------------------------------------

def test_norm_cubed_worked_instance():
    out = prox_norm_cubed([3.0, 4.0], 2.0)
    np.testing.assert_allclose(out, [0.5, 2.0 / 3.0], rtol=0, atol=1e-15)
    np.testing.assert_allclose(radial_prox_norm_cubed([3.0, 4.0], 2.0), out, atol=1e-9)


def test_norm_cubed_origin_and_small_lambda():
    np.testing.assert_array_equal(prox_norm_cubed([0.0, 0.0], 5.0), [0.0, 0.0])
    x = np.array([0.3, -1.2])
    np.testing.assert_allclose(prox_norm_cubed(x, 1e-12), x, rtol=1e-10)


@given(vec2, st.floats(1e-3, 10))
def test_norm_cubed_factor_in_unit_interval(x, lam):
    r = math.hypot(*x)  # np.linalg.norm underflows for subnormal-scale inputs
    out = prox_norm_cubed(x, lam)
    if r == 0:
        assert np.all(out == 0)
    else:
        factor = math.hypot(*out) / r
        assert 0 < factor <= 1
        if lam * r > 1e-12:  # 1 - factor ~ 3*lam*r
            assert factor < 1


# -- soft threshold ------------------------------------------------------------------

def test_l1_examples():
    np.testing.assert_allclose(prox_l1([2.0, -0.3], 0.5), [1.5, 0.0])
    np.testing.assert_array_equal(prox_l1(np.zeros(3), 1.0), np.zeros(3))
    x = np.array([0.2, -3.0])
    np.testing.assert_array_equal(prox_l1(x, 0.0), x)


def test_l1_matches_scalar_grid_search():
    grid = np.linspace(-5, 5, 200001)
    for t, w in [(2.0, 0.5), (-0.3, 0.5), (1.25, 1.0)]:
        vals = w * np.abs(grid) + 0.5 * (grid - t) ** 2
        assert prox_l1([t], w)[0] == pytest.approx(grid[np.argmin(vals)], abs=1e-4)


# -- wavelet l0 ----------------------------------------------------------------------

def test_wavelet_l0_limits(rng):
    W = HaarTransform((16, 16))
    x = rng.normal(size=256)
    np.testing.assert_allclose(prox_wavelet_l0(x, 1e-300, W), x, atol=1e-12)
    np.testing.assert_array_equal(prox_wavelet_l0(x, 1e6, W), np.zeros(256))


@pytest.mark.parametrize("shape, levels", [((4, 4), 2), ((16, 16), 4), ((32, 16), 4)])
def test_wavelet_l0_matches_matrix_reference(rng, shape, levels):
    W = HaarTransform(shape, levels)
    M = haar_full_matrix(shape, levels)
    x = rng.normal(size=shape[0] * shape[1])
    gl = 0.3
    c = M @ x
    ref = M.T @ np.where(np.abs(c) > np.sqrt(2 * gl), c, 0.0)
    np.testing.assert_allclose(prox_wavelet_l0(x, gl, W), ref, atol=1e-12)


def test_wavelet_l0_dimension_mismatch():
    with pytest.raises(ParameterError):
        prox_wavelet_l0(np.zeros(10), 0.1, HaarTransform((16, 16)))


# -- oracle contract -----------------------------------------------------------------

def test_nonconvex_oracle_must_be_bounded_below():
    with pytest.raises(ParameterError):
        ProxOracle(lambda x: 0.0, lambda x, s: x, convex=False, bounded_below=False)


def _oracles():
    W = HaarTransform((16, 16))
    return [
        ("norm_cubed", norm_cubed_oracle(), 2),
        ("l1", l1_oracle(0.7), 6),
        ("l0", l0_oracle(0.4), 6),
        ("zero", zero_oracle(), 3),
        ("wavelet_l0", wavelet_l0_oracle(0.05, W), 256),
    ]


@pytest.mark.parametrize("name, oracle, dim", _oracles(), ids=lambda v: v if isinstance(v, str) else "")
def test_prox_optimality_against_random_probes(rng, name, oracle, dim):
    def model(y, x, s):
        return oracle.evaluate(y) + np.sum((y - x) ** 2) / (2 * s)

    for _ in range(5):
        x = rng.normal(scale=2.0, size=dim)
        s = rng.uniform(0.05, 2.0)
        p = oracle.prox(x, s)
        best = model(p, x, s)
        probes = x + rng.normal(scale=rng.uniform(0.01, 3.0), size=(1000 // 5, dim))
        # include sparse probes so the l0 terms are exercised
        probes[::7] *= rng.random((probes[::7].shape[0], dim)) < 0.5
        for y in probes:
            assert best <= model(y, x, s) + 1e-10


@pytest.mark.parametrize("oracle", [norm_cubed_oracle(), l1_oracle(0.3)])
@given(a=vec2, b=vec2, s=st.floats(0.01, 5))
def test_convex_prox_firmly_nonexpansive(oracle, a, b, s):
    pa, pb = oracle.prox(a, s), oracle.prox(b, s)
    assert np.linalg.norm(pa - pb) <= np.linalg.norm(a - b) + 1e-10
    assert np.dot(pa - pb, pa - pb) <= np.dot(pa - pb, a - b) + 1e-10 * (1 + np.dot(a - b, a - b))
