import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from padisno.diagnostics import (Regime, check_descent, check_h2, delta_n, delta_sequence,
                                 fit_rate, summability)
from padisno.errors import ParameterError
from padisno.problems import make_toy2d
from padisno.solver import (InertialSchedule, IterateRecord, SolverConfig, Termination,
                            Trajectory, Variant, max_step_size, run)


def toy_run(s=0.14, a=0.0, b=0.0, variant=Variant.C_PADISNO, ratio=False, **kw):
    sched = InertialSchedule.ratio(a, b) if ratio else InertialSchedule.constant(a, b)
    kw.setdefault("tol_displacement", 1e-15)
    kw.setdefault("max_iters", 50000)
    conf = SolverConfig(s, sched, variant=variant, **kw)
    return run([0.5, -0.5], conf, make_toy2d())


# -- delta_n -------------------------------------------------------------------------

@pytest.mark.parametrize("variant, concave, expected", [
    (Variant.PADISNO, False, 2.0), (Variant.C_PADISNO, False, 4.5), (Variant.PADISNO, True, 2.5)])
def test_delta_examples(variant, concave, expected):
    assert delta_n(variant, concave, 0.1, 2.0, 0.7, 0.7) == pytest.approx(expected, abs=1e-12)


def test_delta_tracks_beta_changes():
    assert delta_n(Variant.PADISNO, False, 0.1, 2.0, 1.0, 0.5) == pytest.approx(2.0 + 0.25)
    with pytest.raises(ParameterError):
        delta_n(Variant.PADISNO, False, 0.0, 2.0, 0, 0)


@pytest.mark.parametrize("variant", list(Variant))
def test_delta_positive_below_step_bound(variant):
    L = 14.0
    for a in np.linspace(-0.45, 0.45, 7) if variant is Variant.PADISNO else np.linspace(-0.9, 0.9, 7):
        for b in [-3.0, -1.0, 0.0, 0.5, 2.0]:
            bound = max_step_size(variant, False, a, b, L)
            for frac in (0.01, 0.5, 0.999):
                assert delta_n(variant, False, frac * bound, L, b, b) > 0
    # with zero inertia the two conditions coincide
    bound = max_step_size(variant, False, 0.0, 0.0, L)
    assert delta_n(variant, False, 0.999 * bound, L, 0, 0) > 0
    assert delta_n(variant, False, 1.001 * bound, L, 0, 0) < 0
    assert delta_n(variant, False, bound, L, 0, 0) == pytest.approx(0.0, abs=1e-12)


def test_delta_sequence_uses_beta_zero_for_first_record():
    traj = toy_run(s=0.03, a=0.2, b=1.0, ratio=True, max_iters=5)
    d = delta_sequence(traj, 14.0)
    assert d[0] == pytest.approx(delta_n(Variant.C_PADISNO, False, 0.03, 14.0, 0.0, 0.0))
    b1 = 1.0 / 4.1
    assert d[1] == pytest.approx(delta_n(Variant.C_PADISNO, False, 0.03, 14.0, b1, 0.0))


# -- descent certificate -------------------------------------------------------------

def _constant_trajectory(n=6):
    x = np.zeros(2)
    conf = SolverConfig(0.14, InertialSchedule.constant(0, 0))
    recs = [IterateRecord(i, x, x, x, 0.0, 0.0) for i in range(n)]
    return Trajectory(recs, conf, Termination.MAX_ITERS, 14.0)


def test_constant_trajectory_certificate():
    obj = make_toy2d()
    cert = check_descent(_constant_trajectory(), obj)
    assert cert.violations == []
    assert cert.descent_constant_A is None
    assert np.all(cert.lyapunov_seq == 0)
    rep = check_h2(_constant_trajectory(), obj)
    assert np.all(rep.subgradient_norms == 0)
    assert np.all(np.isnan(rep.ratios))


def test_short_trajectory_rejected():
    with pytest.raises(ParameterError):
        check_descent(_constant_trajectory(2), make_toy2d())


def test_toy_certificate_holds():
    obj = make_toy2d()
    traj = toy_run()
    cert = check_descent(traj, obj)
    assert cert.holds
    assert cert.violations_after_burn_in == []
    assert cert.descent_constant_A > 0
    assert cert.delta_positive_after_burn_in
    assert summability(traj)[1]


def test_oversized_step_breaks_descent():
    obj = make_toy2d()
    traj = toy_run(s=0.3, allow_unsafe_step=True, max_iters=2000)
    assert np.all(np.abs(traj.xs) <= 1)  # bounded, yet no descent certificate
    cert = check_descent(traj, obj)
    assert cert.violations
    assert not cert.holds


def test_h2_bound_on_toy_runs():
    obj = make_toy2d()
    for a, b in [(0.0, 0.0), (0.5, -1.0), (-0.9, 2.0)]:
        s = 0.14 * (1 - abs(a)) / (2 * abs(b) + 1)
        traj = toy_run(s=s, a=a, b=b, ratio=True)
        rep = check_h2(traj, obj)
        assert rep.holds
        assert rep.indices[0] >= 2


def test_h2_constant_b_formula():
    obj = make_toy2d()
    traj = toy_run(max_iters=30, tol_displacement=0.0)
    rep = check_h2(traj, obj, burn_in_N=0)
    dt2 = 2 * (1 / (2 * 0.14) - 14 / 4)
    assert rep.bound_b == pytest.approx(math.sqrt(4 / 0.14 ** 2 + 4 * 14 ** 2 + 4 * dt2), rel=1e-12)


def test_h2_rejects_records_without_inner_points():
    traj = _constant_trajectory()
    traj.records[3] = IterateRecord(3, np.zeros(2), None, None, 0.0, 0.0)
    with pytest.raises(ParameterError):
        check_h2(traj, make_toy2d(), burn_in_N=0)


# -- summability ---------------------------------------------------------------------

def test_summability_geometric():
    disp = 2.0 ** -np.arange(1, 80)
    sums, ok = summability(disp)
    assert ok
    assert sums[-1] == pytest.approx(1 / 3, rel=1e-12)


def test_summability_constant():
    sums, ok = summability(np.ones(50))
    assert not ok
    assert sums[-1] == 50


# -- rate classifier -----------------------------------------------------------------

def test_fit_rate_geometric():
    rep = fit_rate(0.5 ** np.arange(1, 41))
    assert rep.regime is Regime.LINEAR
    assert rep.fitted_Q == pytest.approx(0.5, abs=1e-6)


def test_fit_rate_power_law():
    n = np.arange(1, 201, dtype=float)
    rep = fit_rate(n ** -2.0)
    assert rep.regime is Regime.SUBLINEAR
    assert rep.fitted_theta == pytest.approx(0.75, abs=1e-3)


def test_fit_rate_finite_steps():
    assert fit_rate([1, 0.1] + [0] * 10).regime is Regime.FINITE_STEPS


def test_fit_rate_slow_power_is_inconclusive():
    n = np.arange(1, 201, dtype=float)
    assert fit_rate(n ** -0.5).regime is Regime.INCONCLUSIVE


@pytest.mark.parametrize("bad", [[1.0] * 5, [1.0, -1.0] + [1.0] * 10,
                                 [1.0, math.nan] + [1.0] * 10, [1, 0, 1] + [0] * 10])
def test_fit_rate_input_errors(bad):
    with pytest.raises(ParameterError):
        fit_rate(bad)


@given(st.floats(1e-6, 1e6), st.floats(0.05, 0.95), st.floats(1.2, 4.0))
def test_fit_rate_scale_invariance(c, q, p):
    n = np.arange(1, 61, dtype=float)
    for e in (q ** n, n ** -p):
        # the absolute FiniteSteps floor is the one scale-dependent rule
        assume(e.min() * min(c, 1.0) > 1e-13)
        a, b = fit_rate(e), fit_rate(c * e)
        assert a.regime is b.regime
        for fa, fb in [(a.fitted_Q, b.fitted_Q), (a.fitted_theta, b.fitted_theta)]:
            assert (fa is None) == (fb is None)
            if fa is not None:
                assert fa == pytest.approx(fb, rel=1e-8)
