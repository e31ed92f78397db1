"""Discrete PID behavior: textbook responses, linearity, anti-windup."""

import numpy as np
import pytest

from suspsim.control import (
    PidBank,
    PidGains,
    PidState,
    make_fc_controller,
    make_qc_controller,
    pid_step,
)


def run_sequence(gains, errors, dt):
    state = PidState()
    out = []
    for e in errors:
        u, state = pid_step(gains, state, float(e), dt)
        out.append(u)
    return np.array(out)


class TestPidStep:
    def test_pure_proportional(self):
        u, _ = pid_step(PidGains(1, 0, 0), PidState(), 0.5, 1e-3)
        assert u == pytest.approx(0.5)

    def test_integral_of_constant(self):
        dt = 1e-4
        n = int(round(2.0 / dt))
        u = run_sequence(PidGains(0, 1, 0), np.ones(n), dt)
        assert u[-1] == pytest.approx(2.0, rel=1e-3)

    def test_derivative_of_ramp(self):
        dt = 1e-3
        t = np.arange(100) * dt
        u = run_sequence(PidGains(0, 0, 1), 3.0 * t, dt)
        # first step has no history, every later step sees slope 3
        np.testing.assert_allclose(u[1:], 3.0, atol=1e-9)

    def test_integral_of_sine_over_full_period(self):
        dt = 1e-3
        t = np.arange(0.0, 2 * np.pi + dt, dt)
        u = run_sequence(PidGains(0, 1, 0), np.sin(t), dt)
        assert abs(u[-1]) < 1e-4

    def test_zero_error_gives_zero_force(self):
        u = run_sequence(PidGains(10, 20, 30), np.zeros(50), 1e-3)
        assert np.all(u == 0.0)

    def test_linearity_in_error(self, rng):
        gains = PidGains(3.0, 7.0, 0.5)
        e = rng.standard_normal(200)
        u1 = run_sequence(gains, e, 1e-3)
        u2 = run_sequence(gains, 2.0 * e, 1e-3)
        np.testing.assert_allclose(u2, 2.0 * u1, rtol=1e-12, atol=1e-15)

    def test_rejects_bad_dt_and_error(self):
        with pytest.raises(ValueError):
            pid_step(PidGains(1, 0, 0), PidState(), 0.0, 0.0)
        with pytest.raises(ValueError):
            pid_step(PidGains(1, 0, 0), PidState(), float("nan"), 1e-3)

    def test_anti_windup_clamps_integral(self):
        gains = PidGains(0, 1, 0, integral_limit=0.5)
        u = run_sequence(gains, np.ones(5000), 1e-3)
        assert u[-1] == pytest.approx(0.5)
        assert np.max(u) <= 0.5 + 1e-15


class TestGainValidation:
    def test_negative_gain_rejected(self):
        with pytest.raises(ValueError):
            PidGains(-1.0, 0.0, 0.0)

    def test_nonfinite_gain_rejected(self):
        with pytest.raises(ValueError):
            PidGains(float("inf"), 0.0, 0.0)

    def test_published_quarter_car_gains_accepted(self):
        bank = make_qc_controller(PidGains(227.13, 1.20, 5878.56))
        assert bank.n_channels == 1

    def test_bad_integral_limit_rejected(self):
        with pytest.raises(ValueError):
            PidGains(1.0, 1.0, 1.0, integral_limit=0.0)


class TestPidBank:
    def test_four_corner_controller(self):
        gains = [PidGains(28001, 7261, 3587)] * 4
        bank = make_fc_controller(gains)
        assert bank.n_channels == 4
        forces = bank.step([0.01, 0.0, 0.0, 0.0], 1e-3)
        assert forces[0] != 0.0
        np.testing.assert_array_equal(forces[1:], 0.0)

    def test_wrong_channel_count_rejected(self):
        with pytest.raises(ValueError):
            make_fc_controller([PidGains(1, 1, 1)] * 3)
        bank = make_qc_controller(PidGains(1, 1, 1))
        with pytest.raises(ValueError):
            bank.step([0.1, 0.2], 1e-3)

    def test_reset_clears_history(self):
        bank = make_qc_controller(PidGains(0, 1, 0))
        first = bank.step([1.0], 1e-3)[0]
        bank.step([1.0], 1e-3)
        bank.reset()
        again = bank.step([1.0], 1e-3)[0]
        assert again == pytest.approx(first)

    def test_gain_arrays_layout(self):
        bank = make_fc_controller([PidGains(1, 2, 3), PidGains(4, 5, 6),
                                   PidGains(7, 8, 9), PidGains(10, 11, 12)])
        kp, ki, kd, ilim = bank.gain_arrays()
        np.testing.assert_array_equal(kp, [1, 4, 7, 10])
        np.testing.assert_array_equal(kd, [3, 6, 9, 12])
        assert np.all(np.isinf(ilim))
