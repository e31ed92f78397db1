"""Ride frequency formulas, RMS/jerk helpers and settling time."""

import math

import numpy as np
import pytest

from suspsim.metrics import (
    jerk_series,
    ride_frequencies,
    rms_abs,
    settling_time,
    trajectory_report,
)
from suspsim.road import Obstacle, RoadEvent, RoadScenario


class TestRideFrequencies:
    def test_stock_quarter_car_values(self):
        rf = ride_frequencies(ks=35000.0, kt=190000.0, cs=1000.0, ms=375.0)
        assert rf.ride_rate == pytest.approx(29555.56, abs=0.01)
        assert rf.natural_freq == pytest.approx(1.4129, abs=1e-3)
        assert rf.damping_ratio == pytest.approx(0.1380, abs=1e-4)
        assert rf.damped_freq == pytest.approx(1.3994, abs=1e-3)

    def test_stiff_tire_limit(self):
        rf = ride_frequencies(ks=35000.0, kt=1e12, cs=1000.0, ms=375.0)
        assert rf.ride_rate == pytest.approx(35000.0, rel=1e-6)

    def test_zero_damping(self):
        rf = ride_frequencies(ks=35000.0, kt=190000.0, cs=0.0, ms=375.0)
        assert rf.damping_ratio == 0.0
        assert rf.damped_freq == pytest.approx(rf.natural_freq)

    def test_mass_scaling(self):
        base = ride_frequencies(35000.0, 190000.0, 1000.0, 375.0)
        heavy = ride_frequencies(35000.0, 190000.0, 1000.0, 4 * 375.0)
        assert heavy.natural_freq == pytest.approx(base.natural_freq / 2.0)

    def test_overdamped_has_no_damped_freq(self):
        rf = ride_frequencies(ks=1000.0, kt=190000.0, cs=1e6, ms=375.0)
        assert rf.damped_freq is None


class TestRmsAbs:
    def test_constant(self):
        assert rms_abs(np.full(100, 2.0)) == pytest.approx(2.0)

    def test_zeros(self):
        assert rms_abs(np.zeros(10)) == 0.0

    def test_sine_over_whole_periods(self):
        dt = 1e-3
        t = np.arange(0.0, 2 * np.pi, dt)
        assert rms_abs(np.sin(t), dt) == pytest.approx(1 / math.sqrt(2), abs=1e-4)

    def test_scaling_homogeneity(self, rng):
        x = rng.standard_normal(500)
        assert rms_abs(-3.0 * x) == pytest.approx(3.0 * rms_abs(x), rel=1e-12)


class TestJerkSeries:
    def test_constant_accel_gives_zero(self):
        assert np.all(jerk_series(np.full(50, 9.81), 1e-3) == 0.0)

    def test_linear_ramp(self):
        t = np.arange(0.0, 1.0, 1e-3)
        j = jerk_series(18.0 * t, 1e-3)
        np.testing.assert_allclose(j, 18.0, rtol=1e-9)

    def test_sine_derivative(self):
        dt = 1e-3
        t = np.arange(0.0, 6.0, dt)
        j = jerk_series(np.sin(t), dt)
        np.testing.assert_allclose(j[1:-1], np.cos(t)[1:-1], atol=1e-4)


def bump_scenario(last_center=2.0, duration=10.0):
    ev = RoadEvent(Obstacle("cosine_bump", 0.1, 5.0), {"single": last_center})
    return RoadScenario(10.0, (ev,), duration=duration)


class TestSettlingTime:
    def test_zero_series(self):
        t = np.linspace(0, 10, 1001)
        assert settling_time(np.zeros_like(t), t, bump_scenario()) == 0.0

    def test_exponential_decay_oracle(self):
        t = np.linspace(0, 30, 30001)
        t0 = 2.0
        series = np.where(t >= t0, 0.1 * np.exp(-(t - t0)), 0.0)
        st = settling_time(series, t, bump_scenario(last_center=t0, duration=30.0))
        assert st == pytest.approx(math.log(50.0), abs=2e-3)

    def test_unsettled_series_is_inf(self):
        t = np.linspace(0, 10, 1001)
        assert settling_time(np.full_like(t, 0.05), t, bump_scenario()) == math.inf

    def test_band_monotonicity(self, rng):
        t = np.linspace(0, 30, 3001)
        series = 0.1 * np.exp(-0.3 * t) * np.cos(4.0 * t)
        scen = bump_scenario(last_center=0.0, duration=30.0)
        bands = [0.001, 0.002, 0.005, 0.02]
        sts = [settling_time(series, t, scen, band=b) for b in bands]
        assert all(a >= b for a, b in zip(sts, sts[1:]))

    def test_bad_band_rejected(self):
        t = np.linspace(0, 10, 101)
        with pytest.raises(ValueError):
            settling_time(np.zeros_like(t), t, bump_scenario(), band=0.0)


class TestTrajectoryReport:
    def test_passive_quarter_car_report(self, qc_passive, qc_scenario):
        report = trajectory_report(qc_passive, qc_scenario)
        assert report.peak_sprung_disp == pytest.approx(0.143, abs=2e-3)
        assert report.peak_travel == pytest.approx(0.1026, abs=2e-3)
        assert report.settling_time == pytest.approx(4.49, abs=0.05)
        assert report.peak_force == 0.0

    def test_report_round_trips_to_dict(self, qc_passive, qc_scenario):
        report = trajectory_report(qc_passive, qc_scenario)
        d = report.to_dict()
        assert d["rms_sprung_accel"] == report.rms_sprung_accel
        assert set(d) == {
            "rms_sprung_accel", "peak_sprung_accel", "peak_sprung_disp",
            "peak_travel", "peak_unsprung_disp", "peak_jerk", "peak_force",
            "settling_time",
        }
