import math

import pytest

from pendula import (ConfigError, Constant, IntegrationBlowupError,
                     IzhikevichParams, LifParams, NeuronState, PendulumParams,
                     SimConfig, WheelParams, Zero, isi_cv, isi_list,
                     match_spike_trains, simulate_single)
from oracles import local_maxima, upward_zero_crossings


class TestGoldenReplication:
    def test_spike_train_matches_frozen_oracle(self, default_params, sine_drive,
                                               default_sim, golden_spikes_csv):
        _, train = simulate_single(default_params, sine_drive, default_sim)
        assert train.to_csv() == golden_spikes_csv

    def test_trace_shape(self, default_params, sine_drive, default_sim):
        trace, _ = simulate_single(default_params, sine_drive, default_sim)
        assert len(trace) == 5000
        assert trace.rows[0].t == 0.0
        assert trace.rows[0].theta == 0.0
        # reported grid is uniform in dt
        for i in (1, 2500, 4999):
            assert trace.rows[i].t == i * 0.1

    def test_spiked_rows_hold_reset_state(self, default_params, sine_drive,
                                          default_sim):
        trace, _ = simulate_single(default_params, sine_drive, default_sim)
        spiked_rows = [r for r in trace.rows if r.spiked]
        assert len(spiked_rows) == 169
        assert all(r.theta == 0.0 and r.dtheta == 0.0 for r in spiked_rows)


class TestEquilibrium:
    @pytest.mark.parametrize("params", [
        PendulumParams(), WheelParams(omega=0.0),
        LifParams(), IzhikevichParams(),
    ])
    def test_zero_input_no_spikes(self, params):
        sim = SimConfig(duration_ms=100.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(params, Zero(), sim)
        assert len(train) == 0

    def test_pendulum_state_stays_exactly_zero(self):
        sim = SimConfig(duration_ms=100.0, dt_ms=0.1)
        trace, _ = simulate_single(PendulumParams(), Zero(), sim)
        assert all(r.theta == 0.0 and r.dtheta == 0.0 for r in trace.rows)


class TestPeriodicSpiking:
    def test_constant_drive_isi_regularity(self, default_params):
        sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(default_params, Constant(2.0), sim)
        times = train.times()
        isis = isi_list(times, discard_before_ms=100.0)
        assert len(isis) > 50
        assert (max(isis) - min(isis)) / (sum(isis) / len(isis)) < 0.05
        assert isi_cv(times, discard_before_ms=100.0) < 0.05
        # the Euler ISI locks to the grid at exactly 2.0 ms
        assert all(isi == pytest.approx(2.0, abs=1e-9) for isi in isis)

    def test_rk4_constant_drive_isi(self, default_params):
        # frozen from the fine-step reference: steady ISI 2.025 ms
        sim = SimConfig(duration_ms=200.0, dt_ms=0.001, integrator="rk4",
                        record_trace=False)
        _, train = simulate_single(default_params, Constant(2.0), sim)
        isis = isi_list(train.times(), discard_before_ms=100.0)
        assert all(isi == pytest.approx(2.025, abs=1e-9) for isi in isis)


class TestLinearizedOscillation:
    def test_small_angle_frequency(self):
        params = PendulumParams(gamma=0.05, omega0=1.0,
                                threshold_theta=float("inf"))
        sim = SimConfig(duration_ms=60.0, dt_ms=0.001, integrator="rk4")
        trace, train = simulate_single(params, Zero(), sim,
                                       initial_state=NeuronState(0.01, 0.0))
        assert len(train) == 0
        times = [r.t for r in trace.rows]
        thetas = [r.theta for r in trace.rows]
        crossings = upward_zero_crossings(times, thetas)
        assert len(crossings) >= 5
        periods = [b - a for a, b in zip(crossings, crossings[1:])]
        measured = sum(periods) / len(periods)
        ideal = 2.0 * math.pi / math.sqrt(1.0 - 0.05 ** 2 / 4.0)
        assert abs(measured - ideal) / ideal < 0.01

    def test_damped_decay_maxima_strictly_decreasing(self):
        params = PendulumParams(gamma=0.05, omega0=1.0,
                                threshold_theta=float("inf"))
        sim = SimConfig(duration_ms=80.0, dt_ms=0.001, integrator="rk4")
        trace, _ = simulate_single(params, Zero(), sim,
                                   initial_state=NeuronState(0.5, 0.0))
        maxima = local_maxima([r.theta for r in trace.rows])
        assert len(maxima) >= 8
        assert all(a > b for a, b in zip(maxima, maxima[1:]))


class TestIntegratorConvergence:
    def test_euler_dt01_within_1ms_of_fine_rk4(self, default_params, sine_drive,
                                               rk4_fine_times):
        sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(default_params, sine_drive, sim)
        times = train.times()
        assert len(times) == len(rk4_fine_times) == 169
        devs, ua, ub = match_spike_trains(times, rk4_fine_times, tol_ms=2.0)
        assert ua == ub == 0
        assert max(devs) <= 1.0

    def test_rk4_grid_equals_euler_counts(self, default_params, sine_drive):
        for dt in (0.05, 0.025):
            sim = SimConfig(duration_ms=500.0, dt_ms=dt, record_trace=False)
            _, train = simulate_single(default_params, sine_drive, sim)
            assert len(train) == 169


class TestDeterminism:
    def test_identical_runs_bitwise_equal(self, default_params, sine_drive,
                                          default_sim):
        t1, s1 = simulate_single(default_params, sine_drive, default_sim)
        t2, s2 = simulate_single(default_params, sine_drive, default_sim)
        assert s1.events == s2.events
        assert t1.rows == t2.rows
        assert t1.to_csv() == t2.to_csv()


class TestRunContracts:
    def test_reset_contract_bitwise(self, default_params, sine_drive, default_sim):
        trace, train = simulate_single(default_params, sine_drive, default_sim)
        spike_steps = {round(t / 0.1) for t in train.times()}
        for i in spike_steps:
            row = trace.rows[i]
            assert row.spiked
            assert (row.theta, row.dtheta) == (0.0, 0.0)

    def test_blowup_carries_step_index(self):
        sim = SimConfig(duration_ms=10.0, dt_ms=0.1, record_trace=False)
        params = PendulumParams(threshold_theta=float("inf"))
        with pytest.raises(IntegrationBlowupError) as exc:
            simulate_single(params, Constant(1e308), sim)
        assert exc.value.step_index is not None
        assert exc.value.time_ms == pytest.approx(exc.value.step_index * 0.1)

    def test_rk4_rejected_for_non_pendulum(self):
        sim = SimConfig(duration_ms=10.0, dt_ms=0.1, integrator="rk4")
        with pytest.raises(ConfigError):
            simulate_single(LifParams(), Zero(), sim)

    def test_sampled_must_cover_duration(self):
        from pendula import Sampled
        sim = SimConfig(duration_ms=10.0, dt_ms=0.1)
        with pytest.raises(ConfigError):
            simulate_single(PendulumParams(), Sampled(1.0, (0.0,) * 5), sim)

    def test_sim_config_validation(self):
        with pytest.raises(ConfigError):
            SimConfig(duration_ms=0.0, dt_ms=0.1)
        with pytest.raises(ConfigError):
            SimConfig(duration_ms=10.0, dt_ms=0.0)
        with pytest.raises(ConfigError):
            SimConfig(duration_ms=10.0, dt_ms=0.1, integrator="rk2")
        assert SimConfig(duration_ms=500.0, dt_ms=0.1).steps == 5000

    def test_wheel_periodic_spiking(self):
        sim = SimConfig(duration_ms=50.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(WheelParams(omega=1.0), Zero(), sim)
        # phase advances 0.1/step; wraps every ceil(2*pi/0.1) = 63 steps
        times = train.times()
        assert len(times) == 7
        assert times[0] == pytest.approx(6.3)

    def test_lif_periodic_spiking(self):
        sim = SimConfig(duration_ms=50.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(LifParams(), Constant(10.0), sim)
        isis = isi_list(train.times(), discard_before_ms=5.0)
        assert all(i == pytest.approx(1.2, abs=1e-9) for i in isis)

    def test_izhikevich_spiking(self):
        sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
        _, train = simulate_single(IzhikevichParams(), Constant(10.0), sim)
        assert len(train) == 12
