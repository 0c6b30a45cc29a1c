"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them inline).

Known red: integrator-convergence monotonicity. The dt=0.05 run tracks the
fine-step reference worse than dt=0.1 in every norm (max deviations
0.272 / 1.964 / 0.636 ms for dt = 0.1 / 0.05 / 0.025); at dt=0.1 the
scheme's early bias happens to cancel the detection-grid late bias on this
config. The criterion is asserted as stated anyway; see the project notes
for the full analysis. The companion bound (dt=0.1 within 1 ms of the
reference) holds and is asserted separately.
"""

import contextlib
import functools
import io
import json
import math

from pendula import (Constant, HebbianParams, LayerConfig, NeuronState,
                     PendulumParams, QFormat, SimConfig, SineLut, StdpParams,
                     WeightMatrix, Zero, compare_fixed_vs_float, from_fixed,
                     isi_cv, lut_sin, match_spike_trains, run_network,
                     simulate_single, stdp_delta, to_fixed)
from pendula.cli import main as cli_main
from oracles import replay_stdp_hebbian, upward_zero_crossings
from test_network import pulse_samples


def criterion(name):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[acceptance] FAIL: {name}")
                raise
            print(f"[acceptance] PASS: {name}")
        return wrapper
    return deco


@criterion("golden replication: default single run reproduces the frozen "
           "reference spike train exactly")
def test_golden_replication(default_params, sine_drive, default_sim,
                            golden_spikes_csv):
    _, train = simulate_single(default_params, sine_drive, default_sim)
    assert train.to_csv() == golden_spikes_csv
    assert len(train) == 169


@criterion("periodic spiking: constant I=2.0, ISI CV < 0.05 after 100 ms")
def test_periodic_spiking(default_params):
    sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
    _, train = simulate_single(default_params, Constant(2.0), sim)
    assert isi_cv(train.times(), discard_before_ms=100.0) < 0.05


@criterion("linearized frequency: measured period within 1% of "
           "2*pi/sqrt(omega0^2 - gamma^2/4)")
def test_linearized_frequency():
    params = PendulumParams(gamma=0.05, omega0=1.0,
                            threshold_theta=float("inf"))
    sim = SimConfig(duration_ms=60.0, dt_ms=0.001, integrator="rk4")
    trace, _ = simulate_single(params, Zero(), sim,
                               initial_state=NeuronState(0.01, 0.0))
    crossings = upward_zero_crossings([r.t for r in trace.rows],
                                      [r.theta for r in trace.rows])
    periods = [b - a for a, b in zip(crossings, crossings[1:])]
    measured = sum(periods) / len(periods)
    ideal = 2.0 * math.pi / math.sqrt(1.0 - 0.05 ** 2 / 4.0)
    assert abs(measured - ideal) / ideal < 0.01


def _euler_max_dev(params, signal, dt, reference):
    sim = SimConfig(duration_ms=500.0, dt_ms=dt, record_trace=False)
    _, train = simulate_single(params, signal, sim)
    devs, ua, ub = match_spike_trains(train.times(), reference, tol_ms=2.0)
    assert ua == ub == 0
    return max(devs)


@criterion("integrator convergence bound: Euler dt=0.1 spike times within "
           "1 ms of RK4 dt=0.001")
def test_integrator_convergence_bound(default_params, sine_drive,
                                      rk4_fine_times):
    assert _euler_max_dev(default_params, sine_drive, 0.1, rk4_fine_times) <= 1.0


@criterion("integrator convergence monotonicity: deviation shrinks over "
           "dt in {0.1, 0.05, 0.025}")
def test_integrator_convergence_monotone(default_params, sine_drive,
                                         rk4_fine_times):
    devs = [_euler_max_dev(default_params, sine_drive, dt, rk4_fine_times)
            for dt in (0.1, 0.05, 0.025)]
    assert devs[0] >= devs[1] >= devs[2], (
        f"max deviations not monotone: dt=0.1 -> {devs[0]:.4f} ms, "
        f"dt=0.05 -> {devs[1]:.4f} ms, dt=0.025 -> {devs[2]:.4f} ms")


@criterion("equilibrium and reset: zero input spikes never over 1e5 steps; "
           "every spike resets to exact (0, 0)")
def test_equilibrium_and_reset(default_params, sine_drive, default_sim):
    sim = SimConfig(duration_ms=10000.0, dt_ms=0.1, record_trace=False)
    _, train = simulate_single(PendulumParams(), Zero(), sim)
    assert sim.steps == 100000
    assert len(train) == 0

    trace, spikes = simulate_single(default_params, sine_drive, default_sim)
    assert len(spikes) > 0
    for row in trace.rows:
        if row.spiked:
            assert (row.theta, row.dtheta) == (0.0, 0.0)


@criterion("STDP unit values: closed-form delta within 1e-12; sign and "
           "monotonicity over a 200-point sweep")
def test_stdp_unit_values():
    p = StdpParams(a_plus=0.01, a_minus=0.012, tau_plus=20.0, tau_minus=20.0)
    assert abs(stdp_delta(20.0, p) - 0.01 * math.exp(-1.0)) < 1e-12
    sweep = [0.5 * k for k in range(1, 201)]
    pos = [stdp_delta(dt, p) for dt in sweep]
    neg = [stdp_delta(-dt, p) for dt in sweep]
    assert all(v > 0.0 for v in pos)
    assert all(v < 0.0 for v in neg)
    assert all(a > b for a, b in zip(pos, pos[1:]))
    assert all(abs(a) > abs(b) for a, b in zip(neg, neg[1:]))


@criterion("STDP directional learning: 5 ms-delay pair ends with "
           "w[post<-pre] > w[pre<-post], both matching event replay to 1e-9")
def test_stdp_directional_learning():
    params = PendulumParams()
    sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
    inputs = [pulse_samples(0.1, 500.0, 3.0, 1.5, 50.0),
              pulse_samples(0.1, 500.0, 3.0, 1.5, 50.0, delay=5.0)]
    layer = LayerConfig(n=2, params=params, inputs=inputs,
                        weights=WeightMatrix.constant(2, 0.05),
                        stdp=StdpParams())
    run = run_network(layer, sim)
    w = run.final_weights
    assert w.w[1][0] > w.w[0][1]
    assert w.w[1][0] > 0.05
    assert w.w[0][1] < 0.05

    replayed = replay_stdp_hebbian(2, run.spike_logs,
                                   [[0.0, 0.05], [0.05, 0.0]],
                                   w_min=0.0, w_max=1.0)
    for i in range(2):
        for j in range(2):
            assert abs(w.w[i][j] - replayed[i][j]) < 1e-9


@criterion("Hebbian counting: co-driven pair gains k*eta exactly; "
           "non-co-firing control gains zero")
def test_hebbian_counting():
    params = PendulumParams()
    sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
    pulse = pulse_samples(0.1, 500.0, 3.0, 1.5, 50.0)
    layer = LayerConfig(n=2, params=params, inputs=[pulse, pulse],
                        syn_gain=0.0, hebbian=HebbianParams(eta=0.01))
    run = run_network(layer, sim)
    k = len(run.spike_logs[0])
    assert k > 0
    assert run.spike_logs[0] == run.spike_logs[1]
    expected = 0.0
    for _ in range(k):
        expected += 0.01
    assert run.final_weights.w[0][1] == expected
    assert run.final_weights.w[1][0] == expected

    control = run_network(
        LayerConfig(n=2, params=params, inputs=[pulse, Zero()],
                    syn_gain=0.0, hebbian=HebbianParams(eta=0.01)), sim)
    assert control.final_weights == WeightMatrix.zeros(2)


@criterion("decoupling: 4-neuron zero-weight network equals 4 independent "
           "single runs, spike for spike")
def test_decoupling(sine_drive):
    params = PendulumParams()
    signals = [Constant(1.3), Constant(2.0), sine_drive, Zero()]
    sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
    run = run_network(LayerConfig(n=4, params=params, inputs=signals), sim)
    for i, sig in enumerate(signals):
        _, train = simulate_single(params, sig, sim)
        assert run.spike_logs[i] == train.times()


@criterion("fixed-point fidelity: Q16.16 + 1024-entry table matches the "
           "float path within one spike and 2 ms, zero saturations; "
           "table error within pi/1024 + 2^-16 over a 1e6-point sweep")
def test_fixedpoint_fidelity(default_params, sine_drive):
    sim = SimConfig(duration_ms=500.0, dt_ms=0.1, record_trace=False)
    q = QFormat(32, 16)
    report = compare_fixed_vs_float(default_params, sine_drive, sim, q, 1024)
    assert abs(report.count_diff) <= 1
    assert report.saturations == 0
    assert report.spike_time_devs
    assert max(report.spike_time_devs) <= 2.0

    lut = SineLut(1024, q)
    bound = math.pi / 1024 + 2.0 ** -16
    n = 1_000_000
    step = 2.0 * math.pi / n
    worst = 0.0
    for k in range(n):
        theta = -math.pi + k * step
        err = abs(from_fixed(lut_sin(to_fixed(theta, q), lut), q)
                  - math.sin(theta))
        if err > worst:
            worst = err
    assert worst <= bound, f"lut sweep error {worst} exceeds {bound}"


@criterion("determinism: every experiment re-run with the same config and "
           "seed writes bitwise-identical files (wall-clock timings excluded)")
def test_experiment_determinism(tmp_path):
    jobs = [
        (["single", "--duration", "200"], None),
        (["layer"], {"network": {"weight_init": {"kind": "random"}}}),
        (["stdp"], None),
        (["hebbian"], None),
        (["compare-models", "--duration", "150"], None),
        (["fixedpoint-report", "--duration", "150"],
         {"fixedpoint": {"frac_bits_list": [8, 16], "lut_sizes": [256]}}),
    ]
    for args, extra_cfg in jobs:
        experiment = args[0]
        cfg_args = []
        if extra_cfg is not None:
            cfg_path = tmp_path / f"{experiment}.json"
            cfg_path.write_text(json.dumps({"version": 1, **extra_cfg}))
            cfg_args = ["--config", str(cfg_path)]
        dirs = [tmp_path / f"{experiment}-a", tmp_path / f"{experiment}-b"]
        for out in dirs:
            with contextlib.redirect_stdout(io.StringIO()):
                code = cli_main(args + cfg_args + ["--out-dir", str(out),
                                                   "--seed", "42"])
            assert code == 0, f"{experiment} exited {code}"
        names_a = sorted(p.name for p in dirs[0].iterdir())
        names_b = sorted(p.name for p in dirs[1].iterdir())
        assert names_a == names_b, experiment
        for name in names_a:
            if name == "timings.csv":
                continue
            a = (dirs[0] / name).read_bytes()
            b = (dirs[1] / name).read_bytes()
            assert a == b, f"{experiment}/{name} differs between runs"
