import math
from pathlib import Path

import pytest

from pendula import (PendulumParams, SimConfig, Sinusoid, simulate_single)

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def default_params():
    return PendulumParams(gamma=0.05, omega0=1.0, threshold_theta=math.pi)


@pytest.fixture(scope="session")
def sine_drive():
    return Sinusoid(amplitude=1.5, angular_freq=0.01, bias=1.2)


@pytest.fixture(scope="session")
def default_sim():
    return SimConfig(duration_ms=500.0, dt_ms=0.1, integrator="euler",
                     record_trace=True)


@pytest.fixture(scope="session")
def golden_spikes_csv():
    return (GOLDEN_DIR / "default_single_spikes.csv").read_text()


@pytest.fixture(scope="session")
def golden_spike_times(golden_spikes_csv):
    lines = golden_spikes_csv.splitlines()[1:]
    return [float(line.split(",")[1]) for line in lines if line]


@pytest.fixture(scope="session")
def rk4_fine_times(default_params, sine_drive):
    """Reference spike times: RK4 at dt=0.001 on the default config."""
    sim = SimConfig(duration_ms=500.0, dt_ms=0.001, integrator="rk4",
                    record_trace=False)
    _, train = simulate_single(default_params, sine_drive, sim)
    return train.times()
