"""Regenerates the frozen golden spike train for the default single run.

Independent oracle: a straight-line NumPy loop, deliberately kept separate
from the package's engine. Sample times come from an inclusive
linspace(0, T, steps) grid; reported spike times are step multiples of dt.
Run from this directory:  python3 generate_golden.py
"""

import numpy as np

T = 500
dt = 0.1
steps = int(T / dt)
time = np.linspace(0, T, steps)

gamma = 0.05
omega = 1.0
theta_reset = 0.0
threshold = np.pi


def input_current(t):
    return 1.5 * np.sin(0.01 * t) + 1.2


theta = np.zeros(steps)
dtheta = np.zeros(steps)
spikes = np.zeros(steps)

for i in range(1, steps):
    I = input_current(time[i])
    ddtheta = -gamma * dtheta[i - 1] - omega ** 2 * np.sin(theta[i - 1]) + I
    dtheta[i] = dtheta[i - 1] + ddtheta * dt
    theta[i] = theta[i - 1] + dtheta[i] * dt
    if theta[i] >= threshold:
        spikes[i] = 1
        theta[i] = theta_reset
        dtheta[i] = 0.0

lines = ["neuron,t"]
for i in np.nonzero(spikes)[0]:
    lines.append(f"0,{format(int(i) * dt, '.9g')}")

with open("default_single_spikes.csv", "w", newline="\n") as fh:
    fh.write("\n".join(lines) + "\n")

print(f"froze {int(spikes.sum())} spikes")
