"""Neuron models: state, parameters, derivatives, and single-step updates.

The pendulum neuron is the primary model: second-order phase dynamics

    theta'' = -gamma * theta' - omega0**2 * sin(theta) + I(t)

with a spike emitted at theta >= threshold_theta followed by a hard reset.
The Euler step reproduces the reference update ordering exactly: the
acceleration uses the old velocity, the new velocity feeds the position
update (semi-implicit), and the threshold test runs on the updated
position. Do not "fix" this to textbook explicit Euler; golden traces
depend on it.

Wheel, LIF, and Izhikevich steps are comparison baselines. LIF and
Izhikevich test the threshold on the incoming state (a reset consumes the
whole step); pendulum and wheel test after the update.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, IntegrationBlowupError
from .signals import InputSignal


@dataclass(frozen=True)
class NeuronState:
    """Angular phase (rad) and angular velocity (rad/ms) of one neuron."""

    theta: float = 0.0
    dtheta: float = 0.0

    def is_finite(self) -> bool:
        return math.isfinite(self.theta) and math.isfinite(self.dtheta)


@dataclass(frozen=True)
class PendulumParams:
    gamma: float = 0.05
    omega0: float = 1.0
    threshold_theta: float = math.pi
    reset_theta: float = 0.0
    reset_dtheta: float = 0.0

    def __post_init__(self):
        if not (self.gamma >= 0.0):
            raise ConfigError("gamma must be >= 0")
        if not (self.omega0 > 0.0):
            raise ConfigError("omega0 must be > 0")
        if not (self.threshold_theta > self.reset_theta):
            raise ConfigError("threshold_theta must exceed reset_theta")


@dataclass(frozen=True)
class WheelParams:
    omega: float = 1.0
    alpha: float = 0.0
    threshold_theta: float = 2.0 * math.pi

    def __post_init__(self):
        if not (self.omega >= 0.0):
            raise ConfigError("omega must be >= 0")
        if not (self.threshold_theta > 0.0):
            raise ConfigError("threshold_theta must be > 0")


@dataclass(frozen=True)
class LifParams:
    tau_m: float = 10.0
    v_rest: float = 0.0
    v_threshold: float = 1.0
    v_reset: float = 0.0
    r: float = 1.0

    def __post_init__(self):
        if not (self.tau_m > 0.0):
            raise ConfigError("tau_m must be > 0")
        if not (self.v_threshold > self.v_reset):
            raise ConfigError("v_threshold must exceed v_reset")


@dataclass(frozen=True)
class IzhikevichParams:
    a: float = 0.02
    b: float = 0.2
    c: float = -65.0
    d: float = 8.0
    v_threshold: float = 30.0

    def __post_init__(self):
        if not (self.a > 0.0):
            raise ConfigError("a must be > 0")


ModelParams = PendulumParams | WheelParams | LifParams | IzhikevichParams


def pendulum_derivatives(state: NeuronState, params: PendulumParams,
                         current: float) -> tuple[float, float]:
    """Return (dtheta, ddtheta) at the given state and input current."""
    if not state.is_finite() or not math.isfinite(current):
        raise ConfigError("pendulum_derivatives requires finite state and input")
    ddtheta = (-params.gamma * state.dtheta
               - params.omega0 ** 2 * math.sin(state.theta) + current)
    return state.dtheta, ddtheta


def step_pendulum_euler(state: NeuronState, params: PendulumParams,
                        current: float, dt: float) -> tuple[NeuronState, bool]:
    """One semi-implicit Euler step; returns (new state, spiked)."""
    ddtheta = (-params.gamma * state.dtheta
               - params.omega0 ** 2 * math.sin(state.theta) + current)
    dtheta = state.dtheta + ddtheta * dt
    theta = state.theta + dtheta * dt
    if not (math.isfinite(theta) and math.isfinite(dtheta)):
        raise IntegrationBlowupError("pendulum Euler step produced a non-finite value")
    if theta >= params.threshold_theta:
        return NeuronState(params.reset_theta, params.reset_dtheta), True
    return NeuronState(theta, dtheta), False


def step_pendulum_rk4(state: NeuronState, params: PendulumParams,
                      signal: InputSignal, t: float, dt: float
                      ) -> tuple[NeuronState, bool]:
    """Classical RK4 step from time t; threshold/reset applied after the step.

    Stage inputs are sampled at t, t + dt/2, and t + dt.
    """
    gamma, w0sq = params.gamma, params.omega0 ** 2
    sin = math.sin
    i0 = signal.evaluate(t)
    im = signal.evaluate(t + 0.5 * dt)
    i1 = signal.evaluate(t + dt)
    th, dth = state.theta, state.dtheta

    k1t = dth
    k1d = -gamma * dth - w0sq * sin(th) + i0
    th2 = th + 0.5 * dt * k1t
    d2 = dth + 0.5 * dt * k1d
    k2t = d2
    k2d = -gamma * d2 - w0sq * sin(th2) + im
    th3 = th + 0.5 * dt * k2t
    d3 = dth + 0.5 * dt * k2d
    k3t = d3
    k3d = -gamma * d3 - w0sq * sin(th3) + im
    th4 = th + dt * k3t
    d4 = dth + dt * k3d
    k4t = d4
    k4d = -gamma * d4 - w0sq * sin(th4) + i1

    theta = th + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
    dtheta = dth + dt / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
    if not (math.isfinite(theta) and math.isfinite(dtheta)):
        raise IntegrationBlowupError("pendulum RK4 step produced a non-finite value")
    if theta >= params.threshold_theta:
        return NeuronState(params.reset_theta, params.reset_dtheta), True
    return NeuronState(theta, dtheta), False


def step_wheel(theta: float, params: WheelParams, current: float,
               dt: float) -> tuple[float, bool]:
    """Uniform phase advance theta' = theta + (omega + alpha*I)*dt."""
    theta = theta + (params.omega + params.alpha * current) * dt
    if not math.isfinite(theta):
        raise IntegrationBlowupError("wheel step produced a non-finite value")
    if theta >= params.threshold_theta:
        return 0.0, True
    return theta, False


def step_lif(v: float, params: LifParams, current: float,
             dt: float) -> tuple[float, bool]:
    """Explicit Euler on tau*dv/dt = -(v - v_rest) + R*I; entry-check reset."""
    if v >= params.v_threshold:
        return params.v_reset, True
    v = v + dt * (-(v - params.v_rest) + params.r * current) / params.tau_m
    if not math.isfinite(v):
        raise IntegrationBlowupError("LIF step produced a non-finite value")
    return v, False


def step_izhikevich(v: float, u: float, params: IzhikevichParams,
                    current: float, dt: float) -> tuple[float, float, bool]:
    """Explicit Euler on the quadratic membrane model; entry-check reset."""
    if v >= params.v_threshold:
        return params.c, u + params.d, True
    dv = 0.04 * v * v + 5.0 * v + 140.0 - u + current
    du = params.a * (params.b * v - u)
    v = v + dt * dv
    u = u + dt * du
    if not (math.isfinite(v) and math.isfinite(u)):
        raise IntegrationBlowupError("Izhikevich step produced a non-finite value")
    return v, u, False
