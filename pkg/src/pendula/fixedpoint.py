"""Fixed-point (Q-format) pendulum stepping with a sine lookup table.

Emulates hardware arithmetic constraints: signed integers with a declared
number of fractional bits, round-to-nearest (ties away from zero) on every
multiply and conversion, saturation instead of wraparound, and a sine
evaluated by nearest-entry lookup in a precomputed mid-bin table.

Argument reduction for the table runs in two stages. Stage one reduces the
Q angle modulo to_fixed(2*pi) exactly, so adding the Q representation of
2*pi to any input is a bitwise no-op (the wrap identity). Stage two maps
the reduced angle to a bin index using pi/2*pi constants carrying
INDEX_SHIFT extra bits; with naive single-precision constants the bin
edges sit ~6e-6 rad off and the table misses its advertised error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .models import PendulumParams
from .recording import SpikeTrain, fmt_time, match_spike_trains
from .signals import InputSignal, Sampled
from .simulate import SimConfig, TimeGrid

INDEX_SHIFT = 24


@dataclass(frozen=True)
class QFormat:
    total_bits: int = 32
    frac_bits: int = 16

    def __post_init__(self):
        if not (1 <= self.frac_bits < self.total_bits):
            raise ConfigError("need 1 <= frac_bits < total_bits")

    @property
    def lo(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def hi(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def resolution(self) -> float:
        return 2.0 ** -self.frac_bits

    @property
    def name(self) -> str:
        return f"Q{self.total_bits - self.frac_bits}.{self.frac_bits}"


@dataclass(frozen=True)
class FixedState:
    theta_q: int = 0
    dtheta_q: int = 0


@dataclass
class SaturationCount:
    count: int = 0

    def hit(self) -> None:
        self.count += 1


def _round_half_away(x: float) -> int:
    v = math.floor(abs(x) + 0.5)
    return v if x >= 0 else -v


def to_fixed(x: float, q: QFormat, sat: SaturationCount | None = None) -> int:
    """Round-to-nearest (ties away from zero), saturating at the range."""
    if not math.isfinite(x):
        raise ConfigError("cannot quantize a non-finite value")
    v = _round_half_away(x * (1 << q.frac_bits))
    if v < q.lo:
        if sat:
            sat.hit()
        return q.lo
    if v > q.hi:
        if sat:
            sat.hit()
        return q.hi
    return v


def from_fixed(i: int, q: QFormat) -> float:
    return i / (1 << q.frac_bits)


def qmul(a: int, b: int, q: QFormat, sat: SaturationCount) -> int:
    """Product rounded back to Q, ties away from zero, saturating."""
    p = a * b
    half = 1 << (q.frac_bits - 1)
    r = (p + half) >> q.frac_bits if p >= 0 else -((-p + half) >> q.frac_bits)
    return _saturate(r, q, sat)


def sat_add(a: int, b: int, q: QFormat, sat: SaturationCount) -> int:
    return _saturate(a + b, q, sat)


def qneg(a: int, q: QFormat, sat: SaturationCount) -> int:
    return _saturate(-a, q, sat)


def _saturate(v: int, q: QFormat, sat: SaturationCount) -> int:
    if v < q.lo:
        sat.hit()
        return q.lo
    if v > q.hi:
        sat.hit()
        return q.hi
    return v


@dataclass
class SineLut:
    """Mid-bin samples of sin over [-pi, pi), size a power of two."""

    size: int
    q: QFormat
    entries: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.size < 2 or self.size & (self.size - 1):
            raise ConfigError("lut size must be a power of two >= 2")
        if not self.entries:
            self.entries = [
                to_fixed(math.sin(-math.pi + (k + 0.5) * 2.0 * math.pi / self.size),
                         self.q)
                for k in range(self.size)]
        # reduction constants
        self._two_pi_q = to_fixed(2.0 * math.pi, self.q)
        self._pi_q = to_fixed(math.pi, self.q)
        shift = self.q.frac_bits + INDEX_SHIFT
        self._pi_hi = _round_half_away(math.pi * (1 << shift))
        self._two_pi_hi = _round_half_away(2.0 * math.pi * (1 << shift))

    @property
    def error_bound(self) -> float:
        """Half bin width (Lipschitz, |cos| <= 1) plus quantization."""
        return math.pi / self.size + self.q.resolution

    def write_csv(self, path: Path | str) -> None:
        lines = ["index,angle_mid,sin_q,sin_value"]
        for k, e in enumerate(self.entries):
            mid = -math.pi + (k + 0.5) * 2.0 * math.pi / self.size
            lines.append(f"{k},{mid!r},{e},{from_fixed(e, self.q)!r}")
        Path(path).write_text("\n".join(lines) + "\n")


def lut_sin(theta_q: int, lut: SineLut, interpolate: bool = False) -> int:
    """Table lookup of sin(theta); the angle is wrapped into [-pi, pi).

    Nearest-entry by default; with interpolate=True, linear interpolation
    between adjacent mid-bin entries (ties toward +inf in the blend).
    """
    r = (theta_q + lut._pi_q) % lut._two_pi_q - lut._pi_q
    num = (r << INDEX_SHIFT) + lut._pi_hi
    if not interpolate:
        k = (num * lut.size) // lut._two_pi_hi
        if k < 0:
            k = 0
        elif k >= lut.size:
            k = lut.size - 1
        return lut.entries[k]
    # position in half-open bin units, offset so entry centers are integers
    pos2 = 2 * num * lut.size - lut._two_pi_hi
    k0 = pos2 // (2 * lut._two_pi_hi)
    rem = pos2 - k0 * 2 * lut._two_pi_hi
    e0 = lut.entries[k0 % lut.size]
    e1 = lut.entries[(k0 + 1) % lut.size]
    blend, r2 = divmod((e1 - e0) * rem, 2 * lut._two_pi_hi)
    if 2 * r2 >= 2 * lut._two_pi_hi:
        blend += 1
    return e0 + blend


@dataclass(frozen=True)
class QuantizedPendulumParams:
    """Pendulum parameters pre-quantized for the fixed-point step.

    omega0 is squared before quantization; the step never squares in Q.
    """

    gamma_q: int
    omega0_sq_q: int
    threshold_q: int
    reset_theta_q: int
    reset_dtheta_q: int

    @classmethod
    def quantize(cls, params: PendulumParams, q: QFormat
                 ) -> "QuantizedPendulumParams":
        return cls(
            gamma_q=to_fixed(params.gamma, q),
            omega0_sq_q=to_fixed(params.omega0 ** 2, q),
            threshold_q=to_fixed(params.threshold_theta, q),
            reset_theta_q=to_fixed(params.reset_theta, q),
            reset_dtheta_q=to_fixed(params.reset_dtheta, q),
        )


def step_pendulum_fixed(state: FixedState, params: QuantizedPendulumParams,
                        input_q: int, dt_q: int, lut: SineLut, q: QFormat,
                        sat: SaturationCount, interpolate: bool = False
                        ) -> tuple[FixedState, bool]:
    """Q-format mirror of the semi-implicit Euler step."""
    sin_q = lut_sin(state.theta_q, lut, interpolate)
    dd_q = sat_add(
        sat_add(qneg(qmul(params.gamma_q, state.dtheta_q, q, sat), q, sat),
                qneg(qmul(params.omega0_sq_q, sin_q, q, sat), q, sat), q, sat),
        input_q, q, sat)
    dtheta_q = sat_add(state.dtheta_q, qmul(dd_q, dt_q, q, sat), q, sat)
    theta_q = sat_add(state.theta_q, qmul(dtheta_q, dt_q, q, sat), q, sat)
    if theta_q >= params.threshold_q:
        return FixedState(params.reset_theta_q, params.reset_dtheta_q), True
    return FixedState(theta_q, dtheta_q), False


@dataclass
class FixedRunResult:
    spike_train: SpikeTrain
    theta_values: list[float]
    spike_steps: set[int]
    saturations: int


def run_pendulum_fixed(params: PendulumParams, signal: InputSignal,
                       config: SimConfig, q: QFormat, lut: SineLut,
                       interpolate: bool = False) -> FixedRunResult:
    """Fixed-point run on the same time grid as the float engine.

    Time is tracked as an integer step count; dt is quantized once. Input
    samples are quantized per step (saturations counted with the rest).
    """
    if isinstance(signal, Sampled) and not signal.covers(config.duration_ms):
        raise ConfigError("sampled input does not cover the run duration")
    qp = QuantizedPendulumParams.quantize(params, q)
    dt_q = to_fixed(config.dt_ms, q)
    sat = SaturationCount()
    grid = TimeGrid(config)
    state = FixedState(0, 0)
    train = SpikeTrain()
    thetas = [0.0]
    spike_steps: set[int] = set()
    for i in range(1, grid.steps):
        input_q = to_fixed(signal.evaluate(grid.sample_time(i)), q, sat)
        state, spiked = step_pendulum_fixed(state, qp, input_q, dt_q, lut, q,
                                            sat, interpolate)
        if spiked:
            train.append(0, grid.reported_time(i))
            spike_steps.add(i)
        thetas.append(from_fixed(state.theta_q, q))
    return FixedRunResult(train, thetas, spike_steps, sat.count)


@dataclass
class ErrorReport:
    """Fixed-vs-float comparison summary for one Q format / table size."""

    max_theta_err: float
    spike_time_devs: list[float]
    count_diff: int
    saturations: int
    q_format: QFormat
    lut_size: int

    def to_json_dict(self) -> dict:
        return {
            "max_theta_err": self.max_theta_err,
            "spike_time_devs": [float(fmt_time(d)) for d in self.spike_time_devs],
            "count_diff": self.count_diff,
            "saturations": self.saturations,
            "q_format": {"total_bits": self.q_format.total_bits,
                         "frac_bits": self.q_format.frac_bits},
            "lut_size": self.lut_size,
        }


def compare_fixed_vs_float(params: PendulumParams, signal: InputSignal,
                           config: SimConfig, q: QFormat, lut_size: int,
                           interpolate: bool = False,
                           match_tol_ms: float = 5.0,
                           float_control: bool = False) -> ErrorReport:
    """Run both paths on one config and summarize their disagreement.

    The theta error is taken over steps where the two paths are in the
    same inter-spike segment (equal cumulative spike counts, neither path
    spiking at that step), so a one-sided reset does not register as a
    ~pi-sized phantom error. With float_control=True the "fixed" side is
    the float path itself and the report must be all zeros.
    """
    from .simulate import simulate_single

    cfg = SimConfig(config.duration_ms, config.dt_ms, "euler", True)
    trace, float_train = simulate_single(params, signal, cfg)
    float_thetas = [row.theta for row in trace.rows]
    float_steps = {i for i, row in enumerate(trace.rows) if row.spiked}

    if float_control:
        fixed_thetas, fixed_steps = float_thetas, float_steps
        fixed_times = float_train.times()
        saturations = 0
    else:
        lut = SineLut(lut_size, q)
        result = run_pendulum_fixed(params, signal, cfg, q, lut, interpolate)
        fixed_thetas, fixed_steps = result.theta_values, result.spike_steps
        fixed_times = result.spike_train.times()
        saturations = result.saturations

    max_err = 0.0
    ca = cb = 0
    for i in range(len(float_thetas)):
        sa, sb = i in fixed_steps, i in float_steps
        if ca == cb and not sa and not sb:
            err = abs(fixed_thetas[i] - float_thetas[i])
            if err > max_err:
                max_err = err
        ca += sa
        cb += sb

    devs, _, _ = match_spike_trains(fixed_times, float_train.times(),
                                    match_tol_ms)
    return ErrorReport(
        max_theta_err=max_err,
        spike_time_devs=devs,
        count_diff=len(fixed_times) - len(float_train),
        saturations=saturations,
        q_format=q,
        lut_size=lut_size,
    )
