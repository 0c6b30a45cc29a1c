"""Exception types shared across the package."""

from __future__ import annotations


class ConfigError(ValueError):
    """Raised when a parameter set, signal, or experiment config is invalid."""


class IntegrationBlowupError(ArithmeticError):
    """A step produced a non-finite state value.

    Runners enrich the bare step-level error with the step index, the
    simulation time, and (for network runs) the neuron index.
    """

    def __init__(self, message: str, *, step_index: int | None = None,
                 time_ms: float | None = None, neuron: int | None = None):
        super().__init__(message)
        self.step_index = step_index
        self.time_ms = time_ms
        self.neuron = neuron

    def at(self, step_index: int, time_ms: float, neuron: int | None = None
           ) -> "IntegrationBlowupError":
        """Return a copy carrying run-loop context."""
        where = f"step {step_index} (t={time_ms:g} ms"
        where += f", neuron {neuron})" if neuron is not None else ")"
        return IntegrationBlowupError(
            f"{self.args[0]} at {where}",
            step_index=step_index, time_ms=time_ms, neuron=neuron)
