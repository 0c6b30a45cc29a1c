"""Read-only validation harness for pendula run directories: rebuilds the
single-neuron reference model from run.json, runs it with a matched step,
and diffs spike trains against the engine's spikes.csv."""

__version__ = "0.1.0"

from .config import CrosscheckConfig, NotCrosscheckable, load_run_dir
from .diff import diff_spike_trains, load_spike_times
from .reference import ReferenceModel, build_reference_model, run_reference

__all__ = [
    "CrosscheckConfig", "NotCrosscheckable", "load_run_dir",
    "diff_spike_trains", "load_spike_times",
    "ReferenceModel", "build_reference_model", "run_reference",
]
