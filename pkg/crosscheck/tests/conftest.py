import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest


def pendula_cli(args, out_dir):
    """Invoke the primary engine through its public CLI."""
    exe = shutil.which("pendula")
    cmd = [exe] if exe else [sys.executable, "-m", "pendula.cli"]
    result = subprocess.run(cmd + args + ["--out-dir", str(out_dir)],
                            capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    return Path(out_dir)


@pytest.fixture(scope="session")
def single_run_dir(tmp_path_factory):
    """A default single run produced by the primary CLI."""
    out = tmp_path_factory.mktemp("primary") / "single"
    return pendula_cli(["single"], out)


@pytest.fixture()
def synthetic_run_dir(tmp_path):
    """Hand-built minimal run directory (no primary engine involved)."""
    def make(config, spike_rows, experiment="single"):
        run = tmp_path / "run"
        run.mkdir(exist_ok=True)
        (run / "run.json").write_text(json.dumps({
            "format_version": 1, "package_version": "0",
            "experiment": experiment, "seed": 0, "config": config}))
        lines = ["neuron,t"] + [f"{n},{t}" for n, t in spike_rows]
        (run / "spikes.csv").write_text("\n".join(lines) + "\n")
        return run
    return make
