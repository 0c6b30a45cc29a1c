"""Secondary acceptance: cross-check of the engine's default run.

The reference is an independent reimplementation consuming only the run
directory's files; with the velocity-first euler method its disagreement
with a healthy engine is bounded by the strict-vs-inclusive threshold
test (at most one grid step), so matched deviations must stay within
2*dt and spike counts within one.
"""

import json
import subprocess
import sys
from pathlib import Path

from pendula_crosscheck.cli import main as crosscheck_main


def test_default_run_crosscheck_within_tolerance(single_run_dir):
    dt = 0.1
    code = crosscheck_main(["--run-dir", str(single_run_dir),
                            "--tol-ms", str(2 * dt)])
    assert code == 0
    report = json.loads((single_run_dir / "crosscheck.json").read_text())
    primary = report["meta"]["primary_spikes"]
    reference = report["meta"]["reference_spikes"]
    assert abs(primary - reference) <= 1
    assert report["max_dev_ms"] <= 2 * dt
    assert report["unmatched_primary"] + report["unmatched_reference"] <= 1
    # frozen regression: the builtin euler reference reproduces the run
    # up to the CSV's 9-significant-digit time formatting (the reference
    # computes i*dt in full precision; observed gap 5.7e-14 ms)
    assert report["matched"] == 169
    assert report["max_dev_ms"] < 1e-6
    assert report["meta"]["backend"] in ("builtin", "brian2")


def test_explicit_method_skew_frozen(single_run_dir, tmp_path):
    # regression bound for the synchronous explicit ordering: it loses six
    # spikes over the 500 ms run (inter-spike intervals longer at O(dt))
    import shutil
    run_copy = tmp_path / "copy"
    shutil.copytree(single_run_dir, run_copy)
    (run_copy / "crosscheck.json").unlink(missing_ok=True)
    code = crosscheck_main(["--run-dir", str(run_copy), "--tol-ms", "0.2",
                            "--method", "explicit-euler",
                            "--backend", "builtin"])
    assert code == 0
    report = json.loads((run_copy / "crosscheck.json").read_text())
    assert report["meta"]["primary_spikes"] == 169
    assert report["meta"]["reference_spikes"] == 163


def test_harness_only_writes_crosscheck_json(single_run_dir, tmp_path):
    import shutil
    run_copy = tmp_path / "copy"
    shutil.copytree(single_run_dir, run_copy)
    (run_copy / "crosscheck.json").unlink(missing_ok=True)
    before = {p.name: p.read_bytes() for p in run_copy.iterdir()}
    assert crosscheck_main(["--run-dir", str(run_copy)]) == 0
    after = {p.name: p.read_bytes() for p in run_copy.iterdir()}
    assert set(after) == set(before) | {"crosscheck.json"}
    for name, blob in before.items():
        assert after[name] == blob, f"{name} was mutated"


def test_not_crosscheckable_exit_code(tmp_path):
    assert crosscheck_main(["--run-dir", str(tmp_path)]) == 2


def test_console_script_entry_point(single_run_dir, tmp_path):
    import shutil
    run_copy = tmp_path / "copy"
    shutil.copytree(single_run_dir, run_copy)
    (run_copy / "crosscheck.json").unlink(missing_ok=True)
    result = subprocess.run(
        [sys.executable, "-m", "pendula_crosscheck.cli",
         "--run-dir", str(run_copy), "--tol-ms", "0.2"],
        capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    assert (run_copy / "crosscheck.json").exists()
