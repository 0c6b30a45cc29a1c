"""Spike-train loading and greedy one-to-one diffing."""

from __future__ import annotations

import math
from pathlib import Path


def load_spike_times(path: Path | str, neuron: int = 0) -> list[float]:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != "neuron,t":
        raise ValueError(f"{path}: expected 'neuron,t' header")
    times = []
    for line in lines[1:]:
        if not line:
            continue
        n, t = line.split(",")
        if int(n) == neuron:
            times.append(float(t))
    return times


def diff_spike_trains(primary: list[float], reference: list[float],
                      tol_ms: float) -> dict:
    """Greedy in-order matching; stable report schema.

    Returns {matched, max_dev_ms, mean_dev_ms, unmatched_primary,
    unmatched_reference}. Greedy is deterministic and adequate while the
    tolerance stays well below the inter-spike interval.
    """
    ia = ib = 0
    devs: list[float] = []
    unmatched_primary = unmatched_reference = 0
    while ia < len(primary) and ib < len(reference):
        d = primary[ia] - reference[ib]
        if abs(d) <= tol_ms:
            devs.append(abs(d))
            ia += 1
            ib += 1
        elif d < 0:
            unmatched_primary += 1
            ia += 1
        else:
            unmatched_reference += 1
            ib += 1
    unmatched_primary += len(primary) - ia
    unmatched_reference += len(reference) - ib
    return {
        "matched": len(devs),
        "max_dev_ms": max(devs) if devs else 0.0,
        "mean_dev_ms": math.fsum(devs) / len(devs) if devs else 0.0,
        "unmatched_primary": unmatched_primary,
        "unmatched_reference": unmatched_reference,
    }
