"""Run outputs: per-step traces, spike trains, and their file formats.

Times are written with 9 significant digits; state and input columns use
shortest round-trip formatting so re-runs compare byte-for-byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


def fmt_time(t: float) -> str:
    return format(t, ".9g")


@dataclass(frozen=True)
class TraceRow:
    t: float
    theta: float
    dtheta: float
    current: float
    spiked: bool


@dataclass
class TraceRecord:
    """Per-step rows (t, theta, dtheta, input, spiked); spiked rows hold the
    post-reset state."""

    rows: list[TraceRow] = field(default_factory=list)

    CSV_HEADER = "t,theta,dtheta,input,spike"

    def append(self, row: TraceRow) -> None:
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(f"{fmt_time(r.t)},{r.theta!r},{r.dtheta!r},"
                         f"{r.current!r},{1 if r.spiked else 0}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: Path | str) -> None:
        Path(path).write_text(self.to_csv())


@dataclass
class SpikeTrain:
    """Time-ordered (neuron index, spike time) events."""

    events: list[tuple[int, float]] = field(default_factory=list)

    CSV_HEADER = "neuron,t"

    def append(self, neuron: int, t: float) -> None:
        self.events.append((neuron, t))

    def __len__(self) -> int:
        return len(self.events)

    def times(self, neuron: int | None = None) -> list[float]:
        if neuron is None:
            return [t for _, t in self.events]
        return [t for n, t in self.events if n == neuron]

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        lines += [f"{n},{fmt_time(t)}" for n, t in self.events]
        return "\n".join(lines) + "\n"

    def write_csv(self, path: Path | str) -> None:
        Path(path).write_text(self.to_csv())

    def to_json(self) -> str:
        return json.dumps([[n, float(fmt_time(t))] for n, t in self.events])

    def write_json(self, path: Path | str) -> None:
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def from_csv(cls, path: Path | str) -> "SpikeTrain":
        train = cls()
        lines = Path(path).read_text().splitlines()
        if not lines or lines[0] != cls.CSV_HEADER:
            raise ValueError(f"{path}: expected header {cls.CSV_HEADER!r}")
        for line in lines[1:]:
            if not line:
                continue
            n, t = line.split(",")
            train.append(int(n), float(t))
        return train


def match_spike_trains(a: list[float], b: list[float], tol_ms: float
                       ) -> tuple[list[float], int, int]:
    """Greedy one-to-one in-order matching of two sorted spike-time lists.

    Returns (absolute deviations of matched pairs, unmatched in a,
    unmatched in b). Deterministic; adequate when tol is well below the
    inter-spike interval.
    """
    ia = ib = 0
    devs: list[float] = []
    unmatched_a = unmatched_b = 0
    while ia < len(a) and ib < len(b):
        d = a[ia] - b[ib]
        if abs(d) <= tol_ms:
            devs.append(abs(d))
            ia += 1
            ib += 1
        elif d < 0:
            unmatched_a += 1
            ia += 1
        else:
            unmatched_b += 1
            ib += 1
    unmatched_a += len(a) - ia
    unmatched_b += len(b) - ib
    return devs, unmatched_a, unmatched_b
