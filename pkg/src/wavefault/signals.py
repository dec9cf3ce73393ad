"""Domain types for pressure recordings and impact cycles.

A recording is one long pressure trace for a single (class, individual)
case. Segmentation cuts it at detected impact onsets into cycles, the unit
everything downstream classifies. Cycles keep their native lengths; the
cycle period varies with faults and individuals and that timing carries
signal, so nothing is resampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateStats,
    InsufficientCycles,
    NoCyclesDetected,
    WindowOutOfRange,
)

__all__ = [
    "ClassLabel",
    "CLASS_ORDER",
    "CycleKey",
    "Cycle",
    "Recording",
    "CycleMeta",
    "NormStats",
    "SegmentationConfig",
    "PhaseWindow",
    "segment_recording",
    "compute_norm_stats",
    "normalize_cycle",
    "compute_p_drop",
    "estimate_impact_frequency",
]


class ClassLabel(Enum):
    """The eleven condition classes; NF is the designated reference."""

    NF = "NF"
    S = "S"
    D = "D"
    R = "R"
    V = "V"
    Q = "Q"
    C = "C"
    A = "A"
    B = "B"
    T = "T"
    O = "O"

    @classmethod
    def from_code(cls, code: str) -> "ClassLabel":
        return cls(code)

    @property
    def code(self) -> str:
        return self.value


# Canonical ordering used for feature layouts, score vectors and reports.
CLASS_ORDER: tuple[ClassLabel, ...] = tuple(ClassLabel)


class CycleKey(NamedTuple):
    """Unique identity of one cycle within a dataset."""

    class_code: str
    individual: int
    cycle_index: int


def _readonly(a: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Cycle:
    """One impact cycle's pressure samples plus identity metadata."""

    samples: np.ndarray
    label: ClassLabel
    individual: int
    cycle_index: int
    sample_rate: float

    def __post_init__(self):
        object.__setattr__(self, "samples", _readonly(self.samples))
        if self.samples.size == 0:
            raise ValueError("cycle has no samples")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("cycle contains non-finite samples")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    @property
    def key(self) -> CycleKey:
        return CycleKey(self.label.code, self.individual, self.cycle_index)

    def __len__(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class Recording:
    """A long pressure trace for one (class, individual) case."""

    samples: np.ndarray
    sample_rate: float
    label: ClassLabel
    individual: int
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "samples", _readonly(self.samples))
        if self.samples.size == 0:
            raise ValueError("recording has no samples")
        if abs(self.duration * self.sample_rate - self.samples.size) > 1.0:
            raise ValueError(
                "duration and sample count disagree: "
                f"{self.duration} s * {self.sample_rate} Hz vs "
                f"{self.samples.size} samples"
            )


@dataclass(frozen=True)
class CycleMeta:
    """Scalar descriptors of a segmented recording's cycles."""

    impact_frequency: float
    p_drop: float

    def __post_init__(self):
        if self.impact_frequency <= 0:
            raise ValueError("impact_frequency must be positive")


@dataclass(frozen=True)
class NormStats:
    """Affine normalization parameters from an individual's NF cycles."""

    offset: float
    scale: float


@dataclass(frozen=True)
class SegmentationConfig:
    """Tuning knobs for onset detection and cycle filtering.

    Onsets are upward crossings of median + k_mad * MAD on the derivative
    of the smoothed signal; crossings closer than min_gap_fraction of the
    median raw gap are merged into the first of their run. Cycles whose
    length falls outside [min_length_factor, max_length_factor] times the
    median cycle length are dropped.
    """

    smooth_window: int = 3
    k_mad: float = 9.0
    min_gap_fraction: float = 0.5
    min_length_factor: float = 0.5
    max_length_factor: float = 2.0


@dataclass(frozen=True)
class PhaseWindow:
    """Sub-interval of a cycle given as fractions of its length."""

    start: float = 0.55
    end: float = 0.95


def _moving_average(x: np.ndarray, window: int) -> np.ndarray:
    if window <= 1:
        return x
    kernel = np.full(window, 1.0 / window)
    return np.convolve(x, kernel, mode="same")


def detect_onsets(rec: Recording, cfg: SegmentationConfig) -> tuple[np.ndarray, float]:
    """Indices of detected cycle onsets plus the threshold used."""
    smooth = _moving_average(rec.samples, cfg.smooth_window)
    deriv = np.diff(smooth)
    med = float(np.median(deriv))
    mad = float(np.median(np.abs(deriv - med)))
    threshold = med + cfg.k_mad * mad
    above = deriv > threshold
    crossings = np.flatnonzero(~above[:-1] & above[1:]) + 1
    if crossings.size >= 2:
        gaps = np.diff(crossings)
        min_gap = cfg.min_gap_fraction * float(np.median(gaps))
        kept = [int(crossings[0])]
        for c in crossings[1:]:
            if c - kept[-1] >= min_gap:
                kept.append(int(c))
        crossings = np.asarray(kept, dtype=np.int64)
    return crossings, threshold


def segment_recording(rec: Recording, cfg: SegmentationConfig | None = None) -> list[Cycle]:
    """Cut a recording into impact cycles at detected onsets.

    Cycles are returned in temporal order with consecutive cycle_index
    values; their spans are disjoint. Cycles with outlier lengths
    (relative to the median) are discarded before re-indexing.
    """
    cfg = cfg or SegmentationConfig()
    onsets, threshold = detect_onsets(rec, cfg)
    if onsets.size < 2:
        raise NoCyclesDetected(
            f"found {onsets.size} onsets, need at least 2", threshold
        )
    spans = [(int(a), int(b)) for a, b in zip(onsets[:-1], onsets[1:])]
    lengths = np.array([b - a for a, b in spans], dtype=np.float64)
    med_len = float(np.median(lengths))
    lo = cfg.min_length_factor * med_len
    hi = cfg.max_length_factor * med_len
    cycles = []
    for a, b in spans:
        if lo <= b - a <= hi:
            cycles.append(
                Cycle(
                    samples=rec.samples[a:b],
                    label=rec.label,
                    individual=rec.individual,
                    cycle_index=len(cycles),
                    sample_rate=rec.sample_rate,
                )
            )
    return cycles


def compute_norm_stats(reference_cycles: Sequence[Cycle]) -> NormStats:
    """Mean/standard-deviation stats over an individual's NF cycles."""
    if not reference_cycles:
        raise DegenerateStats("no reference cycles supplied")
    pooled = np.concatenate([c.samples for c in reference_cycles])
    offset = float(np.mean(pooled))
    scale = float(np.std(pooled))
    if not math.isfinite(scale) or scale <= 0:
        raise DegenerateStats(f"degenerate scale {scale}")
    return NormStats(offset=offset, scale=scale)


def normalize_cycle(c: Cycle, ref_stats: NormStats) -> Cycle:
    """Affine-normalize a cycle: (samples - offset) / scale."""
    if not math.isfinite(ref_stats.scale) or ref_stats.scale <= 0:
        raise DegenerateStats(f"scale must be positive, got {ref_stats.scale}")
    if not math.isfinite(ref_stats.offset):
        raise DegenerateStats("offset is non-finite")
    return Cycle(
        samples=(c.samples - ref_stats.offset) / ref_stats.scale,
        label=c.label,
        individual=c.individual,
        cycle_index=c.cycle_index,
        sample_rate=c.sample_rate,
    )


def _phase_indices(n: int, phase: PhaseWindow) -> tuple[int, int]:
    if not (0.0 <= phase.start < phase.end <= 1.0):
        raise WindowOutOfRange(
            f"phase window [{phase.start}, {phase.end}] must satisfy "
            "0 <= start < end <= 1"
        )
    i0 = int(round(phase.start * (n - 1)))
    i1 = int(round(phase.end * (n - 1)))
    if i1 >= n:
        raise WindowOutOfRange(f"phase window exceeds cycle of {n} samples")
    return i0, i1


def compute_p_drop(c: Cycle, phase: PhaseWindow | None = None) -> float:
    """Pressure change over the forward-acceleration phase window.

    Returns pressure at the window end minus pressure at the window start;
    negative values mean the pressure dropped.
    """
    phase = phase or PhaseWindow()
    i0, i1 = _phase_indices(len(c), phase)
    return float(c.samples[i1] - c.samples[i0])


def estimate_impact_frequency(cycles: Sequence[Cycle]) -> float:
    """Impact frequency as sample_rate over mean cycle length."""
    if len(cycles) < 2:
        raise InsufficientCycles(
            f"need at least 2 cycles, got {len(cycles)}"
        )
    rates = {c.sample_rate for c in cycles}
    if len(rates) != 1:
        raise InsufficientCycles("cycles come from recordings with different sample rates")
    mean_len = float(np.mean([len(c) for c in cycles]))
    return float(cycles[0].sample_rate) / mean_len
