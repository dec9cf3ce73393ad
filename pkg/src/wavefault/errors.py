"""Exception hierarchy for the wavefault package.

All domain errors derive from :class:`WavefaultError` so callers (and the
CLI) can distinguish validation problems from genuine bugs.
"""

from __future__ import annotations


class WavefaultError(Exception):
    """Base class for all errors raised by this package."""


class NoCyclesDetected(WavefaultError):
    """Fewer than two cycle onsets were found in a recording."""

    def __init__(self, message: str, threshold: float):
        super().__init__(f"{message} (detection threshold {threshold:.6g})")
        self.threshold = threshold


class DegenerateStats(WavefaultError):
    """Normalization statistics with non-positive or non-finite scale."""


class WindowOutOfRange(WavefaultError):
    """A phase window does not fit inside the cycle."""


class InsufficientCycles(WavefaultError):
    """Too few cycles for the requested estimate."""


class EmptyInput(WavefaultError):
    """A sample sequence is empty or contains non-finite values."""


class BandTooNarrow(WavefaultError):
    """A warping band narrower than the length difference admits no path."""


class LengthMismatch(WavefaultError):
    """Element-wise comparison of sequences with different lengths."""


class SelfComparison(WavefaultError):
    """A cycle was compared against itself as its own reference."""


class InsufficientReferences(WavefaultError):
    """Not enough reference feature vectors for a (class, kind) slot."""

    def __init__(self, class_code: str, kind: str, have: int, need: int):
        super().__init__(
            f"class {class_code}, kind {kind}: have {have} reference "
            f"vectors, need {need}"
        )
        self.class_code = class_code
        self.kind = kind
        self.have = have
        self.need = need


class KindMismatch(WavefaultError):
    """A feature of one kind was supplied where another was expected."""


class MissingKind(WavefaultError):
    """A required feature kind is absent for a cycle."""


class MissingClass(WavefaultError):
    """Training data lacks exemplars for one or more classes."""


class LayoutMismatch(WavefaultError):
    """Feature vectors with inconsistent layouts were mixed."""


class EmptyBatch(WavefaultError):
    """A batch prediction was requested over zero cycles."""


class InvalidConfig(WavefaultError):
    """A generator or experiment configuration is not usable."""


class ManifestInvalid(WavefaultError):
    """A dataset manifest fails schema or consistency checks."""


class ClassImbalanceUnfixable(WavefaultError):
    """Class balancing impossible because a class has no usable cycles."""
