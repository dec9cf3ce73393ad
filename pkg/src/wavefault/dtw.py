"""Dynamic Time Warping distance and warping-path extraction.

The alignment cost is the sum of squared differences of aligned samples,
with a single square root applied to the total, so the returned distance
for the degenerate one-pair alignment of ``[a]`` vs ``[b]`` is ``|a - b|``.
Steps allowed from a path position are advance-first, advance-second, and
the diagonal; paths run from the first pair of indices to the last.

Indices in :class:`WarpingPath` are 0-based. An optional band constraint
restricts the alignment to ``|i - j| <= band``, which requires
``band >= |m - n|`` to keep the endpoint reachable.

All functions are pure; the numba kernels release the GIL so callers may
evaluate many alignments from a thread pool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BandTooNarrow, EmptyInput

__all__ = ["WarpingPath", "DtwResult", "dtw", "dtw_distance_only"]

_NO_BAND = -1  # sentinel for the kernels; numba dislikes Optional[int]


@dataclass(frozen=True)
class WarpingPath:
    """Sequence of aligned index pairs (p, q), both 0-based.

    Invariants: the first pair is (0, 0), the last is (m-1, n-1), each
    successor advances one or both indices by exactly one, and the number
    of pairs k satisfies max(m, n) <= k <= m + n - 1.
    """

    p: np.ndarray
    q: np.ndarray
    m: int
    n: int

    def __len__(self) -> int:
        return len(self.p)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.p.tolist(), self.q.tolist()))

    def is_valid(self) -> bool:
        """Check boundary, step and length conditions."""
        p, q = self.p, self.q
        k = len(p)
        if k != len(q) or k == 0:
            return False
        if (p[0], q[0]) != (0, 0) or (p[-1], q[-1]) != (self.m - 1, self.n - 1):
            return False
        dp = np.diff(p)
        dq = np.diff(q)
        if not (np.all(dp >= 0) and np.all(dq >= 0)):
            return False
        if not (np.all(dp <= 1) and np.all(dq <= 1) and np.all(dp + dq >= 1)):
            return False
        return max(self.m, self.n) <= k <= self.m + self.n - 1


@dataclass(frozen=True)
class DtwResult:
    """Minimal alignment distance together with a path achieving it."""

    distance: float
    path: WarpingPath

    def recompute_distance(self, x: np.ndarray, y: np.ndarray) -> float:
        """Distance recomputed from the stored path; must match to 1e-9."""
        d = x[self.path.p] - y[self.path.q]
        return math.sqrt(float(np.dot(d, d)))


@njit(cache=True, nogil=True)
def _accumulate_full(x, y, band):
    m = x.shape[0]
    n = y.shape[0]
    acc = np.full((m, n), np.inf)
    for i in range(m):
        lo = 0
        hi = n
        if band >= 0:
            lo = max(0, i - band)
            hi = min(n, i + band + 1)
        for j in range(lo, hi):
            d = x[i] - y[j]
            cost = d * d
            if i == 0 and j == 0:
                best = 0.0
            else:
                best = np.inf
                if i > 0 and j > 0 and acc[i - 1, j - 1] < best:
                    best = acc[i - 1, j - 1]
                if i > 0 and acc[i - 1, j] < best:
                    best = acc[i - 1, j]
                if j > 0 and acc[i, j - 1] < best:
                    best = acc[i, j - 1]
            acc[i, j] = cost + best
    return acc


@njit(cache=True, nogil=True)
def _accumulate_last(x, y, band):
    # Two-row variant; per-cell arithmetic identical to _accumulate_full
    # so both return bit-equal totals.
    m = x.shape[0]
    n = y.shape[0]
    prev = np.full(n, np.inf)
    curr = np.full(n, np.inf)
    for i in range(m):
        lo = 0
        hi = n
        if band >= 0:
            lo = max(0, i - band)
            hi = min(n, i + band + 1)
        for j in range(n):
            curr[j] = np.inf
        for j in range(lo, hi):
            d = x[i] - y[j]
            cost = d * d
            if i == 0 and j == 0:
                best = 0.0
            else:
                best = np.inf
                if i > 0 and j > 0 and prev[j - 1] < best:
                    best = prev[j - 1]
                if i > 0 and prev[j] < best:
                    best = prev[j]
                if j > 0 and curr[j - 1] < best:
                    best = curr[j - 1]
            curr[j] = cost + best
        prev, curr = curr, prev
    return prev[n - 1]


@njit(cache=True, nogil=True)
def _backtrack(acc):
    # Ties prefer the diagonal, then the step advancing the first
    # sequence, then the second, making paths deterministic.
    m, n = acc.shape
    k_max = m + n - 1
    p = np.empty(k_max, dtype=np.int64)
    q = np.empty(k_max, dtype=np.int64)
    i = m - 1
    j = n - 1
    pos = k_max
    while True:
        pos -= 1
        p[pos] = i
        q[pos] = j
        if i == 0 and j == 0:
            break
        c_diag = acc[i - 1, j - 1] if i > 0 and j > 0 else np.inf
        c_up = acc[i - 1, j] if i > 0 else np.inf
        c_left = acc[i, j - 1] if j > 0 else np.inf
        best = min(c_diag, min(c_up, c_left))
        if c_diag == best:
            i -= 1
            j -= 1
        elif c_up == best:
            i -= 1
        else:
            j -= 1
    return p[pos:], q[pos:]


def _as_series(v, name: str) -> np.ndarray:
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise EmptyInput(f"{name} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise EmptyInput(f"{name} contains non-finite values")
    return arr


def _check_band(band: int | None, m: int, n: int) -> int:
    if band is None:
        return _NO_BAND
    band = int(band)
    if band < abs(m - n):
        raise BandTooNarrow(
            f"band {band} < length difference {abs(m - n)}: no feasible path"
        )
    return band


def dtw(x, y, band: int | None = None) -> DtwResult:
    """Align two sample sequences, returning distance and warping path."""
    xs = _as_series(x, "x")
    ys = _as_series(y, "y")
    b = _check_band(band, len(xs), len(ys))
    acc = _accumulate_full(xs, ys, b)
    distance = math.sqrt(acc[-1, -1])
    p, q = _backtrack(acc)
    path = WarpingPath(p=p, q=q, m=len(xs), n=len(ys))
    return DtwResult(distance=distance, path=path)


def dtw_distance_only(x, y, band: int | None = None) -> float:
    """Alignment distance without the path; equals ``dtw(...).distance``.

    Uses two-row accumulation, so memory stays O(n) for long inputs.
    """
    xs = _as_series(x, "x")
    ys = _as_series(y, "y")
    b = _check_band(band, len(xs), len(ys))
    return math.sqrt(_accumulate_last(xs, ys, b))
