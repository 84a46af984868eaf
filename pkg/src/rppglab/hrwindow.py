"""Windowed heart-rate ground truth and its dependence on window size.

Heart rate over a window is the reciprocal of the mean RR interval between
beats inside it (a zero-length window means a single RR interval).  The
nested sweep partitions a record into outer windows, slides shorter inner
windows through each, and accumulates the relative HR differences per
(outer, inner) size pair into a lower-triangular matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signals import _readonly_1d

GROUPINGS = ("by-pair", "by-size-gap")


class DegenerateWindowError(ValueError):
    """A window holds fewer than two beats, so no HR can be computed."""


@dataclass(frozen=True)
class BeatSeries:
    """Annotated heartbeat times in seconds, strictly increasing."""

    beat_times: np.ndarray

    def __post_init__(self):
        times = _readonly_1d(self.beat_times, "beat_times")
        if times.size < 2:
            raise ValueError("need at least 2 beats")
        if not np.all(np.diff(times) > 0):
            raise ValueError("beat times must be strictly increasing")
        object.__setattr__(self, "beat_times", times)

    def __len__(self) -> int:
        return self.beat_times.size

    @property
    def duration(self) -> float:
        return float(self.beat_times[-1] - self.beat_times[0])


@dataclass(frozen=True)
class WindowSpec:
    """Window sizes (seconds) and the sliding step of the inner sweep."""

    sizes: tuple[float, ...] = tuple(float(s) for s in range(0, 65, 5))
    step: float = 5.0

    def __post_init__(self):
        sizes = tuple(float(s) for s in self.sizes)
        if len(sizes) < 2:
            raise ValueError("need at least two window sizes")
        if any(s < 0 for s in sizes):
            raise ValueError("window sizes must be >= 0")
        if list(sizes) != sorted(set(sizes)):
            raise ValueError("window sizes must be strictly ascending")
        if not (self.step > 0):
            raise ValueError(f"step must be > 0, got {self.step}")
        object.__setattr__(self, "sizes", sizes)


@dataclass(frozen=True)
class CellStats:
    """Distribution of relative HR differences for one (s1, s2) pair."""

    mean: float
    count: int
    q1: float
    median: float
    q3: float
    values: np.ndarray

    @classmethod
    def from_values(cls, values) -> "CellStats":
        arr = _readonly_1d(values, "values")
        q1, median, q3 = np.percentile(arr, [25.0, 50.0, 75.0])
        return cls(
            mean=float(np.mean(arr)),
            count=arr.size,
            q1=float(q1),
            median=float(median),
            q3=float(q3),
            values=arr,
        )


@dataclass(frozen=True)
class DiffMatrix:
    """Lower-triangular matrix of relative HR differences, plus raw samples."""

    sizes: tuple[float, ...]
    cells: dict[tuple[float, float], CellStats]
    skipped_windows: int

    def pairs(self) -> list[tuple[float, float]]:
        return sorted(self.cells)

    def cell(self, s1: float, s2: float) -> CellStats:
        return self.cells[(float(s1), float(s2))]


@dataclass(frozen=True)
class BoxplotRow:
    """Plot-ready distribution summary for one group of matrix cells."""

    label: str
    count: int
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float


def rr_intervals(beats: BeatSeries) -> np.ndarray:
    """Consecutive inter-beat intervals in seconds."""
    return np.diff(beats.beat_times)


def hr_of_window(
    beats: BeatSeries, window_start: float, size: float
) -> tuple[float, int]:
    """Heart rate (bpm) over [window_start, window_start + size), with beat count.

    A size of 0 designates the single RR interval containing ``window_start``.
    Raises :class:`DegenerateWindowError` when the window holds fewer than two
    beats; callers running sweeps tally those rather than aborting.
    """
    if size < 0:
        raise ValueError(f"window size must be >= 0, got {size}")
    times = beats.beat_times
    if size == 0:
        idx = int(np.searchsorted(times, window_start, side="right")) - 1
        if idx < 0 or idx + 1 >= times.size:
            raise DegenerateWindowError(
                f"no RR interval contains t={window_start}"
            )
        return 60.0 / float(times[idx + 1] - times[idx]), 2
    lo = int(np.searchsorted(times, window_start, side="left"))
    hi = int(np.searchsorted(times, window_start + size, side="left"))
    n = hi - lo
    if n < 2:
        raise DegenerateWindowError(
            f"window [{window_start}, {window_start + size}) holds {n} beat(s)"
        )
    return 60.0 * (n - 1) / float(times[hi - 1] - times[lo]), n


def relative_difference(hr_outer: float, hr_inner: float) -> float:
    """Relative HR difference in percent, referenced to the outer window."""
    if not (hr_outer > 0):
        raise ValueError(f"outer HR must be > 0, got {hr_outer}")
    return abs(hr_outer - hr_inner) / hr_outer * 100.0


def window_diff_matrix(beats: BeatSeries, spec: WindowSpec) -> DiffMatrix:
    """Accumulate relative HR differences for every s1 > s2 size pair.

    Outer windows partition the record from the first beat in consecutive,
    non-overlapping s1-second spans (a trailing partial span is dropped);
    inner windows slide at ``spec.step``.  Windows with fewer than two beats
    are skipped and tallied.
    """
    times = beats.beat_times
    t0, t_last = float(times[0]), float(times[-1])
    raw: dict[tuple[float, float], list[float]] = {}
    skipped = 0
    for s1 in spec.sizes:
        inner_sizes = [s2 for s2 in spec.sizes if s2 < s1]
        if s1 <= 0 or not inner_sizes:
            continue
        n_outer = int((t_last - t0) / s1 + 1e-9)
        for m in range(n_outer):
            start = t0 + m * s1
            try:
                hr_outer, _ = hr_of_window(beats, start, s1)
            except DegenerateWindowError:
                skipped += 1
                continue
            for s2 in inner_sizes:
                values = raw.setdefault((s1, s2), [])
                if s2 == 0:
                    lo = int(np.searchsorted(times, start, side="left"))
                    hi = int(np.searchsorted(times, start + s1, side="left"))
                    for rr in np.diff(times[lo:hi]):
                        values.append(relative_difference(hr_outer, 60.0 / float(rr)))
                else:
                    i = 0
                    while start + i * spec.step + s2 <= start + s1 + 1e-9:
                        w_start = start + i * spec.step
                        i += 1
                        try:
                            hr_inner, _ = hr_of_window(beats, w_start, s2)
                        except DegenerateWindowError:
                            skipped += 1
                            continue
                        values.append(relative_difference(hr_outer, hr_inner))
    cells = {
        key: CellStats.from_values(vals) for key, vals in raw.items() if vals
    }
    if not cells:
        raise ValueError("no window pair produced a value; record too short or sparse")
    return DiffMatrix(sizes=spec.sizes, cells=cells, skipped_windows=skipped)


def merge_matrices(matrices: list[DiffMatrix]) -> DiffMatrix:
    """Pool several records' matrices cell-wise (weighted by sample count)."""
    if not matrices:
        raise ValueError("nothing to merge")
    sizes = matrices[0].sizes
    if any(m.sizes != sizes for m in matrices):
        raise ValueError("matrices use different window size grids")
    pooled: dict[tuple[float, float], list[float]] = {}
    for matrix in matrices:
        for key, stats in matrix.cells.items():
            pooled.setdefault(key, []).extend(stats.values.tolist())
    cells = {key: CellStats.from_values(vals) for key, vals in pooled.items()}
    return DiffMatrix(
        sizes=sizes,
        cells=cells,
        skipped_windows=sum(m.skipped_windows for m in matrices),
    )


def boxplot_stats(matrix: DiffMatrix, grouping: str = "by-pair") -> list[BoxplotRow]:
    """Distribution summaries per cell or pooled per size gap (plot-ready rows)."""
    if grouping not in GROUPINGS:
        raise ValueError(f"grouping must be one of {GROUPINGS}, got {grouping!r}")
    if not matrix.cells:
        raise ValueError("empty matrix")
    groups: dict[object, list[float]] = {}
    if grouping == "by-pair":
        for (s1, s2), stats in sorted(matrix.cells.items()):
            groups[(s1, s2)] = stats.values.tolist()
        labels = {key: f"s1={key[0]:g},s2={key[1]:g}" for key in groups}
    else:
        for (s1, s2), stats in sorted(matrix.cells.items()):
            gap = round(s1 - s2, 9)
            groups.setdefault(gap, []).extend(stats.values.tolist())
        labels = {key: f"gap={key:g}" for key in groups}
    rows = []
    for key in sorted(groups):
        vals = np.asarray(groups[key])
        q1, median, q3 = np.percentile(vals, [25.0, 50.0, 75.0])
        rows.append(
            BoxplotRow(
                label=labels[key],
                count=vals.size,
                minimum=float(np.min(vals)),
                q1=float(q1),
                median=float(median),
                q3=float(q3),
                maximum=float(np.max(vals)),
            )
        )
    return rows
