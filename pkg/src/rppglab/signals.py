"""Core signal containers, resampling, spectra, and difference metrics.

Two resampling routes are provided for irregularly timestamped series:
``resample_aware`` interpolates on the recorded timestamps, while
``resample_naive`` first replaces the timestamps with an equally divided
grid (what a pipeline assuming constant frame rate effectively does) and
then interpolates.  Comparing the two quantifies how much frame-rate
irregularity distorts a signal and its spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TAPERS = ("rectangular", "hann")


def _readonly_1d(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimestampedSignal:
    """Intensity samples at explicit, possibly irregular, times (seconds)."""

    timestamps: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ts = _readonly_1d(self.timestamps, "timestamps")
        vals = _readonly_1d(self.values, "values")
        if ts.size < 2:
            raise ValueError("signal needs at least 2 samples")
        if ts.size != vals.size:
            raise ValueError(
                f"timestamps and values lengths differ ({ts.size} != {vals.size})"
            )
        if not np.all(np.diff(ts) > 0):
            raise ValueError("timestamps must be strictly increasing")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.timestamps.size

    @property
    def duration(self) -> float:
        return float(self.timestamps[-1] - self.timestamps[0])


@dataclass(frozen=True)
class UniformSignal:
    """Regularly sampled signal; sample k sits at ``start_time + k / sample_rate``."""

    start_time: float
    sample_rate: float
    values: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.start_time):
            raise ValueError("start_time must be finite")
        if not (self.sample_rate > 0):
            raise ValueError(f"sample_rate must be > 0, got {self.sample_rate}")
        vals = _readonly_1d(self.values, "values")
        if vals.size < 2:
            raise ValueError("signal needs at least 2 samples")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.values.size) / self.sample_rate

    @property
    def duration(self) -> float:
        return (self.values.size - 1) / self.sample_rate


@dataclass(frozen=True)
class PowerSpectrum:
    """One-sided power spectrum; bin k holds the mean-square power at ``k * frequency_step``."""

    frequency_step: float
    power: np.ndarray
    window_name: str

    def __post_init__(self):
        if not (self.frequency_step > 0):
            raise ValueError("frequency_step must be > 0")
        p = _readonly_1d(self.power, "power")
        if np.any(p < 0):
            raise ValueError("power must be nonnegative")
        object.__setattr__(self, "power", p)

    def __len__(self) -> int:
        return self.power.size

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(self.power.size) * self.frequency_step


@dataclass(frozen=True)
class DiffMetrics:
    """Element-wise difference summary between two same-grid arrays.

    ``relative_rms`` is the RMS of the raw difference divided by the RMS of
    the mean-removed reference (first argument), in percent.
    """

    max_abs: float
    rms: float
    relative_rms: float


def resample_aware(sig: TimestampedSignal, rate: float) -> UniformSignal:
    """Linearly interpolate onto a uniform grid using the recorded timestamps.

    The grid starts at the first timestamp and is clipped to the input span;
    no sample is extrapolated beyond the last timestamp.
    """
    if not (rate > 0):
        raise ValueError(f"rate must be > 0, got {rate}")
    t0 = float(sig.timestamps[0])
    t_end = float(sig.timestamps[-1])
    # Relative fudge keeps the grid-end sample when (t_end - t0) * rate is an
    # integer up to rounding, without ever stepping past t_end materially.
    n = int((t_end - t0) * rate * (1.0 + 1e-12) + 1e-9) + 1
    if n < 2:
        raise ValueError("rate too low: uniform grid has fewer than 2 samples")
    grid = t0 + np.arange(n) / rate
    values = np.interp(grid, sig.timestamps, sig.values)
    return UniformSignal(start_time=t0, sample_rate=float(rate), values=values)


def synthesize_uniform_timestamps(sig: TimestampedSignal) -> TimestampedSignal:
    """Replace timestamps with an equal division of [first, last]; values unchanged."""
    grid = np.linspace(sig.timestamps[0], sig.timestamps[-1], sig.timestamps.size)
    return TimestampedSignal(timestamps=grid, values=sig.values)


def resample_naive(sig: TimestampedSignal, rate: float) -> UniformSignal:
    """Resample as if the frame rate had been constant (timestamp-ignorant route)."""
    return resample_aware(synthesize_uniform_timestamps(sig), rate)


def _diff_metrics(a: np.ndarray, b: np.ndarray) -> DiffMetrics:
    diff = a - b
    max_abs = float(np.max(np.abs(diff)))
    rms = float(np.sqrt(np.mean(diff**2)))
    if rms == 0.0:
        relative = 0.0
    else:
        ref = float(np.sqrt(np.mean((a - np.mean(a)) ** 2)))
        relative = float("inf") if ref == 0.0 else 100.0 * rms / ref
    return DiffMetrics(max_abs=max_abs, rms=rms, relative_rms=relative)


def amplitude_difference(a: UniformSignal, b: UniformSignal) -> DiffMetrics:
    """Sample-wise difference metrics between two same-grid uniform signals."""
    if not np.isclose(a.sample_rate, b.sample_rate, rtol=1e-12, atol=0.0):
        raise ValueError(
            f"sample rates differ ({a.sample_rate} != {b.sample_rate})"
        )
    if len(a) != len(b):
        raise ValueError(f"lengths differ ({len(a)} != {len(b)})")
    return _diff_metrics(a.values, b.values)


def _taper_window(name: str, n: int) -> np.ndarray:
    if name == "rectangular":
        return np.ones(n)
    if name == "hann":
        return np.hanning(n)
    raise ValueError(f"unknown taper {name!r}; expected one of {TAPERS}")


def power_spectrum(sig: UniformSignal, taper: str = "hann") -> PowerSpectrum:
    """Mean-removed, tapered one-sided power spectrum.

    Normalized so that, for the rectangular taper, the bin powers sum to the
    mean square of the mean-removed signal (Parseval); a unit-amplitude sine
    on an exact bin puts 0.5 in that bin.
    """
    n = len(sig)
    if n < 16:
        raise ValueError(f"signal too short for a spectrum ({n} < 16 samples)")
    window = _taper_window(taper, n)
    x = (sig.values - np.mean(sig.values)) * window
    spec = np.fft.rfft(x)
    power = np.abs(spec) ** 2 / n**2
    power[1:] *= 2.0
    if n % 2 == 0:
        power[-1] /= 2.0
    return PowerSpectrum(
        frequency_step=sig.sample_rate / n, power=power, window_name=taper
    )


def spectral_difference(a: PowerSpectrum, b: PowerSpectrum) -> DiffMetrics:
    """Bin-wise difference metrics between two spectra on the same grid."""
    if not np.isclose(a.frequency_step, b.frequency_step, rtol=1e-12, atol=0.0):
        raise ValueError(
            f"frequency steps differ ({a.frequency_step} != {b.frequency_step})"
        )
    if len(a) != len(b):
        raise ValueError(f"bin counts differ ({len(a)} != {len(b)})")
    return _diff_metrics(a.power, b.power)


def dominant_frequency(spec: PowerSpectrum, band: tuple[float, float]) -> float:
    """Frequency of the strongest bin inside ``band``; ties go to the lower frequency."""
    low, high = band
    if not (low < high):
        raise ValueError(f"band must satisfy low < high, got {band}")
    f_max = (len(spec) - 1) * spec.frequency_step
    if low < 0 or high > f_max:
        raise ValueError(f"band {band} outside spectrum range [0, {f_max}]")
    freqs = spec.frequencies
    mask = (freqs >= low) & (freqs <= high)
    if not np.any(mask):
        raise ValueError(f"band {band} contains no frequency bins")
    idx = np.flatnonzero(mask)
    peak = idx[np.argmax(spec.power[idx])]  # argmax takes the first maximum
    return float(freqs[peak])
