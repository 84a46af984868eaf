"""Cross-spectral estimation of time shift between two pulse signals.

The shift is read from the argument of the cross-spectrum at the dominant
in-band frequency, which resolves delays well below one sample period.
Sign convention: a positive shift means the second signal lags the first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.signal

from .signals import (
    PowerSpectrum,
    TimestampedSignal,
    UniformSignal,
    dominant_frequency,
    resample_aware,
)

LOW_COHERENCE = 0.5  # estimates below this are flagged, not rejected


@dataclass(frozen=True)
class PhaseEstimate:
    """Time shift at the dominant frequency, with its angular equivalent."""

    shift_seconds: float
    dominant_freq: float
    shift_degrees: float
    quality: float  # magnitude-squared coherence at the dominant frequency

    @property
    def flagged(self) -> bool:
        return self.quality < LOW_COHERENCE


def _mean_removed_tapered(values: np.ndarray) -> np.ndarray:
    return (values - np.mean(values)) * np.hanning(values.size)


def _coherence_at(a: UniformSignal, b: UniformSignal, freq: float) -> float:
    n = len(a)
    nperseg = min(n, max(16, n // 2))
    freqs, coh = scipy.signal.coherence(
        a.values, b.values, fs=a.sample_rate, window="hann", nperseg=nperseg
    )
    value = float(coh[np.argmin(np.abs(freqs - freq))])
    if not np.isfinite(value):
        return 0.0
    return min(max(value, 0.0), 1.0)


def estimate_phase_shift(
    a: UniformSignal, b: UniformSignal, band: tuple[float, float]
) -> PhaseEstimate:
    """Time shift of ``b`` relative to ``a`` at the dominant in-band frequency.

    The result is wrapped into (-T/2, T/2] where T is the dominant period.
    Raises if the grids differ, the signals are shorter than four periods of
    the band's lower edge, or the band holds no power (unpulsed inputs).
    """
    if not np.isclose(a.sample_rate, b.sample_rate, rtol=1e-12, atol=0.0):
        raise ValueError(f"sample rates differ ({a.sample_rate} != {b.sample_rate})")
    if len(a) != len(b):
        raise ValueError(f"lengths differ ({len(a)} != {len(b)})")
    n = len(a)
    rate = a.sample_rate
    band_low = band[0]
    if band_low <= 0:
        raise ValueError(f"band lower edge must be > 0, got {band_low}")
    if n / rate < 4.0 / band_low:
        raise ValueError(
            f"signals span {n / rate:.3f} s; need at least four periods of "
            f"{band_low} Hz ({4.0 / band_low:.3f} s)"
        )
    spec_a = np.fft.rfft(_mean_removed_tapered(a.values))
    spec_b = np.fft.rfft(_mean_removed_tapered(b.values))
    avg_power = (np.abs(spec_a) ** 2 + np.abs(spec_b) ** 2) / 2
    spectrum = PowerSpectrum(frequency_step=rate / n, power=avg_power, window_name="hann")
    freq = dominant_frequency(spectrum, band)
    k = int(round(freq / spectrum.frequency_step))
    total = float(np.sum(avg_power))
    if total <= 0.0 or avg_power[k] < 1e-12 * total:
        raise ValueError(f"no power inside band {band}: signals appear unpulsed")
    cross = spec_a[k] * np.conj(spec_b[k])
    shift = float(np.arctan2(cross.imag, cross.real)) / (2 * np.pi * freq)
    return PhaseEstimate(
        shift_seconds=shift,
        dominant_freq=freq,
        shift_degrees=shift * freq * 360.0,
        quality=_coherence_at(a, b, freq),
    )


def track_phase_shift(
    a: UniformSignal,
    b: UniformSignal,
    window: float,
    step: float,
    band: tuple[float, float],
) -> list[tuple[float, PhaseEstimate]]:
    """Sliding-window shift estimates, each timestamped at its window center."""
    if not (window > 0 and step > 0):
        raise ValueError("window and step must be positive")
    if window < 4.0 / band[0]:
        raise ValueError(
            f"window {window} s shorter than four periods of {band[0]} Hz"
        )
    rate = a.sample_rate
    w_samples = int(round(window * rate))
    if w_samples > len(a):
        raise ValueError(f"window {window} s longer than the signal ({len(a) / rate} s)")
    s_samples = max(1, int(round(step * rate)))
    track = []
    for start in range(0, len(a) - w_samples + 1, s_samples):
        sl = slice(start, start + w_samples)
        win_a = UniformSignal(a.start_time + start / rate, rate, a.values[sl])
        win_b = UniformSignal(b.start_time + start / rate, rate, b.values[sl])
        center = a.start_time + (start + w_samples / 2) / rate
        track.append((center, estimate_phase_shift(win_a, win_b, band)))
    return track


def median_shift(track: list[tuple[float, PhaseEstimate]]) -> float:
    """Median shift over a track; the robust summary used for reporting."""
    if not track:
        raise ValueError("empty track")
    return float(np.median([est.shift_seconds for _, est in track]))


def seconds_to_degrees(shift: float, heart_rate_bpm: float) -> float:
    """Express a time shift as phase angle at the given heart rate."""
    if not (heart_rate_bpm > 0):
        raise ValueError(f"heart rate must be > 0, got {heart_rate_bpm}")
    return shift * (heart_rate_bpm / 60.0) * 360.0


def degrees_to_seconds(angle: float, heart_rate_bpm: float) -> float:
    """Inverse of :func:`seconds_to_degrees`."""
    if not (heart_rate_bpm > 0):
        raise ValueError(f"heart rate must be > 0, got {heart_rate_bpm}")
    return angle / ((heart_rate_bpm / 60.0) * 360.0)


def axis_shift_report(
    regions: dict[str, TimestampedSignal],
    rate: float,
    band: tuple[float, float],
) -> dict[str, PhaseEstimate]:
    """Shift along each frame axis from the four region signals.

    ``vertical`` compares top against bottom, ``horizontal`` left against
    right; positive means the second region lags the first.  All regions must
    share identical frame timestamps.
    """
    missing = {"top", "bottom", "left", "right"} - regions.keys()
    if missing:
        raise ValueError(f"missing region signals: {sorted(missing)}")
    reference = regions["top"].timestamps
    for name, sig in regions.items():
        if not np.array_equal(sig.timestamps, reference):
            raise ValueError(f"region {name!r} does not share the common timestamps")
    resampled = {name: resample_aware(sig, rate) for name, sig in regions.items()}
    return {
        "vertical": estimate_phase_shift(resampled["top"], resampled["bottom"], band),
        "horizontal": estimate_phase_shift(resampled["left"], resampled["right"], band),
    }
