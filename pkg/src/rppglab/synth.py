"""Deterministic synthesis of source waveforms for simulation and tests."""

from __future__ import annotations

import numpy as np

from .signals import UniformSignal

# Harmonic amplitudes/phases loosely shaped like a contact pulse curve:
# strong fundamental, weak upper harmonics (systolic upstroke + dicrotic bump).
PULSE_HARMONICS = (1.0, 0.3, 0.1)
PULSE_PHASES = (0.0, 0.8, 1.7)


def sum_of_sines(
    components: list[tuple[float, float]],
    duration: float,
    rate: float,
    phases: list[float] | None = None,
) -> UniformSignal:
    """Sum of sines given as (frequency_hz, amplitude) pairs, starting at t = 0."""
    if not components:
        raise ValueError("need at least one (frequency, amplitude) component")
    if not (duration > 0 and rate > 0):
        raise ValueError("duration and rate must be positive")
    if phases is None:
        phases = [0.0] * len(components)
    if len(phases) != len(components):
        raise ValueError("one phase per component required")
    n = int(round(duration * rate))
    t = np.arange(n) / rate
    values = np.zeros(n)
    for (freq, amp), phase in zip(components, phases):
        if freq <= 0:
            raise ValueError(f"component frequency must be > 0, got {freq}")
        values += amp * np.sin(2 * np.pi * freq * t + phase)
    return UniformSignal(start_time=0.0, sample_rate=float(rate), values=values)


def pulse_waveform(bpm: float, duration: float, rate: float) -> UniformSignal:
    """Harmonic-rich periodic pulse at the given heart rate, amplitude ~1."""
    if not (bpm > 0):
        raise ValueError(f"bpm must be > 0, got {bpm}")
    f0 = bpm / 60.0
    components = [(f0 * (k + 1), amp) for k, amp in enumerate(PULSE_HARMONICS)]
    return sum_of_sines(components, duration, rate, phases=list(PULSE_PHASES))
