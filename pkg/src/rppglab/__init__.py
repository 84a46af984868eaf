"""Desk-scale evaluation of camera-capture confounds on remote pulse signals."""

from .capture import (
    CameraModel,
    JitterSpec,
    Rect,
    RegionLayout,
    Waveform,
    capture_region_signals,
    generate_frame_timestamps,
    region_mean_offsets,
    scan_offset,
)
from .hrwindow import (
    BeatSeries,
    BoxplotRow,
    CellStats,
    DegenerateWindowError,
    DiffMatrix,
    WindowSpec,
    boxplot_stats,
    hr_of_window,
    merge_matrices,
    relative_difference,
    rr_intervals,
    window_diff_matrix,
)
from .phase import (
    PhaseEstimate,
    axis_shift_report,
    degrees_to_seconds,
    estimate_phase_shift,
    median_shift,
    seconds_to_degrees,
    track_phase_shift,
)
from .signals import (
    DiffMetrics,
    PowerSpectrum,
    TimestampedSignal,
    UniformSignal,
    amplitude_difference,
    dominant_frequency,
    power_spectrum,
    resample_aware,
    resample_naive,
    spectral_difference,
    synthesize_uniform_timestamps,
)
from .synth import pulse_waveform, sum_of_sines

__version__ = "0.1.0"
