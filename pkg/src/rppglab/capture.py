"""Virtual capture of a spatially uniform modulated light source.

A progressive-scan camera reads out a frame over ``readout_time`` seconds,
so pixels along the scan axis sample the source at slightly different
instants.  Because the simulated source is uniform over its surface, the
average intensity of a region reduces to averaging the source waveform over
that region's scan-offset range; no per-pixel image is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signals import TimestampedSignal, UniformSignal

JITTER_KINDS = ("none", "uniform", "gaussian", "explicit")
SCAN_AXES = ("vertical", "horizontal")
REGIONS = ("top", "bottom", "left", "right")

_DOMAIN_SLACK = 1e-9  # seconds of tolerance at the waveform boundaries


@dataclass(frozen=True)
class Waveform:
    """Brightness of the light source over time.

    Values between source samples are linearly interpolated; queries outside
    the source's time span raise ``ValueError``.
    """

    source: UniformSignal

    @property
    def domain(self) -> tuple[float, float]:
        return self.source.start_time, self.source.start_time + self.source.duration

    def evaluate(self, times) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        t0, t_end = self.domain
        if times.size and (
            times.min() < t0 - _DOMAIN_SLACK or times.max() > t_end + _DOMAIN_SLACK
        ):
            raise ValueError(
                f"query range [{times.min()}, {times.max()}] exceeds waveform "
                f"domain [{t0}, {t_end}]"
            )
        return np.interp(times, self.source.times, self.source.values)


@dataclass(frozen=True)
class JitterSpec:
    """Frame-timestamp irregularity model.

    ``uniform``: each timestamp is offset from the nominal grid by an
    independent draw from ±magnitude.  ``gaussian``: magnitude is the target
    standard deviation of the inter-frame intervals (offsets are drawn with
    std magnitude/sqrt(2) and clipped to half the frame interval so that
    timestamps stay monotonic).  ``explicit`` replays a probed timestamp list.
    """

    kind: str = "none"
    magnitude: float = 0.0
    timestamps: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in JITTER_KINDS:
            raise ValueError(f"unknown jitter kind {self.kind!r}; expected one of {JITTER_KINDS}")
        if self.kind in ("uniform", "gaussian"):
            if not (self.magnitude >= 0) or not np.isfinite(self.magnitude):
                raise ValueError(f"jitter magnitude must be finite and >= 0, got {self.magnitude}")
        if self.kind == "explicit":
            if self.timestamps is None:
                raise ValueError("explicit jitter requires a timestamp list")
            ts = np.array(self.timestamps, dtype=float)
            if ts.size < 2 or not np.all(np.isfinite(ts)) or not np.all(np.diff(ts) > 0):
                raise ValueError("explicit timestamps must be >= 2 finite, strictly increasing values")
            ts.setflags(write=False)
            object.__setattr__(self, "timestamps", ts)


@dataclass(frozen=True)
class CameraModel:
    """Progressive-scan camera: nominal frame rate, readout, scan axis, resolution."""

    nominal_fps: float = 30.0
    readout_time: float | None = None  # None means the full frame interval
    scan_axis: str = "vertical"
    width: int = 640
    height: int = 480
    jitter: JitterSpec = field(default_factory=JitterSpec)

    def __post_init__(self):
        if not (self.nominal_fps > 0):
            raise ValueError(f"nominal_fps must be > 0, got {self.nominal_fps}")
        interval = 1.0 / self.nominal_fps
        readout = interval if self.readout_time is None else float(self.readout_time)
        if not (0.0 <= readout <= interval):
            raise ValueError(
                f"readout_time {readout} outside [0, frame interval {interval}]"
            )
        object.__setattr__(self, "readout_time", readout)
        if self.scan_axis not in SCAN_AXES:
            raise ValueError(f"scan_axis must be one of {SCAN_AXES}, got {self.scan_axis!r}")
        if self.width < 4 or self.height < 4:
            raise ValueError(f"resolution must be at least 4x4, got {self.width}x{self.height}")
        if self.jitter.kind in ("uniform", "gaussian") and self.jitter.magnitude >= interval / 2:
            raise ValueError(
                f"jitter magnitude {self.jitter.magnitude} must stay below half "
                f"the frame interval ({interval / 2}) to keep timestamps monotonic"
            )

    @property
    def frame_interval(self) -> float:
        return 1.0 / self.nominal_fps

    def rotated(self) -> "CameraModel":
        """Same camera with the scan axis turned by 90 degrees."""
        axis = "horizontal" if self.scan_axis == "vertical" else "vertical"
        return CameraModel(
            nominal_fps=self.nominal_fps,
            readout_time=self.readout_time,
            scan_axis=axis,
            width=self.width,
            height=self.height,
            jitter=self.jitter,
        )


@dataclass(frozen=True)
class Rect:
    """Half-open pixel rectangle [x0, x1) x [y0, y1)."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError(f"rectangle {self} is empty")
        if min(self.x0, self.y0) < 0:
            raise ValueError(f"rectangle {self} has negative coordinates")


@dataclass(frozen=True)
class RegionLayout:
    """The four analysis regions of the lamp surface."""

    top: Rect
    bottom: Rect
    left: Rect
    right: Rect

    @classmethod
    def halves(cls, width: int, height: int) -> "RegionLayout":
        """Default layout: top/bottom half-frames and left/right half-frames."""
        return cls(
            top=Rect(0, 0, width, height // 2),
            bottom=Rect(0, height // 2, width, height),
            left=Rect(0, 0, width // 2, height),
            right=Rect(width // 2, 0, width, height),
        )

    def regions(self) -> dict[str, Rect]:
        return {"top": self.top, "bottom": self.bottom, "left": self.left, "right": self.right}

    def validate_within(self, width: int, height: int) -> None:
        for name, rect in self.regions().items():
            if rect.x1 > width or rect.y1 > height:
                raise ValueError(
                    f"region {name} {rect} exceeds the {width}x{height} frame"
                )


def generate_frame_timestamps(model: CameraModel, duration: float, seed: int) -> np.ndarray:
    """Frame timestamps for ``duration`` seconds of capture, first frame at 0.

    Deterministic for a fixed seed.  Explicit jitter returns the stored list
    unchanged (duration and seed are ignored).
    """
    jitter = model.jitter
    if jitter.kind == "explicit":
        return np.array(jitter.timestamps)
    if not (duration > 2 * model.frame_interval):
        raise ValueError(
            f"duration {duration} must exceed two frame intervals ({2 * model.frame_interval})"
        )
    n = int(round(duration * model.nominal_fps))
    grid = np.arange(n) / model.nominal_fps
    if jitter.kind == "none" or jitter.magnitude == 0.0:
        return grid
    rng = np.random.default_rng(seed)
    if jitter.kind == "uniform":
        offsets = rng.uniform(-jitter.magnitude, jitter.magnitude, n)
    else:  # gaussian
        half = model.frame_interval / 2
        offsets = rng.normal(0.0, jitter.magnitude / np.sqrt(2.0), n)
        offsets = np.clip(offsets, -half * (1 - 1e-9), half * (1 - 1e-9))
    ts = grid + offsets
    ts -= ts[0]
    if not np.all(np.diff(ts) > 0):
        raise RuntimeError("internal error: jittered timestamps not monotonic")
    return ts


def scan_offset(model: CameraModel, row: int, col: int) -> float:
    """Capture delay of a pixel relative to the frame timestamp."""
    if not (0 <= row < model.height and 0 <= col < model.width):
        raise ValueError(
            f"pixel ({row}, {col}) outside the {model.width}x{model.height} frame"
        )
    if model.scan_axis == "vertical":
        return model.readout_time * row / (model.height - 1)
    return model.readout_time * col / (model.width - 1)


def _region_offsets(model: CameraModel, rect: Rect, n_offsets: int) -> np.ndarray:
    if model.scan_axis == "vertical":
        lo, hi, extent = rect.y0, rect.y1 - 1, rect.y1 - rect.y0
        denom = model.height - 1
    else:
        lo, hi, extent = rect.x0, rect.x1 - 1, rect.x1 - rect.x0
        denom = model.width - 1
    coords = np.linspace(lo, hi, min(n_offsets, extent))
    return model.readout_time * coords / denom


def region_mean_offsets(
    model: CameraModel, layout: RegionLayout, n_offsets: int = 32
) -> dict[str, float]:
    """Mean scan offset per region; the analytic prediction of region delays."""
    return {
        name: float(np.mean(_region_offsets(model, rect, n_offsets)))
        for name, rect in layout.regions().items()
    }


def capture_region_signals(
    wave: Waveform,
    model: CameraModel,
    layout: RegionLayout,
    timestamps,
    n_offsets: int = 32,
) -> dict[str, TimestampedSignal]:
    """Average region brightness per frame, keyed by region name.

    Region value at frame time t is the mean of ``wave`` over the region's
    scan-offset sub-grid, shifted by t.  All four outputs share ``timestamps``.
    """
    timestamps = np.asarray(timestamps, dtype=float)
    layout.validate_within(model.width, model.height)
    t0, t_end = wave.domain
    if timestamps.min() < t0 - _DOMAIN_SLACK or (
        timestamps.max() + model.readout_time > t_end + _DOMAIN_SLACK
    ):
        raise ValueError(
            f"frames [{timestamps.min()}, {timestamps.max()}] plus readout "
            f"{model.readout_time} exceed waveform domain [{t0}, {t_end}]"
        )
    out = {}
    for name, rect in layout.regions().items():
        offsets = _region_offsets(model, rect, n_offsets)
        sampled = wave.evaluate(timestamps[:, None] + offsets[None, :])
        out[name] = TimestampedSignal(timestamps, sampled.mean(axis=1))
    return out
