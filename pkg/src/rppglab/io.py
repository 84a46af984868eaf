"""Plain-text readers and writers shared by all modules.

All formats are UTF-8 with LF line endings and locale-independent decimal
points.  Lines starting with ``#`` are comments and skipped everywhere.
On-disk times are always decimal seconds; beat annotations stored as sample
indices need an explicit sample rate at load time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capture import CameraModel, JitterSpec, Rect, RegionLayout
from .hrwindow import BeatSeries
from .signals import TimestampedSignal

MANIFEST_KINDS = ("signal", "beats", "frame_timestamps", "camera_config")
SIGNAL_HEADER = "t,value"


def _data_lines(path):
    """Yield (line_number, stripped_text) for content lines."""
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            yield lineno, text


def _parse_float(path, lineno, token, what):
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"{path}:{lineno}: {what} {token!r} is not a number") from None
    if not np.isfinite(value):
        raise ValueError(f"{path}:{lineno}: {what} must be finite, got {token!r}")
    return value


def read_timestamped_signal(path) -> TimestampedSignal:
    """Load a ``t,value`` file into a validated signal."""
    timestamps, values = [], []
    header_seen = False
    prev_t, prev_line = None, None
    for lineno, text in _data_lines(path):
        if not header_seen:
            if text.replace(" ", "") != SIGNAL_HEADER:
                raise ValueError(
                    f"{path}:{lineno}: expected header {SIGNAL_HEADER!r}, got {text!r}"
                )
            header_seen = True
            continue
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(
                f"{path}:{lineno}: expected 't,value', got {text!r}"
            )
        t = _parse_float(path, lineno, parts[0].strip(), "timestamp")
        v = _parse_float(path, lineno, parts[1].strip(), "value")
        if prev_t is not None and t <= prev_t:
            raise ValueError(
                f"{path}:{lineno}: timestamp {t} does not increase past {prev_t} "
                f"(line {prev_line})"
            )
        prev_t, prev_line = t, lineno
        timestamps.append(t)
        values.append(v)
    if not header_seen:
        raise ValueError(f"{path}: missing header line {SIGNAL_HEADER!r}")
    if len(timestamps) < 2:
        raise ValueError(f"{path}: needs at least 2 samples, found {len(timestamps)}")
    return TimestampedSignal(np.array(timestamps), np.array(values))


def write_timestamped_signal(path, sig: TimestampedSignal) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(SIGNAL_HEADER + "\n")
        for t, v in zip(sig.timestamps, sig.values):
            handle.write(f"{float(t)!r},{float(v)!r}\n")


def read_beats(path, sample_rate: float | None = None) -> BeatSeries:
    """Load beat annotations: one value per line, seconds unless a rate is given."""
    if sample_rate is not None and not (sample_rate > 0):
        raise ValueError(f"sample_rate must be > 0, got {sample_rate}")
    beats = []
    prev, prev_line = None, None
    for lineno, text in _data_lines(path):
        raw = _parse_float(path, lineno, text, "beat annotation")
        t = raw / sample_rate if sample_rate is not None else raw
        if prev is not None and t <= prev:
            raise ValueError(
                f"{path}:{lineno}: beat time {t} does not increase past {prev} "
                f"(line {prev_line})"
            )
        prev, prev_line = t, lineno
        beats.append(t)
    if len(beats) < 2:
        raise ValueError(f"{path}: needs at least 2 beats, found {len(beats)}")
    return BeatSeries(np.array(beats))


def write_beats(path, beats: BeatSeries) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for t in beats.beat_times:
            handle.write(f"{float(t)!r}\n")


def read_frame_timestamps(path) -> np.ndarray:
    """Load a one-timestamp-per-line file (decimal seconds, strictly increasing)."""
    times = []
    prev, prev_line = None, None
    for lineno, text in _data_lines(path):
        t = _parse_float(path, lineno, text, "frame timestamp")
        if prev is not None and t <= prev:
            raise ValueError(
                f"{path}:{lineno}: frame timestamp {t} does not increase past "
                f"{prev} (line {prev_line})"
            )
        prev, prev_line = t, lineno
        times.append(t)
    if not times:
        raise ValueError(f"{path}: no frame timestamps found")
    return np.array(times)


def write_frame_timestamps(path, timestamps) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for t in np.asarray(timestamps, dtype=float):
            handle.write(f"{float(t)!r}\n")


# ---------------------------------------------------------------------------
# camera configuration

_CAMERA_KEYS = {
    "fps",
    "jitter_kind",
    "jitter_param",
    "readout_time",
    "scan_axis",
    "width",
    "height",
    "region_top",
    "region_bottom",
    "region_left",
    "region_right",
}


def _parse_rect(path, lineno, token) -> Rect:
    parts = [p.strip() for p in token.split(",")]
    if len(parts) != 4:
        raise ValueError(
            f"{path}:{lineno}: region must be 'x0,y0,x1,y1', got {token!r}"
        )
    try:
        x0, y0, x1, y1 = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"{path}:{lineno}: region bounds must be integers") from None
    return Rect(x0, y0, x1, y1)


def read_camera_config(path) -> tuple[CameraModel, RegionLayout]:
    """Parse a key-value camera description; omitted keys take their defaults.

    Recognized keys: fps (required), jitter_kind, jitter_param, readout_time,
    scan_axis, width, height, and region_top/bottom/left/right as
    ``x0,y0,x1,y1`` pixel bounds.  Omitted regions default to the half-frame
    layout; omitted readout_time means a full frame interval.
    """
    entries: dict[str, str] = {}
    lines: dict[str, int] = {}
    for lineno, text in _data_lines(path):
        if "=" not in text:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
        key, _, value = text.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CAMERA_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        entries[key] = value
        lines[key] = lineno
    if "fps" not in entries:
        raise ValueError(f"{path}: missing required key 'fps'")

    def number(key, default=None):
        if key not in entries:
            return default
        return _parse_float(path, lines[key], entries[key], key)

    def integer(key, default):
        if key not in entries:
            return default
        value = entries[key]
        try:
            return int(value)
        except ValueError:
            raise ValueError(
                f"{path}:{lines[key]}: {key} must be an integer, got {value!r}"
            ) from None

    width = integer("width", 640)
    height = integer("height", 480)
    jitter = JitterSpec(
        kind=entries.get("jitter_kind", "none"),
        magnitude=number("jitter_param", 0.0),
    )
    try:
        model = CameraModel(
            nominal_fps=number("fps"),
            readout_time=number("readout_time"),
            scan_axis=entries.get("scan_axis", "vertical"),
            width=width,
            height=height,
            jitter=jitter,
        )
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
    defaults = RegionLayout.halves(width, height)
    layout = RegionLayout(
        top=_parse_rect(path, lines["region_top"], entries["region_top"])
        if "region_top" in entries
        else defaults.top,
        bottom=_parse_rect(path, lines["region_bottom"], entries["region_bottom"])
        if "region_bottom" in entries
        else defaults.bottom,
        left=_parse_rect(path, lines["region_left"], entries["region_left"])
        if "region_left" in entries
        else defaults.left,
        right=_parse_rect(path, lines["region_right"], entries["region_right"])
        if "region_right" in entries
        else defaults.right,
    )
    layout.validate_within(width, height)
    return model, layout


def write_camera_config(path, model: CameraModel, layout: RegionLayout) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"fps = {float(model.nominal_fps)!r}\n")
        handle.write(f"readout_time = {float(model.readout_time)!r}\n")
        handle.write(f"scan_axis = {model.scan_axis}\n")
        handle.write(f"width = {model.width}\n")
        handle.write(f"height = {model.height}\n")
        handle.write(f"jitter_kind = {model.jitter.kind}\n")
        handle.write(f"jitter_param = {float(model.jitter.magnitude)!r}\n")
        for name, rect in layout.regions().items():
            handle.write(f"region_{name} = {rect.x0},{rect.y0},{rect.x1},{rect.y1}\n")


# ---------------------------------------------------------------------------
# manifests


@dataclass(frozen=True)
class Manifest:
    """Describes one input file: what it is, where it lives, and its units."""

    kind: str
    path: str
    units: str = "seconds"
    sample_rate: float | None = None

    def __post_init__(self):
        if self.kind not in MANIFEST_KINDS:
            raise ValueError(f"kind must be one of {MANIFEST_KINDS}, got {self.kind!r}")
        if self.units not in ("seconds", "samples"):
            raise ValueError(f"units must be 'seconds' or 'samples', got {self.units!r}")
        if self.units == "samples":
            if self.kind != "beats":
                raise ValueError("sample-index units are only supported for beats")
            if self.sample_rate is None or not (self.sample_rate > 0):
                raise ValueError("sample-index units require a positive sample_rate")

    def load(self):
        if self.kind == "signal":
            return read_timestamped_signal(self.path)
        if self.kind == "beats":
            rate = self.sample_rate if self.units == "samples" else None
            return read_beats(self.path, sample_rate=rate)
        if self.kind == "frame_timestamps":
            return read_frame_timestamps(self.path)
        return read_camera_config(self.path)


def write_key_value_report(path, entries: dict) -> None:
    """Flat ``key = value`` report; floats keep their shortest exact form."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for key, value in entries.items():
            rendered = repr(float(value)) if isinstance(value, float) else str(value)
            handle.write(f"{key} = {rendered}\n")
