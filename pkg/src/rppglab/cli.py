"""Command-line front end: one subcommand per experiment.

Every run writes its outputs (and an echo of the full effective
configuration, ``config.json``) into the directory given by ``--out``;
stdout carries only a short human-readable summary.  Outputs contain no
timestamps or environment state, so re-running a command with the same
arguments reproduces them byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .capture import Waveform, capture_region_signals, generate_frame_timestamps
from .hrwindow import WindowSpec, boxplot_stats, merge_matrices, window_diff_matrix
from .io import (
    read_beats,
    read_camera_config,
    read_frame_timestamps,
    read_timestamped_signal,
    write_frame_timestamps,
    write_key_value_report,
    write_timestamped_signal,
)
from .phase import (
    axis_shift_report,
    estimate_phase_shift,
    median_shift,
    seconds_to_degrees,
    track_phase_shift,
)
from .signals import (
    TimestampedSignal,
    UniformSignal,
    amplitude_difference,
    dominant_frequency,
    power_spectrum,
    resample_aware,
    resample_naive,
    spectral_difference,
)
from .synth import sum_of_sines

DEFAULT_RATE = 240.0
DEFAULT_BAND_LOW = 0.7
DEFAULT_BAND_HIGH = 3.0
DEFAULT_TAPER = "hann"
DEFAULT_SIZES = "0,5,10,15,20,25,30,35,40,45,50,55,60"
DEFAULT_STEP = 5.0
DEFAULT_REF_BPM = 60.0
REGION_FILES = {name: f"region_{name}.csv" for name in ("top", "bottom", "left", "right")}


def _echo_config(out_dir: Path, subcommand: str, params: dict) -> None:
    params = {k: v for k, v in params.items() if k not in ("func", "subcommand")}
    payload = {"subcommand": subcommand, "params": params}
    with open(out_dir / "config.json", "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _prepare_out(args) -> Path:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def _uniform_as_timestamped(sig: UniformSignal) -> TimestampedSignal:
    return TimestampedSignal(sig.times, sig.values)


def _write_spectrum(path, spec) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("frequency_hz,power\n")
        for f, p in zip(spec.frequencies, spec.power):
            handle.write(f"{float(f)!r},{float(p)!r}\n")


def _write_boxplot_rows(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("group,count,min,q1,median,q3,max\n")
        for row in rows:
            handle.write(
                f"{row.label},{row.count},{row.minimum!r},{row.q1!r},"
                f"{row.median!r},{row.q3!r},{row.maximum!r}\n"
            )


def _write_matrix_csv(path, matrix) -> None:
    """Lower-triangular table: rows are outer sizes, columns inner sizes."""
    inner = list(matrix.sizes[:-1])
    outer = list(matrix.sizes[1:])
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("s1/s2," + ",".join(f"{s:g}" for s in inner) + "\n")
        for s1 in outer:
            cells = []
            for s2 in inner:
                if s2 >= s1 or (s1, s2) not in matrix.cells:
                    cells.append("-")
                else:
                    cells.append(f"{matrix.cells[(s1, s2)].mean:.4f}")
            handle.write(f"{s1:g}," + ",".join(cells) + "\n")


def _parse_components(text: str) -> list[tuple[float, float]]:
    components = []
    for chunk in text.split(","):
        freq, _, amp = chunk.partition(":")
        try:
            components.append((float(freq), float(amp if amp else 1.0)))
        except ValueError:
            raise ValueError(
                f"bad component {chunk!r}; expected 'freq:amplitude'"
            ) from None
    return components


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen_waveform(args) -> int:
    out_dir = _prepare_out(args)
    if args.shape == "sine":
        source = sum_of_sines([(args.freq, args.amp)], args.duration, args.rate)
    elif args.shape == "sum-of-sines":
        if not args.components:
            raise ValueError("--components is required for shape 'sum-of-sines'")
        source = sum_of_sines(_parse_components(args.components), args.duration, args.rate)
    else:  # from-file
        if not args.input:
            raise ValueError("--input is required for shape 'from-file'")
        sig = read_timestamped_signal(args.input)
        write_timestamped_signal(out_dir / "waveform.csv", sig)
        _echo_config(out_dir, "gen-waveform", vars(args))
        print(f"copied {len(sig)} samples to {out_dir / 'waveform.csv'}")
        return 0
    write_timestamped_signal(out_dir / "waveform.csv", _uniform_as_timestamped(source))
    _echo_config(out_dir, "gen-waveform", vars(args))
    print(f"wrote {len(source)} samples at {args.rate:g} Hz to {out_dir / 'waveform.csv'}")
    return 0


def cmd_simulate(args) -> int:
    out_dir = _prepare_out(args)
    model, layout = read_camera_config(args.config)
    source = read_timestamped_signal(args.waveform)
    inferred_rate = (len(source) - 1) / source.duration
    wave = Waveform(resample_aware(source, inferred_rate))
    if args.timestamps:
        frame_times = read_frame_timestamps(args.timestamps)
    else:
        frame_times = generate_frame_timestamps(model, args.duration, args.seed)
    regions = capture_region_signals(wave, model, layout, frame_times)
    write_frame_timestamps(out_dir / "frame_timestamps.txt", frame_times)
    for name, filename in REGION_FILES.items():
        write_timestamped_signal(out_dir / filename, regions[name])
    _echo_config(out_dir, "simulate", vars(args))
    print(
        f"captured {len(frame_times)} frames ({model.scan_axis} scan, "
        f"readout {model.readout_time:g} s) into {out_dir}"
    )
    return 0


def cmd_compare_fps(args) -> int:
    out_dir = _prepare_out(args)
    sig = read_timestamped_signal(args.signal)
    good = resample_aware(sig, args.rate)
    bad = resample_naive(sig, args.rate)
    spec_good = power_spectrum(good, taper=args.taper)
    spec_bad = power_spectrum(bad, taper=args.taper)
    amp = amplitude_difference(good, bad)
    spect = spectral_difference(spec_good, spec_bad)
    band = (args.band_low, args.band_high)
    dom_good = dominant_frequency(spec_good, band)
    dom_bad = dominant_frequency(spec_bad, band)
    write_timestamped_signal(out_dir / "good.csv", _uniform_as_timestamped(good))
    write_timestamped_signal(out_dir / "bad.csv", _uniform_as_timestamped(bad))
    _write_spectrum(out_dir / "spectrum_good.csv", spec_good)
    _write_spectrum(out_dir / "spectrum_bad.csv", spec_bad)
    write_key_value_report(
        out_dir / "report.txt",
        {
            "amplitude_max_abs": amp.max_abs,
            "amplitude_rms": amp.rms,
            "amplitude_relative_rms_percent": amp.relative_rms,
            "spectral_max_abs": spect.max_abs,
            "spectral_rms": spect.rms,
            "spectral_relative_rms_percent": spect.relative_rms,
            "dominant_good_hz": dom_good,
            "dominant_bad_hz": dom_bad,
            "dominant_bins_match": dom_good == dom_bad,
        },
    )
    _echo_config(out_dir, "compare-fps", vars(args))
    print(
        f"amplitude diff {amp.relative_rms:.4g} %, spectral diff "
        f"{spect.relative_rms:.4g} %, dominant {dom_good:g} vs {dom_bad:g} Hz"
    )
    return 0


def _phase_report_entries(prefix, est, ref_bpm) -> dict:
    return {
        f"{prefix}shift_seconds": est.shift_seconds,
        f"{prefix}dominant_freq_hz": est.dominant_freq,
        f"{prefix}shift_degrees_at_dominant": est.shift_degrees,
        f"{prefix}shift_degrees_at_ref_bpm": seconds_to_degrees(
            est.shift_seconds, ref_bpm
        ),
        f"{prefix}coherence": est.quality,
        f"{prefix}flagged_low_coherence": est.flagged,
    }


def _write_track_csv(path, track) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("center_seconds,shift_seconds,dominant_freq_hz,shift_degrees,coherence\n")
        for center, est in track:
            handle.write(
                f"{center!r},{est.shift_seconds!r},{est.dominant_freq!r},"
                f"{est.shift_degrees!r},{est.quality!r}\n"
            )


def cmd_phase(args) -> int:
    out_dir = _prepare_out(args)
    band = (args.band_low, args.band_high)
    entries: dict = {}
    if args.region_dir:
        region_dir = Path(args.region_dir)
        regions = {
            name: read_timestamped_signal(region_dir / filename)
            for name, filename in REGION_FILES.items()
        }
        report = axis_shift_report(regions, rate=args.rate, band=band)
        for axis in ("vertical", "horizontal"):
            entries.update(_phase_report_entries(f"{axis}_", report[axis], args.ref_bpm))
        summary = (
            f"vertical {report['vertical'].shift_seconds * 1e3:.3f} ms, "
            f"horizontal {report['horizontal'].shift_seconds * 1e3:.3f} ms"
        )
    else:
        if not (args.signal_a and args.signal_b):
            raise ValueError("need either --region-dir or both --signal-a and --signal-b")
        a = resample_aware(read_timestamped_signal(args.signal_a), args.rate)
        b = resample_aware(read_timestamped_signal(args.signal_b), args.rate)
        n = min(len(a), len(b))
        a = UniformSignal(a.start_time, a.sample_rate, a.values[:n])
        b = UniformSignal(b.start_time, b.sample_rate, b.values[:n])
        est = estimate_phase_shift(a, b, band)
        entries.update(_phase_report_entries("", est, args.ref_bpm))
        window_samples = int(round(args.window * args.rate))
        if 0 < window_samples <= n:
            track = track_phase_shift(a, b, args.window, args.track_step, band)
            _write_track_csv(out_dir / "track.csv", track)
            med = median_shift(track)
            entries["track_windows"] = len(track)
            entries["track_median_shift_seconds"] = med
            entries["track_median_degrees_at_ref_bpm"] = seconds_to_degrees(
                med, args.ref_bpm
            )
        else:
            entries["track_windows"] = 0
        summary = f"shift {est.shift_seconds * 1e3:.3f} ms at {est.dominant_freq:g} Hz"
    write_key_value_report(out_dir / "report.txt", entries)
    _echo_config(out_dir, "phase", vars(args))
    print(summary)
    return 0


def cmd_window_matrix(args) -> int:
    out_dir = _prepare_out(args)
    sizes = tuple(float(s) for s in args.sizes.split(","))
    spec = WindowSpec(sizes=sizes, step=args.step)
    matrices = {}
    for beat_file in args.beat_files:
        beats = read_beats(beat_file, sample_rate=args.sample_rate)
        matrices[Path(beat_file).stem] = window_diff_matrix(beats, spec)
    pooled = merge_matrices(list(matrices.values()))
    for stem, matrix in matrices.items():
        _write_matrix_csv(out_dir / f"matrix_{stem}.csv", matrix)
    _write_matrix_csv(out_dir / "matrix_pooled.csv", pooled)
    _write_boxplot_rows(out_dir / "boxplot_by_pair.csv", boxplot_stats(pooled, "by-pair"))
    _write_boxplot_rows(
        out_dir / "boxplot_by_gap.csv", boxplot_stats(pooled, "by-size-gap")
    )
    summary = {
        "subjects": {
            stem: {
                "skipped_windows": matrix.skipped_windows,
                "cells": [
                    {
                        "s1": s1,
                        "s2": s2,
                        "mean_percent": stats.mean,
                        "count": stats.count,
                        "q1": stats.q1,
                        "median": stats.median,
                        "q3": stats.q3,
                    }
                    for (s1, s2), stats in sorted(matrix.cells.items())
                ],
            }
            for stem, matrix in matrices.items()
        },
        "pooled": {
            "skipped_windows": pooled.skipped_windows,
            "cells": [
                {
                    "s1": s1,
                    "s2": s2,
                    "mean_percent": stats.mean,
                    "count": stats.count,
                    "q1": stats.q1,
                    "median": stats.median,
                    "q3": stats.q3,
                }
                for (s1, s2), stats in sorted(pooled.cells.items())
            ],
        },
    }
    with open(out_dir / "summary.json", "w", encoding="utf-8", newline="\n") as handle:
        json.dump(summary, handle, indent=2, sort_keys=True)
        handle.write("\n")
    _echo_config(out_dir, "window-matrix", vars(args))
    print(
        f"{len(matrices)} record(s), {len(pooled.cells)} matrix cells, "
        f"{pooled.skipped_windows} skipped windows"
    )
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rppglab",
        description="Desk-scale analyses of capture confounds on remote pulse signals.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("gen-waveform", help="synthesize or copy a source waveform")
    gen.add_argument("--shape", choices=("sine", "sum-of-sines", "from-file"), default="sine")
    gen.add_argument("--freq", type=float, default=1.2, help="sine frequency in Hz")
    gen.add_argument("--amp", type=float, default=1.0, help="sine amplitude")
    gen.add_argument("--components", help="sum-of-sines as 'freq:amp,freq:amp,...'")
    gen.add_argument("--input", help="signal file for shape 'from-file'")
    gen.add_argument("--duration", type=float, default=10.0, help="seconds")
    gen.add_argument("--rate", type=float, default=DEFAULT_RATE, help="sample rate in Hz")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=cmd_gen_waveform)

    sim = sub.add_parser("simulate", help="capture a waveform with a virtual camera")
    sim.add_argument("--config", required=True, help="camera configuration file")
    sim.add_argument("--waveform", required=True, help="source waveform signal file")
    sim.add_argument("--duration", type=float, default=10.0, help="capture seconds")
    sim.add_argument("--timestamps", help="replay frame timestamps from this file")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True, help="output directory")
    sim.set_defaults(func=cmd_simulate)

    cmp_ = sub.add_parser("compare-fps", help="timestamp-aware vs -ignorant resampling")
    cmp_.add_argument("--signal", required=True, help="timestamped signal file")
    cmp_.add_argument("--rate", type=float, default=DEFAULT_RATE)
    cmp_.add_argument("--taper", choices=("rectangular", "hann"), default=DEFAULT_TAPER)
    cmp_.add_argument("--band-low", type=float, default=DEFAULT_BAND_LOW)
    cmp_.add_argument("--band-high", type=float, default=DEFAULT_BAND_HIGH)
    cmp_.add_argument("--seed", type=int, default=0)
    cmp_.add_argument("--out", required=True, help="output directory")
    cmp_.set_defaults(func=cmd_compare_fps)

    phs = sub.add_parser("phase", help="time shift between two signals or region set")
    phs.add_argument("--signal-a", help="first signal file")
    phs.add_argument("--signal-b", help="second signal file")
    phs.add_argument("--region-dir", help="directory holding region_*.csv from simulate")
    phs.add_argument("--rate", type=float, default=DEFAULT_RATE)
    phs.add_argument("--band-low", type=float, default=DEFAULT_BAND_LOW)
    phs.add_argument("--band-high", type=float, default=DEFAULT_BAND_HIGH)
    phs.add_argument("--window", type=float, default=10.0, help="tracking window seconds")
    phs.add_argument("--track-step", type=float, default=1.0, help="tracking step seconds")
    phs.add_argument("--ref-bpm", type=float, default=DEFAULT_REF_BPM)
    phs.add_argument("--seed", type=int, default=0)
    phs.add_argument("--out", required=True, help="output directory")
    phs.set_defaults(func=cmd_phase)

    win = sub.add_parser("window-matrix", help="HR difference matrix over window sizes")
    win.add_argument("beat_files", nargs="+", help="beat annotation files")
    win.add_argument("--sizes", default=DEFAULT_SIZES, help="comma-separated seconds")
    win.add_argument("--step", type=float, default=DEFAULT_STEP)
    win.add_argument(
        "--sample-rate",
        type=float,
        default=None,
        help="interpret annotations as sample indices at this rate",
    )
    win.add_argument("--seed", type=int, default=0)
    win.add_argument("--out", required=True, help="output directory")
    win.set_defaults(func=cmd_window_matrix)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
