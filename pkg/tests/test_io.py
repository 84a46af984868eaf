import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_array_equal

from rppglab.capture import CameraModel, JitterSpec, RegionLayout
from rppglab.hrwindow import BeatSeries
from rppglab.io import (
    Manifest,
    read_beats,
    read_camera_config,
    read_frame_timestamps,
    read_timestamped_signal,
    write_beats,
    write_camera_config,
    write_frame_timestamps,
    write_timestamped_signal,
)
from rppglab.signals import TimestampedSignal


# ---------------------------------------------------------------------------
# timestamped signal files


def test_read_minimal_signal(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("t,value\n0,1\n1,2\n")
    sig = read_timestamped_signal(path)
    assert len(sig) == 2
    assert_array_equal(sig.timestamps, [0.0, 1.0])
    assert_array_equal(sig.values, [1.0, 2.0])


def test_read_signal_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("# provenance note\nt,value\n0,1\n\n# midway\n1,2\n")
    assert len(read_timestamped_signal(path)) == 2


def test_read_signal_reports_duplicate_timestamp_line(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("t,value\n0,1\n0.5,2\n0.5,3\n1,4\n")
    with pytest.raises(ValueError, match=r"sig\.csv:4"):
        read_timestamped_signal(path)


def test_read_signal_reports_malformed_line(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("t,value\n0,1\noops\n")
    with pytest.raises(ValueError, match=r"sig\.csv:3"):
        read_timestamped_signal(path)
    path.write_text("t,value\n0,abc\n1,2\n")
    with pytest.raises(ValueError, match=r"sig\.csv:2"):
        read_timestamped_signal(path)


def test_read_signal_requires_header_and_two_rows(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("0,1\n1,2\n")
    with pytest.raises(ValueError, match="header"):
        read_timestamped_signal(path)
    path.write_text("t,value\n0,1\n")
    with pytest.raises(ValueError, match="at least 2"):
        read_timestamped_signal(path)


@settings(max_examples=50, deadline=None)
@given(
    incs=st.lists(
        st.floats(min_value=1e-6, max_value=1e3), min_size=1, max_size=40
    ),
    values=st.lists(
        st.floats(min_value=-1e12, max_value=1e12), min_size=2, max_size=41
    ),
    start=st.floats(min_value=-1e6, max_value=1e6),
)
def test_property_signal_round_trip(tmp_path_factory, incs, values, start):
    n = min(len(incs) + 1, len(values))
    if n < 2:
        return
    ts = start + np.concatenate([[0.0], np.cumsum(incs)])[:n]
    if not np.all(np.diff(ts) > 0):
        return  # increments too small to register at this magnitude
    sig = TimestampedSignal(ts, values[:n])
    path = tmp_path_factory.mktemp("roundtrip") / "sig.csv"
    write_timestamped_signal(path, sig)
    back = read_timestamped_signal(path)
    assert_array_equal(back.timestamps, sig.timestamps)
    assert_array_equal(back.values, sig.values)


# ---------------------------------------------------------------------------
# beat files


def test_read_beats_plain_seconds(tmp_path):
    path = tmp_path / "beats.txt"
    path.write_text("0.5\n1.2\n")
    assert_array_equal(read_beats(path).beat_times, [0.5, 1.2])


def test_read_beats_with_sample_rate(tmp_path):
    path = tmp_path / "beats.txt"
    path.write_text("250\n500\n")
    assert_array_equal(read_beats(path, sample_rate=250.0).beat_times, [1.0, 2.0])


def test_read_beats_rejects_disorder_and_empty(tmp_path):
    path = tmp_path / "beats.txt"
    path.write_text("1.0\n0.5\n")
    with pytest.raises(ValueError, match=r"beats\.txt:2"):
        read_beats(path)
    path.write_text("# nothing here\n")
    with pytest.raises(ValueError, match="at least 2"):
        read_beats(path)


def test_beats_round_trip(tmp_path):
    beats = BeatSeries(np.cumsum(np.random.default_rng(0).uniform(0.5, 1.2, 50)))
    path = tmp_path / "beats.txt"
    write_beats(path, beats)
    assert_array_equal(read_beats(path).beat_times, beats.beat_times)


# ---------------------------------------------------------------------------
# frame timestamp files


def test_read_frame_timestamps(tmp_path):
    path = tmp_path / "frames.txt"
    path.write_text("0\n0.033\n0.066\n")
    assert_array_equal(read_frame_timestamps(path), [0.0, 0.033, 0.066])


def test_read_frame_timestamps_rejects_disorder(tmp_path):
    path = tmp_path / "frames.txt"
    path.write_text("0\n0.066\n0.033\n")
    with pytest.raises(ValueError, match=r"frames\.txt:3"):
        read_frame_timestamps(path)
    path.write_text("")
    with pytest.raises(ValueError, match="no frame timestamps"):
        read_frame_timestamps(path)


def test_frame_timestamps_round_trip(tmp_path):
    ts = np.cumsum(np.random.default_rng(1).uniform(0.02, 0.05, 300))
    path = tmp_path / "frames.txt"
    write_frame_timestamps(path, ts)
    assert_array_equal(read_frame_timestamps(path), ts)
    assert ts.size == 300
    assert 6.0 < ts[-1] - ts[0] < 15.0


# ---------------------------------------------------------------------------
# camera configuration files


def test_read_camera_config_minimal(tmp_path):
    path = tmp_path / "camera.cfg"
    path.write_text("fps = 30\n")
    model, layout = read_camera_config(path)
    assert model.nominal_fps == 30.0
    assert model.readout_time == pytest.approx(1 / 30.0)
    assert model.scan_axis == "vertical"
    assert layout == RegionLayout.halves(640, 480)


def test_read_camera_config_full(tmp_path):
    path = tmp_path / "camera.cfg"
    path.write_text(
        "# test rig\n"
        "fps = 25\n"
        "readout_time = 0.01\n"
        "scan_axis = horizontal\n"
        "width = 320\n"
        "height = 240\n"
        "jitter_kind = uniform\n"
        "jitter_param = 0.002\n"
        "region_top = 0,0,320,100\n"
        "region_bottom = 0,140,320,240\n"
        "region_left = 0,0,160,240\n"
        "region_right = 160,0,320,240\n"
    )
    model, layout = read_camera_config(path)
    assert model.nominal_fps == 25.0
    assert model.readout_time == 0.01
    assert model.scan_axis == "horizontal"
    assert (model.width, model.height) == (320, 240)
    assert model.jitter == JitterSpec("uniform", 0.002)
    assert layout.top.y1 == 100
    assert layout.bottom.y0 == 140


def test_read_camera_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "camera.cfg"
    path.write_text("fps = 30\nshutter = fast\n")
    with pytest.raises(ValueError, match=r"camera\.cfg:2.*shutter"):
        read_camera_config(path)


def test_read_camera_config_requires_fps(tmp_path):
    path = tmp_path / "camera.cfg"
    path.write_text("width = 640\n")
    with pytest.raises(ValueError, match="fps"):
        read_camera_config(path)


def test_camera_config_round_trip(tmp_path):
    model = CameraModel(
        nominal_fps=24.0,
        readout_time=0.02,
        scan_axis="horizontal",
        width=800,
        height=600,
        jitter=JitterSpec("gaussian", 0.003),
    )
    layout = RegionLayout.halves(800, 600)
    path = tmp_path / "camera.cfg"
    write_camera_config(path, model, layout)
    back_model, back_layout = read_camera_config(path)
    assert back_model == model
    assert back_layout == layout


# ---------------------------------------------------------------------------
# manifests


def test_manifest_dispatch(tmp_path):
    sig_path = tmp_path / "sig.csv"
    sig_path.write_text("t,value\n0,1\n1,2\n")
    beat_path = tmp_path / "beats.txt"
    beat_path.write_text("250\n500\n750\n")
    sig = Manifest("signal", str(sig_path)).load()
    assert isinstance(sig, TimestampedSignal)
    beats = Manifest("beats", str(beat_path), units="samples", sample_rate=250.0).load()
    assert_array_equal(beats.beat_times, [1.0, 2.0, 3.0])


def test_manifest_validation():
    with pytest.raises(ValueError):
        Manifest("video", "x.mp4")
    with pytest.raises(ValueError):
        Manifest("beats", "b.txt", units="samples")  # needs a rate
    with pytest.raises(ValueError):
        Manifest("signal", "s.csv", units="samples", sample_rate=250.0)
