import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from oracle_hrwindow import brute_force_cells, brute_force_summary
from rppglab.hrwindow import (
    BeatSeries,
    DegenerateWindowError,
    WindowSpec,
    boxplot_stats,
    hr_of_window,
    merge_matrices,
    relative_difference,
    rr_intervals,
    window_diff_matrix,
)


def random_beats(seed, n=100, low=0.4, high=1.5, start=0.0):
    rng = np.random.default_rng(seed)
    return BeatSeries(start + np.cumsum(rng.uniform(low, high, n)))


def assert_matches_oracle(beats, spec):
    matrix = window_diff_matrix(beats, spec)
    cells, skipped = brute_force_cells(beats.beat_times, spec.sizes, spec.step)
    assert set(matrix.cells) == set(cells)
    assert matrix.skipped_windows == skipped
    for key, expected_values in cells.items():
        stats = matrix.cells[key]
        assert stats.count == len(expected_values)
        assert_array_equal(np.sort(stats.values), np.sort(expected_values))
        summary = brute_force_summary(expected_values)
        assert stats.mean == pytest.approx(summary["mean"], rel=1e-9, abs=1e-12)
        assert stats.q1 == pytest.approx(summary["q1"], rel=1e-9, abs=1e-12)
        assert stats.median == pytest.approx(summary["median"], rel=1e-9, abs=1e-12)
        assert stats.q3 == pytest.approx(summary["q3"], rel=1e-9, abs=1e-12)
    return matrix


# ---------------------------------------------------------------------------
# BeatSeries / rr_intervals


def test_beat_series_validation():
    with pytest.raises(ValueError):
        BeatSeries([1.0])
    with pytest.raises(ValueError):
        BeatSeries([1.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        BeatSeries([0.0, np.inf])


def test_rr_intervals_direct_differences():
    assert_allclose(rr_intervals(BeatSeries([0.0, 1.0, 2.0])), [1.0, 1.0])
    assert_allclose(
        rr_intervals(BeatSeries([0.0, 0.8, 1.7, 2.7])), [0.8, 0.9, 1.0]
    )


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_property_rr_round_trip(seed):
    beats = random_beats(seed, n=1000)
    rebuilt = beats.beat_times[0] + np.concatenate(
        [[0.0], np.cumsum(rr_intervals(beats))]
    )
    assert_allclose(rebuilt, beats.beat_times, atol=1e-12 * beats.beat_times[-1])


# ---------------------------------------------------------------------------
# hr_of_window


def test_hr_constant_rate_any_window():
    beats = BeatSeries(np.arange(60.0))
    for start in (0.0, 3.0, 17.5):
        hr, n = hr_of_window(beats, start, 10.0)
        assert hr == pytest.approx(60.0, rel=1e-12)
        assert n in (10, 11)


def test_hr_zero_size_is_single_interval():
    beats = BeatSeries([2.0, 2.75, 3.5])
    hr, n = hr_of_window(beats, 2.1, 0.0)
    assert hr == pytest.approx(80.0, rel=1e-12)
    assert n == 2


def test_hr_hand_evaluated_window():
    beats = BeatSeries([0.0, 0.8, 1.7, 2.7])
    hr, n = hr_of_window(beats, 0.0, 5.0)
    assert n == 4
    assert hr == pytest.approx(60.0 * 3 / 2.7, rel=1e-12)


def test_hr_window_boundaries_are_half_open():
    beats = BeatSeries([0.0, 1.0, 2.0, 5.0, 6.0])
    _, n = hr_of_window(beats, 0.0, 5.0)
    assert n == 3  # the beat at exactly 5.0 belongs to the next window


def test_hr_degenerate_window_raises():
    beats = BeatSeries([0.0, 10.0, 20.0])
    with pytest.raises(DegenerateWindowError):
        hr_of_window(beats, 1.0, 5.0)
    with pytest.raises(DegenerateWindowError):
        hr_of_window(beats, 25.0, 0.0)
    with pytest.raises(ValueError):
        hr_of_window(beats, 0.0, -5.0)


# ---------------------------------------------------------------------------
# relative_difference


def test_relative_difference_values():
    assert relative_difference(60.0, 60.0) == 0.0
    assert relative_difference(100.0, 90.0) == pytest.approx(10.0, rel=1e-12)
    hr_outer = 60.0 * 3 / 2.7
    assert relative_difference(hr_outer, 80.0) == pytest.approx(20.0, rel=1e-12)
    with pytest.raises(ValueError):
        relative_difference(0.0, 50.0)


# ---------------------------------------------------------------------------
# window_diff_matrix


def test_matrix_constant_rr_is_all_zero():
    beats = BeatSeries(np.arange(130.0))  # one beat per second
    matrix = window_diff_matrix(beats, WindowSpec())
    expected_pairs = sum(range(1, 13))  # 12 outer sizes, lower triangle
    assert len(matrix.cells) == expected_pairs
    for (s1, s2), stats in matrix.cells.items():
        assert s1 > s2
        assert stats.count >= 1
        assert_array_equal(stats.values, np.zeros(stats.count))
        assert stats.mean == 0.0


def test_matrix_alternating_rr_matches_oracle():
    rr = np.tile([0.5, 1.0], 60)
    beats = BeatSeries(np.concatenate([[0.0], np.cumsum(rr)]))
    assert_matches_oracle(beats, WindowSpec())


def test_matrix_counts_skipped_windows():
    # an 8-second silent gap makes one outer 5 s window beatless
    times = np.concatenate([np.arange(0.0, 5.0), np.arange(13.0, 40.0)])
    beats = BeatSeries(times)
    matrix = assert_matches_oracle(beats, WindowSpec(sizes=(0.0, 5.0), step=5.0))
    assert matrix.skipped_windows >= 1


def test_matrix_rejects_too_short_record():
    beats = BeatSeries([0.0, 0.9, 1.8])
    with pytest.raises(ValueError):
        window_diff_matrix(beats, WindowSpec())


def test_window_spec_validation():
    with pytest.raises(ValueError):
        WindowSpec(sizes=(5.0,))
    with pytest.raises(ValueError):
        WindowSpec(sizes=(10.0, 5.0))
    with pytest.raises(ValueError):
        WindowSpec(sizes=(0.0, 5.0), step=0.0)


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n=st.integers(min_value=30, max_value=120),
)
def test_property_matrix_matches_oracle(seed, n):
    beats = random_beats(seed, n=n)
    assert_matches_oracle(beats, WindowSpec(sizes=(0.0, 5.0, 10.0, 20.0), step=5.0))


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    shift=st.floats(min_value=-500.0, max_value=500.0),
)
def test_property_translation_invariance(seed, shift):
    spec = WindowSpec(sizes=(0.0, 5.0, 10.0), step=5.0)
    beats = random_beats(seed, n=80)
    moved = BeatSeries(beats.beat_times + shift)
    a = window_diff_matrix(beats, spec)
    b = window_diff_matrix(moved, spec)
    assert set(a.cells) == set(b.cells)
    assert a.skipped_windows == b.skipped_windows
    for key in a.cells:
        assert a.cells[key].count == b.cells[key].count
        assert_allclose(
            np.sort(a.cells[key].values),
            np.sort(b.cells[key].values),
            rtol=1e-6,
            atol=1e-9,
        )


# ---------------------------------------------------------------------------
# merge_matrices


def test_merge_pools_cell_values():
    spec = WindowSpec(sizes=(0.0, 5.0, 10.0), step=5.0)
    m1 = window_diff_matrix(random_beats(1, n=60), spec)
    m2 = window_diff_matrix(random_beats(2, n=60), spec)
    merged = merge_matrices([m1, m2])
    for key in merged.cells:
        expected = np.sort(
            np.concatenate([m.cells[key].values for m in (m1, m2) if key in m.cells])
        )
        assert_array_equal(np.sort(merged.cells[key].values), expected)
    assert merged.skipped_windows == m1.skipped_windows + m2.skipped_windows


# ---------------------------------------------------------------------------
# boxplot_stats


def test_boxplot_all_zero_matrix():
    beats = BeatSeries(np.arange(40.0))
    matrix = window_diff_matrix(beats, WindowSpec(sizes=(0.0, 5.0, 10.0), step=5.0))
    for row in boxplot_stats(matrix, "by-pair"):
        assert (row.minimum, row.q1, row.median, row.q3, row.maximum) == (0.0,) * 5


def test_boxplot_single_cell_matches_cell():
    beats = random_beats(7, n=20)
    matrix = window_diff_matrix(beats, WindowSpec(sizes=(0.0, 5.0), step=5.0))
    assert list(matrix.cells) == [(5.0, 0.0)]
    (row,) = boxplot_stats(matrix, "by-pair")
    stats = matrix.cell(5.0, 0.0)
    assert row.count == stats.count
    assert row.q1 == stats.q1
    assert row.median == stats.median
    assert row.q3 == stats.q3
    assert row.minimum == float(np.min(stats.values))
    assert row.maximum == float(np.max(stats.values))


def test_boxplot_gap_grouping_pools_cells():
    rr = np.tile([0.5, 1.0], 60)
    beats = BeatSeries(np.concatenate([[0.0], np.cumsum(rr)]))
    spec = WindowSpec(sizes=(0.0, 5.0, 10.0, 15.0), step=5.0)
    matrix = window_diff_matrix(beats, spec)
    rows = {row.label: row for row in boxplot_stats(matrix, "by-size-gap")}
    cells, _ = brute_force_cells(beats.beat_times, spec.sizes, spec.step)
    pooled = {}
    for (s1, s2), values in cells.items():
        pooled.setdefault(round(s1 - s2, 9), []).extend(values)
    assert set(rows) == {f"gap={gap:g}" for gap in pooled}
    for gap, values in pooled.items():
        row = rows[f"gap={gap:g}"]
        summary = brute_force_summary(values)
        assert row.count == summary["count"]
        assert row.median == pytest.approx(summary["median"], rel=1e-9, abs=1e-12)
        assert row.q1 == pytest.approx(summary["q1"], rel=1e-9, abs=1e-12)
        assert row.q3 == pytest.approx(summary["q3"], rel=1e-9, abs=1e-12)


def test_boxplot_rejects_unknown_grouping():
    beats = BeatSeries(np.arange(40.0))
    matrix = window_diff_matrix(beats, WindowSpec(sizes=(0.0, 5.0), step=5.0))
    with pytest.raises(ValueError):
        boxplot_stats(matrix, "by-subject")
