import pytest

from src.observability import timed_segment


def test_timed_segment_records_milliseconds():
    timings = {}
    with timed_segment("refine", timings) as seg:
        pass
    assert set(timings) == {"refine"}
    assert timings["refine"] == seg.elapsed_ms >= 0


def test_timed_segment_accumulates_repeated_names():
    timings = {"refine": 5.0}
    with timed_segment("refine", timings):
        pass
    assert timings["refine"] >= 5.0


def test_timed_segment_without_sink_and_on_error():
    # No timings map: still usable as a plain stopwatch
    with timed_segment("to_pa") as seg:
        pass
    assert seg.elapsed_ms >= 0

    timings = {}
    with pytest.raises(RuntimeError):
        with timed_segment("eliminate", timings):
            raise RuntimeError("boom")
    assert "eliminate" in timings
