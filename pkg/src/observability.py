"""
Stage timing for decision runs.

PURPOSE:
- Measure wall-clock time of the pipeline stages (to_pa, preprocess, precompute,
  refine, eliminate) and record it into the report's `timings` map.

CONTEXT:
- Logging is configured separately in logging_setup.py.
"""
from __future__ import annotations

import time
from typing import Dict, Optional

import structlog

log = structlog.get_logger(__name__)


class timed_segment:
    """
    Context manager recording elapsed milliseconds under `name`.

    usage example:
    >>> timings = {}
    >>> with timed_segment("refine", timings):
    >>>     outcome = refine_partition(pa)

    behaviour:
    - Accumulates when the same name is timed more than once.
    - Never suppresses exceptions raised inside the block.
    """

    def __init__(self, name: str, timings: Optional[Dict[str, float]] = None):
        self.name = name
        self.timings = timings
        self.t0 = 0.0
        self.elapsed_ms = 0.0

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed_ms = round((time.perf_counter() - self.t0) * 1000, 3)
        if self.timings is not None:
            self.timings[self.name] = round(self.timings.get(self.name, 0.0) + self.elapsed_ms, 3)
        log.debug("segment.done", segment=self.name, elapsed_ms=self.elapsed_ms, failed=exc_type is not None)
        return False
