# PURPOSE: End-to-end runs behind the CLI: decide or normalize, stamp the report with a
#          run id and latency, and validate it against the report schema.
# CONTEXT: The CLI only loads files and renders; everything that ends up in a report
#          passes through here.

from __future__ import annotations

import time
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, Optional, Tuple

import structlog

from src.errors import ModelError
from src.model_impl.normal_form import normal_form
from src.model_impl.refinement import decide, decide_within
from src.model_interface.automaton import MarkovAutomaton, ProbAutomaton
from src.model_interface.report import DecisionReport
from src.model_interface.types import ChiMode, Semantics
from src.report_io import validate_report

log = structlog.get_logger(__name__)


def _run_id() -> str:
    """
    Readable run id: short random prefix plus a UTC timestamp suffix.
    Example: 'a1b2c3d4-20261018130000'
    """
    return uuid.uuid4().hex[:8] + "-" + datetime.now(timezone.utc).strftime("%Y%m%d%H%M%S")


def _stamp(report: DecisionReport, command: str, t0: float) -> Dict[str, Any]:
    out = {"run_id": _run_id(), "command": command}
    out.update(report.to_dict())
    out["latency_ms"] = int((time.time() - t0) * 1000)
    validate_report(out)
    return out


def run_decide(m1: MarkovAutomaton, m2: Optional[MarkovAutomaton] = None, *,
               semantics: Semantics = Semantics.WEAK, mode: Optional[ChiMode] = None,
               preprocess: Optional[bool] = None, within: Optional[Tuple[str, str]] = None,
               limit: Optional[int] = None) -> Tuple[DecisionReport, Dict[str, Any]]:
    """
    steps:
    1) Decide m1 against m2 on their direct sum, or two states of m1 when `within` is given.
    2) Assemble the JSON payload with run_id and latency.
    3) Validate the payload against the report schema.

    returns:
    - (report, payload)

    raises:
    - ModelError – if neither m2 nor `within` is given.
    - jsonschema.ValidationError – if the payload does not match the schema.
    """
    t0 = time.time()
    if within is not None:
        report = decide_within(m1, within[0], within[1], semantics, mode, preprocess=preprocess, limit=limit)
    elif m2 is not None:
        report = decide(m1, m2, semantics, mode, preprocess=preprocess, limit=limit)
    else:
        raise ModelError("decide needs a second automaton or a pair of states")
    payload = _stamp(report, "decide", t0)
    log.info("pipeline.decide", run_id=payload["run_id"], verdict=payload["verdict"],
             latency_ms=payload["latency_ms"])
    return report, payload


def run_normalize(m: MarkovAutomaton, *, mode: Optional[ChiMode] = None,
                  preprocess: Optional[bool] = None,
                  limit: Optional[int] = None) -> Tuple[ProbAutomaton, DecisionReport, Dict[str, Any]]:
    """Normal form of m plus its schema-checked report payload."""
    t0 = time.time()
    p_hat, report = normal_form(m, mode, preprocess=preprocess, limit=limit)
    payload = _stamp(report, "normalize", t0)
    log.info("pipeline.normalize", run_id=payload["run_id"], states=p_hat.size,
             latency_ms=payload["latency_ms"])
    return p_hat, report, payload


__all__ = ["run_decide", "run_normalize"]
