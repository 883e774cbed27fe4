"""
Report I/O: schema validation and rendering of decision reports.

PURPOSE: Central place for JSON schema validation and report formatting used by the
         pipeline and the CLI.
CONTEXT: Every JSON report is validated against schemas/decision_report.schema.json
         before it leaves the process.
"""

from __future__ import annotations

import json
import pathlib
from functools import lru_cache
from typing import Any, Dict, List, Union

from jsonschema import Draft7Validator, ValidationError

from src.model_interface.report import DecisionReport

REPORT_SCHEMA = "schemas/decision_report.schema.json"
_PROJECT_ROOT = pathlib.Path(__file__).resolve().parents[1]


# -------------------- Schema loading utilities -------------------- #

@lru_cache(maxsize=64)
def _load_schema_cached(abs_path: str) -> Dict[str, Any]:
    """
    Read and parse a JSON schema file, cached per absolute path.

    parameters:
    - abs_path: str – resolved path to the schema file.

    returns:
    - dict – parsed JSON schema content.
    """
    text = pathlib.Path(abs_path).read_text(encoding="utf-8")
    return json.loads(text)


def load_schema(path: str) -> Dict[str, Any]:
    """
    Load a JSON schema from a relative or absolute path (with caching).

    raises:
    - FileNotFoundError – if the file is found neither as given, under the current
      working directory, nor under the project root.
    """
    # Try the path as given, then relative to the working directory, then the project root.
    for candidate in (pathlib.Path(path), pathlib.Path.cwd() / path, _PROJECT_ROOT / path):
        if candidate.exists():
            return _load_schema_cached(str(candidate.resolve()))
    raise FileNotFoundError(f"Schema not found at: {path}")


# -------------------- Validation helpers -------------------- #

def validate_with_schema(instance: Dict[str, Any], schema: Dict[str, Any]) -> None:
    """
    Validate a given instance against a provided schema.

    raises:
    - ValidationError – if instance fails to meet schema requirements.
    """
    Draft7Validator(schema).validate(instance)


def validate_report(payload: Dict[str, Any]) -> None:
    """Validate a rendered report payload before it leaves the process."""
    validate_with_schema(payload, load_schema(REPORT_SCHEMA))


def error_to_string(err: Exception) -> str:
    """
    Readable one-line message; ValidationErrors carry the failing JSON path (e.g. $.partition[0]).
    """
    if isinstance(err, ValidationError):
        # Build a JSONPath-like locator from the error path (ints become indices).
        path = "$" + "".join(f"[{repr(p)}]" if isinstance(p, int) else f".{p}" for p in err.path)
        return f"{err.message} at {path}"
    return f"{type(err).__name__}: {err}"


# -------------------- Rendering -------------------- #

def _braces(names: List[str]) -> str:
    return "{" + ", ".join(names) + "}"


def _dist(rep: Dict[str, str]) -> str:
    return " ⊕ ".join(f"{q}·{name}" for name, q in rep.items())


def render_text(payload: Dict[str, Any]) -> str:
    """
    Human-readable report: verdict first, then one labelled line per field.
    """
    # Header block: verdict, semantics and the compared roots.
    lines = [payload["verdict"]]
    lines.append(f"semantics: {payload['semantics']} ({payload['chi_mode']})")
    lines.append(f"initial:   {payload['initial'][0]} vs {payload['initial'][1]}")
    # Refinement result: rounds, final partition and the tangible states.
    lines.append(f"rounds:    {payload['rounds']}")
    lines.append("partition: " + " ".join(_braces(block) for block in payload["partition"]))
    lines.append("tangible:  " + _braces(payload["tangible"]))
    # One line per stored vanishing representation, then per eliminated state.
    for name, rep in payload["vanishing"].items():
        lines.append(f"vanishing: {name} -> {_dist(rep)}")
    for name, rep in payload["eliminated"].items():
        lines.append(f"eliminated: {name} -> {_dist(rep)}")
    return "\n".join(lines) + "\n"


def emit_report(report: Union[DecisionReport, Dict[str, Any]], fmt: str = "text") -> str:
    """
    Render a report as `text` or `json` (stable field order, 2-space indent).

    raises:
    - ValueError – on an unknown format.
    """
    # Reports from the pipeline arrive as dicts already stamped with run_id and latency.
    payload = report.to_dict() if isinstance(report, DecisionReport) else report
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return render_text(payload)
    raise ValueError(f"unknown report format {fmt!r}")


__all__ = [
    "REPORT_SCHEMA",
    "load_schema",
    "validate_with_schema",
    "validate_report",
    "error_to_string",
    "render_text",
    "emit_report",
]
