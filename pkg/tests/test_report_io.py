import json
from fractions import Fraction

import pytest
from jsonschema import ValidationError

from src.model_interface.report import DecisionReport
from src.model_interface.types import ChiMode, Semantics
from src.report_io import REPORT_SCHEMA, emit_report, error_to_string, load_schema, validate_report

REPORT = DecisionReport(
    semantics=Semantics.WEAK,
    chi_mode=ChiMode.WITH_CHI_ZERO,
    bisimilar=True,
    initial=("s1", "t1"),
    partition=(("s1", "t1"), ("s2",), ("A",), ("B",)),
    tangible=("s1", "t1", "A", "B"),
    vanishing={"s2": {"s1": Fraction(1, 2), "B": Fraction(1, 2)}},
    rounds=3,
    timings={"refine": 1.5},
)


def _payload(**changes):
    out = {"run_id": "abc12345-20261018130000", "command": "decide"}
    out.update(REPORT.to_dict())
    out["latency_ms"] = 4
    out.update(changes)
    return out


def test_load_schema_reads_report_schema():
    schema = load_schema(REPORT_SCHEMA)
    assert schema["$id"] == "decision_report.schema.json"
    with pytest.raises(FileNotFoundError):
        load_schema("schemas/nope.schema.json")


def test_valid_payload_passes():
    validate_report(_payload())


@pytest.mark.parametrize(
    "changes",
    [{"verdict": "MAYBE"}, {"rounds": 0}, {"initial": ["s1"]}, {"vanishing": {"s2": {"s1": "0.5"}}}, {"extra": 1}],
)
def test_invalid_payloads_are_rejected(changes):
    with pytest.raises(ValidationError):
        validate_report(_payload(**changes))


def test_error_to_string_carries_json_path():
    with pytest.raises(ValidationError) as e:
        validate_report(_payload(partition=[["s1"], []]))
    assert error_to_string(e.value).endswith("at $.partition[1]")
    assert error_to_string(ValueError("bad")) == "ValueError: bad"


def test_text_rendering():
    text = emit_report(REPORT)
    assert text.splitlines() == [
        "BISIMILAR",
        "semantics: weak (with_chi_zero)",
        "initial:   s1 vs t1",
        "rounds:    3",
        "partition: {s1, t1} {s2} {A} {B}",
        "tangible:  {s1, t1, A, B}",
        "vanishing: s2 -> 1/2·s1 ⊕ 1/2·B",
    ]


def test_json_rendering_keeps_field_order():
    text = emit_report(_payload(), "json")
    assert text.endswith("}\n")
    data = json.loads(text)
    assert list(data)[:4] == ["run_id", "command", "semantics", "chi_mode"]
    assert data["vanishing"] == {"s2": {"s1": "1/2", "B": "1/2"}}
    with pytest.raises(ValueError):
        emit_report(REPORT, "yaml")
