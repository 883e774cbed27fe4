"""
DecisionReport: the outcome of one decision (or normal-form) run.

Serialises to the shape fixed by schemas/decision_report.schema.json; rationals are
written as "p/q" strings so reports stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

from src.model_interface.types import ChiMode, Semantics
from src.utils.rationals import format_rational

NamedDistribution = Dict[str, Fraction]

BISIMILAR = "BISIMILAR"
NOT_BISIMILAR = "NOT BISIMILAR"


def named_to_json(rep: Mapping[str, Fraction]) -> Dict[str, str]:
    return {name: format_rational(q) for name, q in rep.items()}


@dataclass(frozen=True)
class DecisionReport:
    semantics: Semantics
    chi_mode: ChiMode
    bisimilar: bool
    initial: Tuple[str, str]
    partition: Tuple[Tuple[str, ...], ...]
    tangible: Tuple[str, ...]
    vanishing: Dict[str, NamedDistribution] = field(default_factory=dict)
    eliminated: Dict[str, NamedDistribution] = field(default_factory=dict)
    rounds: int = 0
    preprocessed: bool = False
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return BISIMILAR if self.bisimilar else NOT_BISIMILAR

    def block_index(self, name: str) -> Optional[int]:
        for i, block in enumerate(self.partition):
            if name in block:
                return i
        return None

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dict in stable field order (run_id/latency_ms are added by the pipeline)."""
        return {
            "semantics": self.semantics.value,
            "chi_mode": self.chi_mode.value,
            "verdict": self.verdict,
            "bisimilar": self.bisimilar,
            "initial": list(self.initial),
            "rounds": self.rounds,
            "partition": [list(block) for block in self.partition],
            "tangible": list(self.tangible),
            "vanishing": {name: named_to_json(rep) for name, rep in self.vanishing.items()},
            "eliminated": {name: named_to_json(rep) for name, rep in self.eliminated.items()},
            "preprocessed": self.preprocessed,
            "timings": dict(self.timings),
        }


__all__ = ["NamedDistribution", "DecisionReport", "BISIMILAR", "NOT_BISIMILAR", "named_to_json"]
