"""
Engine settings read from the environment.

PURPOSE:
- Typed, validated knobs for the decision engine (scheduler cap, oracle bound,
  chi(0) mode, preprocessing).
- CLI flags override environment values through load_settings(**overrides).

CONTEXT:
- Environment variable names and defaults live in src.constants.reserved.
"""

from __future__ import annotations

import os
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.constants.reserved import DEFAULTS, ENV_VARS
from src.errors import ModelError


class EngineSettings(BaseModel):
    """
    Validated engine settings.

    attributes:
    - sched_limit: int – max Dirac schedulers enumerated per (state, label)
    - oracle_bound: int – max state count for the brute-force partition oracle
    - chi_zero: bool – emit chi(0) on stable deadlocks (False = legacy mapping)
    - preprocess: bool – run the trivially-vanishing elimination before refinement
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    sched_limit: int = Field(DEFAULTS["sched_limit"], ge=1)
    oracle_bound: int = Field(DEFAULTS["oracle_bound"], ge=1, le=8)
    chi_zero: bool = DEFAULTS["chi_zero"]
    preprocess: bool = DEFAULTS["preprocess"]


def load_settings(**overrides: Any) -> EngineSettings:
    """
    Build settings from environment variables, then apply explicit overrides.

    parameters:
    - overrides: field=value pairs; None values are ignored so CLI flags can pass through.

    returns:
    - EngineSettings

    raises:
    - ModelError – if a value fails validation (message carries pydantic's detail).
    """
    raw: Dict[str, Any] = {}
    for field, env_name in ENV_VARS.items():
        value = os.getenv(env_name)
        if value not in (None, ""):
            raw[field] = value
    raw.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return EngineSettings(**raw)
    except ValidationError as e:
        raise ModelError(f"invalid settings: {e}") from e


__all__ = ["EngineSettings", "load_settings"]
