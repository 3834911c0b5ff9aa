"""Runtime limits, overridable through the environment."""
from __future__ import annotations

import os

DEFAULT_ORACLE_BUDGET = 10**7
DEFAULT_MAX_PRECISION_BITS = 4096

ORACLE_BUDGET_ENV = "POWERSUM_ORACLE_BUDGET"
MAX_PRECISION_BITS_ENV = "POWERSUM_MAX_PRECISION_BITS"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def oracle_budget(override: int | None = None) -> int:
    """Maximum number of terms the direct summation may add up."""
    if override is not None:
        return override
    return _env_int(ORACLE_BUDGET_ENV, DEFAULT_ORACLE_BUDGET)


def max_precision_bits(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int(MAX_PRECISION_BITS_ENV, DEFAULT_MAX_PRECISION_BITS)
