"""Shared configuration models for solver components."""

from pydantic import BaseModel, Field


class LoggingConfig(BaseModel, frozen=True):
    """Structured logging configuration."""

    level: str = "INFO"


class OracleConfig(BaseModel, frozen=True):
    """Size guards for the brute-force oracles."""

    max_filter_agents: int = Field(default=20, ge=1)
    max_weak_pairs: int = Field(default=16, ge=0)
    max_rotations: int = Field(default=16, ge=0)


class ReductionConfig(BaseModel, frozen=True):
    """Spacer multipliers and size guard for the reduction generators."""

    s10: int = Field(default=1, ge=0)
    s20: int = Field(default=1, ge=0)
    s30: int = Field(default=1, ge=0)
    s40: int = Field(default=1, ge=0)
    gamma_base: int = Field(default=1, ge=1)
    tau_base: int = Field(default=1, ge=0)
    max_agents: int = Field(default=5000, ge=1)
