from matching_common.config import LoggingConfig, OracleConfig, ReductionConfig
from matching_common.exceptions import (
    GuardExceededError,
    InstanceValidationError,
    UnsupportedInputError,
)
from matching_common.logging import setup_logging

__all__ = [
    "setup_logging",
    "InstanceValidationError",
    "UnsupportedInputError",
    "GuardExceededError",
    "LoggingConfig",
    "OracleConfig",
    "ReductionConfig",
]
