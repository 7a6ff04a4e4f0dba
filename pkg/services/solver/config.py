"""Application configuration loaded from environment variables."""

import os

from matching_common import LoggingConfig, OracleConfig, ReductionConfig
from pydantic import BaseModel


class AppConfig(BaseModel, frozen=True):
    """Root application configuration."""

    logging: LoggingConfig
    oracle: OracleConfig
    reduction: ReductionConfig


def load_config() -> AppConfig:
    """Loads configuration from environment variables."""
    return AppConfig(
        logging=LoggingConfig(
            level=os.getenv("STABLEMATCH_LOG_LEVEL", "INFO"),
        ),
        oracle=OracleConfig(
            max_filter_agents=int(os.getenv("STABLEMATCH_ORACLE_MAX_AGENTS", "20")),
            max_weak_pairs=int(os.getenv("STABLEMATCH_ORACLE_MAX_PAIRS", "16")),
            max_rotations=int(os.getenv("STABLEMATCH_ORACLE_MAX_ROTATIONS", "16")),
        ),
        reduction=ReductionConfig(
            s10=int(os.getenv("STABLEMATCH_SPACER_S10", "1")),
            s20=int(os.getenv("STABLEMATCH_SPACER_S20", "1")),
            s30=int(os.getenv("STABLEMATCH_SPACER_S30", "1")),
            s40=int(os.getenv("STABLEMATCH_SPACER_S40", "1")),
            gamma_base=int(os.getenv("STABLEMATCH_SAT_GAMMA_BASE", "1")),
            tau_base=int(os.getenv("STABLEMATCH_SAT_TAU_BASE", "1")),
            max_agents=int(os.getenv("STABLEMATCH_REDUCTION_MAX_AGENTS", "5000")),
        ),
    )
