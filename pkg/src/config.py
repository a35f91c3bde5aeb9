"""
Configuration management.
"""

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging
    log: str = Field(default="info", env="PACCP_LOG")  # quiet, info, debug
    log_file: str = Field(default="", env="PACCP_LOG_FILE")
    log_json: bool = Field(default=False, env="PACCP_LOG_JSON")

    # Solver defaults
    seed: int = Field(default=0, env="PACCP_SEED")
    time_limit_s: float = Field(default=1800.0, gt=0, env="PACCP_TIME_LIMIT_S")

    # Enumeration guards: subset enumerations (D^alpha, F3-family columns,
    # lifted separation, brute force) stop with BudgetExceededError above these.
    max_subsets: int = Field(default=50_000, ge=1, env="PACCP_MAX_SUBSETS")
    completion_max_subsets: int = Field(
        default=10_000,
        ge=1,
        env="PACCP_COMPLETION_MAX_SUBSETS",
    )
    brute_force_max_facilities: int = Field(
        default=16,
        ge=1,
        env="PACCP_BRUTE_FORCE_MAX_FACILITIES",
    )
    # Row cap for the support-restricted lifted separation LP (dense basis inverse)
    lifted_max_rows: int = Field(default=2_000, ge=1, env="PACCP_LIFTED_MAX_ROWS")

    # Benchmark instance files (tsplib/, pmed/), relative to the repo root
    data_dir: str = Field(default="data", env="PACCP_DATA_DIR")

    class Config:
        env_prefix = "PACCP_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"  # Ignore extra env vars


settings = Settings()
