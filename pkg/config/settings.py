"""
Application settings using Pydantic Settings.
Load configuration from environment variables and .env file.
"""
from functools import lru_cache
from pathlib import Path
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict

# Get the project root directory (where .env lives)
PROJECT_ROOT = Path(__file__).parent.parent
ENV_FILE = PROJECT_ROOT / ".env"


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=str(ENV_FILE),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None  # None = stderr only

    # Construction limits
    unbounded_cap: int = 5  # gen_unbounded places 2^n - 2 circle points
    vc_default_cap: int = 6
    exact_cap_default: int = 0

    # Sampled oracle
    oracle_trials: int = 100000
    oracle_rotation_scale: int = 4

    # Search grid
    search_grid_denominator: int = 64
    search_extent: int = 8
    search_local_steps: int = 24
    search_body_radius: str = "1/2"

    # Sampling constants (nets / approximations)
    net_constant: int = 8
    net_log_constant: int = 16
    approx_constant: int = 4
    max_attempts: int = 200

    # Hitting-set solver
    solver_round_constant: int = 4

    # Exact predicates
    perturb_exponent: int = 20
    witness_max_halvings: int = 64

    # Edge-set disk cache
    cache_enabled: bool = False
    cache_dir: str = ".cache/edges"
    cache_ttl: int = 86400  # seconds

    # Rendering
    svg_stroke_width: str = "1/100"
    svg_canvas_size: int = 480

    # Output envelope
    tool_version: str = "1.0.0"
    document_version: int = 1


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
