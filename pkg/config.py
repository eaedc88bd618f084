"""
Configuration settings for the edge-coloring hill climber
"""

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application settings
    APP_NAME: str = "Edge Coloring Hill Climber"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Randomness (all runs are seeded; no entropy unless a seed says so)
    DEFAULT_SEED: int = 0

    # Walk settings
    DEFAULT_MAX_STEPS: int = 1_000_000
    SAMPLER_MODE: str = "exact"  # exact | rejection
    REJECTION_PATIENCE: int = 64  # draws per (edge, color) slot before an exhaustive check

    # Recompute the potential from scratch after every recoloring
    CHECK_INVARIANTS: bool = False

    # Guards for the brute-force oracles (bounds on k ** |E|)
    ENUMERATION_BUDGET: int = 10**8
    REACHABILITY_BUDGET: int = 10**7

    # Monotone recoloring driver
    SEARCH_BUDGET: int = 200_000  # descent-search steps per round
    STEP_BOUND_CONSTANT: int = 50  # witness length <= C * n^2 * max_degree

    # Ensembles
    ENSEMBLE_WORKERS: int = 1

    class Config:
        env_file = ".env"
        case_sensitive = True


# Create settings instance
settings = Settings()
