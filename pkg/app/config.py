from typing import List, Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Application
    APP_NAME: str = "Radio Routing Stability Lab"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: Optional[str] = None  # overrides DEBUG, e.g. "WARNING" for quiet batches
    LOG_STREAM: Literal["stdout", "stderr"] = "stderr"

    # Topology
    # Exhaustive simple-path search is exponential; above this many nodes callers
    # must ask for the n-1 upper bound instead.
    EXHAUSTIVE_PATH_NODE_LIMIT: int = 12

    # Transmitters
    TRANSMITTER_MAX_NODES: int = 16
    TRANSMITTER_DENSITY: float = 0.5

    # Adversary
    ADMISSIBILITY_EXHAUSTIVE_LIMIT: int = 5000
    ADMISSIBILITY_WINDOW: int = 512

    # Analysis
    GROWTH_SLOPE_THRESHOLD: float = 0.001  # packets per round

    # Runs
    DEFAULT_SEED: int = 0
    DEFAULT_HORIZON: int = 1000
    OUTPUT_DIR: str = "runs"
    BATCH_WORKERS: int = 4

    # HTTP API
    CORS_ORIGINS: List[str] = ["http://localhost:3000"]


settings = Settings()
