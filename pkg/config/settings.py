"""
Application configuration and constants.
All environment variables and solver defaults centralized here.
"""
import os
from typing import Dict, Any

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """Application configuration loaded from environment variables."""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Heat diffusion defaults
    HEAT_T: int = int(os.getenv("HEAT_T", "1000"))
    HEAT_TAU0: float = float(os.getenv("HEAT_TAU0", "1.0"))
    HEAT_TAU_MIN: float = float(os.getenv("HEAT_TAU_MIN", "0.01"))
    HEAT_SCHEDULE: str = os.getenv("HEAT_SCHEDULE", "linear")
    HEAT_ALPHA: float = float(os.getenv("HEAT_ALPHA", "1.0"))
    HEAT_ETA: float = float(os.getenv("HEAT_ETA", "0.5"))
    HEAT_SAMPLES: int = int(os.getenv("HEAT_SAMPLES", "1"))
    HEAT_THETA_INIT: str = os.getenv("HEAT_THETA_INIT", "uniform")
    HEAT_TARGET_INPUT: str = os.getenv("HEAT_TARGET_INPUT", "smoothed")

    # TabuCol defaults
    TABU_MAX_ITERS: int = int(os.getenv("TABU_MAX_ITERS", "100000"))
    TABU_TENURE_BASE: int = int(os.getenv("TABU_TENURE_BASE", "7"))
    TABU_TENURE_SCALE: float = float(os.getenv("TABU_TENURE_SCALE", "0.6"))

    # Exact oracle
    ORACLE_MAX_VERTICES: int = int(os.getenv("ORACLE_MAX_VERTICES", "30"))

    # Benchmark harness
    BENCH_MAX_WORKERS: int = int(os.getenv("BENCH_MAX_WORKERS", "1"))
    REPORT_DECIMALS: int = int(os.getenv("REPORT_DECIMALS", "4"))
    GRAPH_FILE_SUFFIX: str = ".col"
    MANIFEST_HEADER: tuple = ("graph", "k")

    # numpy's default bit generator, recorded with every run
    RNG_NAME: str = "PCG64"

    @classmethod
    def validate_required_settings(cls) -> None:
        """Validate that the configured defaults are usable."""
        if cls.HEAT_T < 1:
            raise ValueError("HEAT_T must be at least 1")
        if not cls.HEAT_TAU0 >= cls.HEAT_TAU_MIN > 0:
            raise ValueError("HEAT_TAU0 >= HEAT_TAU_MIN > 0 is required")
        if cls.HEAT_ALPHA <= 0 or cls.HEAT_ETA <= 0:
            raise ValueError("HEAT_ALPHA and HEAT_ETA must be positive")
        if cls.TABU_MAX_ITERS < 1:
            raise ValueError("TABU_MAX_ITERS must be at least 1")
        if cls.BENCH_MAX_WORKERS < 1:
            raise ValueError("BENCH_MAX_WORKERS must be at least 1")

    @classmethod
    def get_diffusion_defaults(cls) -> Dict[str, Any]:
        """Keyword defaults for DiffusionConfig (k and seed supplied by caller)."""
        return {
            "T": cls.HEAT_T,
            "tau0": cls.HEAT_TAU0,
            "tau_min": cls.HEAT_TAU_MIN,
            "schedule": cls.HEAT_SCHEDULE,
            "alpha": cls.HEAT_ALPHA,
            "eta": cls.HEAT_ETA,
            "M": cls.HEAT_SAMPLES,
            "theta_init": cls.HEAT_THETA_INIT,
            "target_input": cls.HEAT_TARGET_INPUT,
        }

    @classmethod
    def get_tabu_defaults(cls) -> Dict[str, Any]:
        """Keyword defaults for TabuConfig (seed supplied by caller)."""
        return {
            "max_iters": cls.TABU_MAX_ITERS,
            "tenure_base": cls.TABU_TENURE_BASE,
            "tenure_scale": cls.TABU_TENURE_SCALE,
        }


# Global settings instance
settings = Settings()
