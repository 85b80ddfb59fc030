"""Configuration management for the laboratory."""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env file from project root
env_path = Path(__file__).parent.parent / '.env'
load_dotenv(env_path)

class Config:
    """Numerical defaults read from environment variables."""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Economy property checks
    WALRAS_TOL: float = float(os.getenv("WALRAS_TOL", "1e-10"))
    HOMOGENEITY_TOL: float = float(os.getenv("HOMOGENEITY_TOL", "1e-8"))
    FD_RELATIVE_STEP: float = float(os.getenv("FD_RELATIVE_STEP", "1e-5"))

    # Equilibrium solver
    EQUILIBRIUM_TOL: float = float(os.getenv("EQUILIBRIUM_TOL", "1e-12"))
    EQUILIBRIUM_MAX_ITER: int = int(os.getenv("EQUILIBRIUM_MAX_ITER", "100"))

    # Cycle detection
    CYCLE_TOL: float = float(os.getenv("CYCLE_TOL", "1e-9"))
    CYCLE_MIN_REPEATS: int = int(os.getenv("CYCLE_MIN_REPEATS", "10"))

    # Sweeps and output
    SWEEP_WORKERS: int = int(os.getenv("SWEEP_WORKERS", "1"))
    CSV_FLOAT_FORMAT: str = os.getenv("CSV_FLOAT_FORMAT", "%.17g")
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "0"))

# Global config instance
config = Config()
