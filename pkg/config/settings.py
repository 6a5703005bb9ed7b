"""
Configuration settings for the p-variation laboratory.
All settings are loaded from environment variables with sensible defaults.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# =============================================================================
# Server Configuration
# =============================================================================
HOST = os.getenv("HOST", "127.0.0.1")
PORT = int(os.getenv("PORT", 5002))
DEBUG = os.getenv("DEBUG", "false").lower() == "true"

# Allowed origins for CORS (comma-separated in env)
ALLOWED_ORIGINS = os.getenv("ALLOWED_ORIGINS", "http://localhost:5002,http://127.0.0.1:5002").split(",")

RATE_LIMIT_REQUESTS = int(os.getenv("RATE_LIMIT_REQUESTS", 120))  # requests per minute
MAX_API_POINTS = int(os.getenv("MAX_API_POINTS", 2**16 + 1))

# =============================================================================
# Path Configuration
# =============================================================================
BASE_DIR = Path(__file__).parent.parent
OUTPUT_DIR = Path(os.getenv("OUTPUT_DIR", str(BASE_DIR / "runs")))

# =============================================================================
# Simulation
# =============================================================================
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", 20040301))
WORKERS = int(os.getenv("WORKERS", os.cpu_count() or 1))
MC_BATCH_SIZE = int(os.getenv("MC_BATCH_SIZE", 10_000))

# =============================================================================
# Statistics
# =============================================================================
CI_LEVEL = float(os.getenv("CI_LEVEL", 0.99))
SIGMA_SLACK = float(os.getenv("SIGMA_SLACK", 3.0))

# Sharpness classification thresholds
DIVERGE_FACTOR = float(os.getenv("DIVERGE_FACTOR", 2.0))
STABILIZE_TOL = float(os.getenv("STABILIZE_TOL", 0.2))

# =============================================================================
# Limits
# =============================================================================
BRUTEFORCE_MAX_LEN = int(os.getenv("BRUTEFORCE_MAX_LEN", 22))
OTTAVIANI_MIN_MESH = int(os.getenv("OTTAVIANI_MIN_MESH", 256))

# =============================================================================
# Logging
# =============================================================================
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.getenv("LOG_FORMAT", "%(asctime)s %(levelname)s %(name)s: %(message)s")


def configure_logging(level: str | None = None) -> None:
    """Install the root handler once; later calls only adjust the level."""
    level = (level or LOG_LEVEL).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
