import os
from pathlib import Path

BASE_DIR = Path(__file__).parent

SERVICE_HOST = os.getenv("SERVICE_HOST", "127.0.0.1")
SERVICE_PORT = int(os.getenv("SERVICE_PORT", "8000"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FORMAT = '%(asctime)s - %(levelname)s:%(name)s:%(message)s'

MAX_CONCURRENT_JOBS = int(os.getenv("MAX_CONCURRENT_JOBS", "2"))  # Suite instances checked in parallel
DEFAULT_SUITE_MAX = int(os.getenv("DEFAULT_SUITE_MAX", "3"))  # `--max` when not given

# Exit codes of cli.py
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
