"""
Configuration Validator for the Opfibration Workbench
Checks numeric settings and optional dependencies before a run
"""

import importlib.util
import os
import sys
from enum import Enum
from pathlib import Path
from typing import List


class ConfigStatus(Enum):
    VALID = "✅"
    WARNING = "⚠️"
    ERROR = "❌"
    INFO = "ℹ️"


# (environment variable, default, minimum)
NUMERIC_SETTINGS = [
    ("ENUMERATION_BUDGET", "10000000", 1),
    ("ISOMORPHISM_MAX_SIZE", "12", 1),
    ("PROBE_CARRIER_LIMIT", "2", 0),
    ("PROBE_BUDGET", "4096", 1),
    ("SUITE_OBJECT_LIMIT", "9", 0),
    ("MAX_CONCURRENT_JOBS", "2", 1),
    ("DEFAULT_SUITE_MAX", "3", 1),
    ("SERVICE_PORT", "8000", 1),
]

REQUIRED_PACKAGES = [("numpy", "table checks"), ("sympy", "abelian invariants"), ("pydantic", "JSON documents")]
SERVICE_PACKAGES = [("fastapi", "HTTP service"), ("uvicorn", "HTTP server")]
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigValidator:
    """Validates workbench configuration at startup"""

    def __init__(self):
        self.errors: List[str] = []
        self.warnings: List[str] = []
        self.info: List[str] = []

    def validate_all(self) -> bool:
        """Run all configuration validations"""
        print("\n" + "=" * 60)
        print("🔍 CONFIGURATION VALIDATION")
        print("=" * 60)

        self._validate_core()
        self._validate_numeric_settings()
        self._validate_dependencies()

        return self._print_summary()

    def _validate_core(self):
        print("\n📦 Core Configuration:")

        if not (Path(__file__).parent / ".env").exists():
            self.info.append("No .env file found, using built-in defaults")
            print(f"  {ConfigStatus.INFO.value} .env file: Not found (using defaults)")
        else:
            print(f"  {ConfigStatus.VALID.value} .env file: Found")

        py_version = sys.version_info
        if py_version >= (3, 9):
            print(f"  {ConfigStatus.VALID.value} Python version: {py_version.major}.{py_version.minor}.{py_version.micro}")
        else:
            self.errors.append(f"Python 3.9+ required, found {py_version.major}.{py_version.minor}")
            print(f"  {ConfigStatus.ERROR.value} Python version: {py_version.major}.{py_version.minor} (3.9+ required)")

        level = os.getenv("LOG_LEVEL", "INFO").upper()
        if level in LOG_LEVELS:
            print(f"  {ConfigStatus.VALID.value} LOG_LEVEL: {level}")
        else:
            self.warnings.append(f"LOG_LEVEL {level!r} is not a standard level, INFO will be used")
            print(f"  {ConfigStatus.WARNING.value} LOG_LEVEL: {level} (unknown)")

    def _validate_numeric_settings(self):
        print("\n🔢 Enumeration and Concurrency:")

        for name, default, minimum in NUMERIC_SETTINGS:
            raw = os.getenv(name, default).strip() or default
            try:
                value = int(raw.replace("_", ""))
            except ValueError:
                self.errors.append(f"{name} must be an integer, got {raw!r}")
                print(f"  {ConfigStatus.ERROR.value} {name}: {raw!r} is not an integer")
                continue
            if value < minimum:
                self.errors.append(f"{name} must be at least {minimum}, got {value}")
                print(f"  {ConfigStatus.ERROR.value} {name}: {value} (minimum {minimum})")
            else:
                print(f"  {ConfigStatus.VALID.value} {name}: {value}")

        jobs = os.getenv("MAX_CONCURRENT_JOBS", "2")
        cpus = os.cpu_count() or 1
        if jobs.isdigit() and int(jobs) > cpus:
            self.warnings.append(f"MAX_CONCURRENT_JOBS={jobs} exceeds the {cpus} available CPUs")

    def _validate_dependencies(self):
        print("\n🔧 Dependencies:")

        for package, purpose in REQUIRED_PACKAGES:
            if importlib.util.find_spec(package) is not None:
                print(f"  {ConfigStatus.VALID.value} {package}: Installed ({purpose})")
            else:
                self.errors.append(f"{package} not found. Install with: pip install -r requirements.txt")
                print(f"  {ConfigStatus.ERROR.value} {package}: Not found")

        for package, purpose in SERVICE_PACKAGES:
            if importlib.util.find_spec(package) is not None:
                print(f"  {ConfigStatus.VALID.value} {package}: Installed ({purpose})")
            else:
                self.warnings.append(f"{package} not found, the HTTP service will not start")
                print(f"  {ConfigStatus.WARNING.value} {package}: Not found (service only)")

    def _print_summary(self) -> bool:
        """Print validation summary and return success status"""
        print("\n" + "=" * 60)
        print("📊 VALIDATION SUMMARY")
        print("=" * 60)

        if self.errors:
            print(f"\n{ConfigStatus.ERROR.value} Errors ({len(self.errors)}):")
            for error in self.errors:
                print(f"   • {error}")

        if self.warnings:
            print(f"\n{ConfigStatus.WARNING.value} Warnings ({len(self.warnings)}):")
            for warning in self.warnings:
                print(f"   • {warning}")

        if self.info:
            print(f"\n{ConfigStatus.INFO.value} Info:")
            for info in self.info:
                print(f"   • {info}")

        if self.errors:
            print(f"\n{ConfigStatus.ERROR.value} Configuration validation FAILED")
            print("Please fix the errors above before running suites")
            return False
        elif self.warnings:
            print(f"\n{ConfigStatus.WARNING.value} Configuration valid with warnings")
            return True
        else:
            print(f"\n{ConfigStatus.VALID.value} Configuration validation PASSED")
            return True


def validate_config(exit_on_error: bool = False) -> bool:
    """
    Validate configuration and optionally exit on error

    Args:
        exit_on_error: If True, exit the program on validation errors

    Returns:
        True if configuration is valid, False otherwise
    """
    validator = ConfigValidator()
    is_valid = validator.validate_all()

    if not is_valid and exit_on_error:
        sys.exit(1)

    return is_valid


if __name__ == "__main__":
    validate_config(exit_on_error=True)
