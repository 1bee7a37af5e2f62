"""Engine settings and configuration management."""

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from dotenv import load_dotenv


@dataclass
class ComputationConfig:
    """Configuration for the homological computations."""

    truncation: int = 4
    maxDegree: int = 2
    minDegree: int = 0
    stabilityPasses: int = 2
    representativeShifts: int = 20
    randomSeed: int = 20240611
    maxProductPairs: int = 4096


@dataclass
class OutputConfig:
    """Configuration for report rendering."""

    format: str = "text"
    indent: int = 2


@dataclass
class LoggingConfig:
    """Configuration for logging system."""

    level: str = "WARNING"
    enableFileLogging: bool = False
    logRotation: bool = True
    maxLogSize: int = 5 * 1024 * 1024  # 5MB
    backupCount: int = 3


# Environment variable -> (section, key, converter)
ENVIRONMENT_OVERRIDES: dict[str, tuple[str, str, type]] = {
    "HECKE_TRUNCATION": ("computation", "truncation", int),
    "HECKE_MAX_DEGREE": ("computation", "maxDegree", int),
    "HECKE_STABILITY_PASSES": ("computation", "stabilityPasses", int),
    "HECKE_SHIFTS": ("computation", "representativeShifts", int),
    "HECKE_SEED": ("computation", "randomSeed", int),
    "HECKE_FORMAT": ("output", "format", str),
    "HECKE_LOG_LEVEL": ("logging", "level", str),
}


class Settings:
    """Main settings class for the Hecke engine."""

    def __init__(self) -> None:
        """Initialize settings with default values and load from environment."""
        self._loadEnvironment()

        # Get application paths
        self.appRoot = Path(__file__).parent.parent.parent
        self.assetsPath = self.appRoot / "assets"
        self.examplesPath = self.assetsPath / "examples"
        self.dataPath = self.appRoot / "data"
        self.logsPath = self.dataPath / "logs"

        # Initialize configuration sections
        self.computation = ComputationConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig(
            enableFileLogging=os.getenv("HECKE_LOG_FILE", "").lower()
            in ("1", "true", "yes")
        )

        self._applyEnvironmentOverrides()

        # Load saved settings from preferences file
        self.load()

    def _loadEnvironment(self) -> None:
        """Load environment variables from .env file."""
        load_dotenv(override=False)

    def _applyEnvironmentOverrides(self) -> None:
        """Apply HECKE_* environment variables on top of the defaults."""
        for variable, (section, key, converter) in ENVIRONMENT_OVERRIDES.items():
            raw = os.getenv(variable)
            if raw is None:
                continue
            try:
                setattr(getattr(self, section), key, converter(raw))
            except ValueError:
                logging.warning(f"Ignoring {variable}={raw!r}: not a {converter.__name__}")

    def getPreferencesPath(self) -> Path | None:
        """Get path to the JSON preferences file, if one is configured."""
        configured = os.getenv("HECKE_CONFIG")
        return Path(configured) if configured else None

    def getExamplePath(self, name: str) -> Path:
        """Get path to a shipped example input."""
        return self.examplesPath / name

    def getLogsPath(self) -> Path:
        """Get the log directory path, creating it on demand."""
        self.logsPath.mkdir(parents=True, exist_ok=True)
        return self.logsPath

    def toDict(self) -> dict[str, Any]:
        """Convert settings to dictionary."""
        return {
            "computation": dict(self.computation.__dict__),
            "output": dict(self.output.__dict__),
            "logging": dict(self.logging.__dict__),
        }

    def updateFromDict(self, config: dict[str, Any]) -> None:
        """Update settings from dictionary."""
        for section in ("computation", "output", "logging"):
            if section not in config:
                continue
            target = getattr(self, section)
            for key, value in config[section].items():
                if hasattr(target, key):
                    setattr(target, key, value)

    def load(self) -> None:
        """Load settings from the preferences file named by HECKE_CONFIG."""
        prefsPath = self.getPreferencesPath()
        if prefsPath is None:
            return
        try:
            with open(prefsPath) as f:
                preferences = json.load(f)
            self.updateFromDict(preferences)
            logging.info(f"Settings loaded from {prefsPath}")

        except (OSError, json.JSONDecodeError) as e:
            logging.warning(f"Failed to load settings from file: {e}")
            # Continue with default settings

    def resetToDefaults(self) -> None:
        """Reset all settings to their default values."""
        self.computation = ComputationConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig()
        logging.info("Settings reset to defaults")


# Global settings instance
settings = Settings()
