"""Logging for the Hecke engine: diagnostics on stderr, optional rotating log file."""

import copy
import logging
import logging.handlers
import sys
from typing import Any, Optional

from config.settings import settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOGGER_NAME = "HeckeEngine"


class ColoredFormatter(logging.Formatter):
    """Formatter coloring the level name when writing to a terminal."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(self, useColor: bool) -> None:
        super().__init__(LOG_FORMAT, datefmt=DATE_FORMAT)
        self.useColor = useColor

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname)
        if not self.useColor or color is None:
            return super().format(record)
        # other handlers share the record
        colored = copy.copy(record)
        colored.levelname = f"{color}{record.levelname}{self.RESET}"
        return super().format(colored)


def _levelNumber(level: str, default: int = logging.WARNING) -> int:
    value = getattr(logging, level.upper(), None)
    return value if isinstance(value, int) else default


def _consoleHandler(level: int) -> logging.Handler:
    """stderr handler; stdout is reserved for reports."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(ColoredFormatter(useColor=sys.stderr.isatty()))
    return handler


def _fileHandler(level: int) -> logging.Handler:
    logFile = settings.getLogsPath() / "hecke_engine.log"
    handler: logging.Handler
    if settings.logging.logRotation:
        handler = logging.handlers.RotatingFileHandler(
            logFile, maxBytes=settings.logging.maxLogSize, backupCount=settings.logging.backupCount
        )
    else:
        handler = logging.FileHandler(logFile)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    return handler


class Logger:
    """Process-wide engine logger."""

    _instance: Optional["Logger"] = None
    _logger: logging.Logger | None = None

    def __new__(cls) -> "Logger":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if self._logger is None:
            self._setupLogger()

    def _setupLogger(self) -> None:
        level = _levelNumber(settings.logging.level)
        engineLogger = logging.getLogger(LOGGER_NAME)
        engineLogger.setLevel(level)
        engineLogger.propagate = False
        engineLogger.handlers.clear()
        engineLogger.addHandler(_consoleHandler(level))
        if settings.logging.enableFileLogging:
            engineLogger.addHandler(_fileHandler(level))
        self._logger = engineLogger

    def setLevel(self, level: str) -> None:
        """Change the level of the engine logger and its handlers; unknown names are ignored."""
        numeric = _levelNumber(level, default=-1)
        if numeric < 0 or self._logger is None:
            return
        self._logger.setLevel(numeric)
        for handler in self._logger.handlers:
            handler.setLevel(numeric)

    @classmethod
    def configureRootLogger(cls) -> None:
        """Route third-party warnings through the same stderr format."""
        rootLogger = logging.getLogger()
        rootLogger.handlers.clear()
        rootLogger.setLevel(logging.WARNING)
        rootLogger.addHandler(_consoleHandler(logging.WARNING))

    def _log(self, level: int, message: str, *args: Any, **kwargs: Any) -> None:
        if self._logger:
            self._logger.log(level, message, *args, **kwargs)

    def debug(self, message: str, *args: Any, **kwargs: Any) -> None:
        self._log(logging.DEBUG, message, *args, **kwargs)

    def info(self, message: str, *args: Any, **kwargs: Any) -> None:
        self._log(logging.INFO, message, *args, **kwargs)

    def warning(self, message: str, *args: Any, **kwargs: Any) -> None:
        self._log(logging.WARNING, message, *args, **kwargs)

    def error(self, message: str, *args: Any, **kwargs: Any) -> None:
        self._log(logging.ERROR, message, *args, **kwargs)

    def critical(self, message: str, *args: Any, **kwargs: Any) -> None:
        self._log(logging.CRITICAL, message, *args, **kwargs)

    def exception(self, message: str, *args: Any, **kwargs: Any) -> None:
        """Log at ERROR with the active traceback."""
        kwargs.setdefault("exc_info", True)
        self._log(logging.ERROR, message, *args, **kwargs)


# Global logger instance
logger = Logger()
