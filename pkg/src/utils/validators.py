"""Input validation utilities for the Hecke engine."""

from pathlib import Path
from typing import Any

from utils.exceptions import ParseError, ValidationError

SUPPORTED_FORMATS = ("text", "json")
RESOLUTION_ROUTES = ("bar", "ce")


class FlagValidator:
    """Validator for command-line flags."""

    @staticmethod
    def validateWindow(window: int) -> int:
        """
        Validate a truncation window.

        Args:
            window: Requested window L

        Returns:
            The window

        Raises:
            ValidationError: If the window is smaller than 1
        """
        if window < 1:
            raise ValidationError(f"Truncation window must be at least 1, got {window}", "window")
        return window

    @staticmethod
    def validateDegrees(minDegree: int, maxDegree: int) -> tuple[int, int]:
        """Validate a requested degree range."""
        if maxDegree < 0:
            raise ValidationError(f"--max-degree must be non-negative, got {maxDegree}", "degrees")
        if minDegree > maxDegree:
            raise ValidationError(f"--min-degree {minDegree} exceeds --max-degree {maxDegree}", "degrees")
        return minDegree, maxDegree

    @staticmethod
    def validatePasses(passes: int) -> int:
        if passes < 1:
            raise ValidationError("--stability-passes must be at least 1", "stability-passes")
        return passes

    @staticmethod
    def validateFormat(format: str) -> str:
        """Validate an output format name."""
        normalized = format.strip().lower()
        if normalized not in SUPPORTED_FORMATS:
            raise ValidationError(
                f"Unsupported format {format!r}; choose one of {', '.join(SUPPORTED_FORMATS)}", "format"
            )
        return normalized

    @staticmethod
    def parseResolution(value: str) -> tuple[str, Path | None]:
        """
        Split a --resolution value into its route and optional file.

        Args:
            value: "bar", "ce" or "file:<path>"

        Returns:
            (route, path) with path set only for the file route

        Raises:
            ValidationError: If the route is unknown or the file is missing
        """
        text = value.strip()
        if text in RESOLUTION_ROUTES:
            return text, None
        route, _, location = text.partition(":")
        if route != "file" or not location:
            raise ValidationError(f"--resolution must be bar, ce or file:<path>, got {value!r}", "resolution")
        path = Path(location)
        if not path.is_file():
            raise ValidationError(f"Resolution file not found: {path}", "resolution")
        return "file", path


class StructureValidator:
    """Validator for the shape of parsed JSON documents."""

    @staticmethod
    def requireMapping(value: Any, location: str) -> dict[str, Any]:
        if not isinstance(value, dict):
            raise ParseError(f"{location}: expected an object", location)
        return value

    @staticmethod
    def requireList(value: Any, location: str) -> list[Any]:
        if not isinstance(value, list):
            raise ParseError(f"{location}: expected a list", location)
        return value

    @staticmethod
    def requireKeys(document: dict[str, Any], keys: tuple[str, ...], location: str) -> None:
        """Raise ParseError naming the first missing key."""
        for key in keys:
            if key not in document:
                raise ParseError(f"{location}: missing field {key!r}", f"{location}.{key}")

    @staticmethod
    def requireIndex(value: Any, bound: int, location: str) -> int:
        """
        Validate an index into a basis of size `bound`.

        Raises:
            ParseError: If the value is not an integer
            ValidationError: If it is out of range
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"{location}: expected an integer index", location)
        if not 0 <= value < bound:
            raise ValidationError(f"{location}: index {value} out of range 0..{bound - 1}", "shape")
        return value

    @staticmethod
    def requirePositive(value: Any, location: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ParseError(f"{location}: expected a positive integer", location)
        return value
