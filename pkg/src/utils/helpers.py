"""Helper utilities for the Hecke engine."""

import functools
import time
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from typing import Any, ParamSpec, TypeVar

from utils.exceptions import ParseError
from utils.logger import logger

P = ParamSpec("P")
R = TypeVar("R")


class TimeHelper:
    """Helper class for time-related operations."""

    @staticmethod
    def measureExecutionTime(label: str) -> Callable[[Callable[P, R]], Callable[P, R]]:
        """Decorator logging the wall time of the wrapped call at INFO level."""

        def decorator(func: Callable[P, R]) -> Callable[P, R]:
            @functools.wraps(func)
            def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
                startTime = time.perf_counter()
                result = func(*args, **kwargs)
                logger.info(f"{label} finished in {time.perf_counter() - startTime:.3f}s")
                return result

            return wrapper

        return decorator


class RationalHelper:
    """Helper class for exact rational literals."""

    @staticmethod
    def parseRational(value: Any, location: str = "value") -> Fraction:
        """
        Parse a rational literal.

        Args:
            value: Integer or string of the form "p" or "p/q"
            location: Where the literal came from, used in error messages

        Returns:
            The literal as a Fraction in lowest terms

        Raises:
            ParseError: If the literal is a float, malformed, or has zero denominator
        """
        if isinstance(value, bool) or isinstance(value, float):
            raise ParseError(
                f"{location}: rational literals must be strings 'p/q' or integers",
                location,
            )
        if isinstance(value, int):
            return Fraction(value)
        if not isinstance(value, str):
            raise ParseError(f"{location}: expected a rational literal", location)

        text = value.strip()
        numerator, _, denominator = text.partition("/")
        try:
            if not denominator:
                return Fraction(int(numerator))
            return Fraction(int(numerator), int(denominator))
        except ValueError as e:
            raise ParseError(f"{location}: malformed rational {value!r}", location) from e
        except ZeroDivisionError as e:
            raise ParseError(f"{location}: zero denominator in {value!r}", location) from e

    @staticmethod
    def parseVector(values: Any, length: int, location: str) -> tuple[Fraction, ...]:
        """Parse a dense list of rational literals of a fixed length."""
        if not isinstance(values, list) or len(values) != length:
            raise ParseError(f"{location}: expected a list of {length} rationals", location)
        return tuple(
            RationalHelper.parseRational(v, f"{location}[{i}]") for i, v in enumerate(values)
        )

    @staticmethod
    def formatRational(value: Fraction) -> str:
        """Format a Fraction as 'p' or 'p/q'."""
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def formatVector(vector: Iterable[Fraction]) -> list[str]:
        """Format a vector as a list of rational strings."""
        return [RationalHelper.formatRational(v) for v in vector]

    @staticmethod
    def formatMatrix(rows: Sequence[Iterable[Fraction]]) -> list[list[str]]:
        """Format a dense matrix row by row."""
        return [RationalHelper.formatVector(row) for row in rows]
