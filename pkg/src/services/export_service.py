"""Export service for Hecke engine reports."""

import json
from pathlib import Path
from typing import Any

import pandas as pd

from config.settings import settings
from utils.exceptions import ExportError
from utils.logger import logger

# Headline printed in front of PASS/FAIL for commands that check something
HEADLINES = {
    "thm3": "identical complexes",
    "free-cert": "free right B-module",
    "structure": "structure theorem",
    "validate": "resolution of K",
    "transport": "transport along comparison maps",
    "reduce": "universal reduction",
    "brst": "BRST isomorphism",
    "hk0": "agrees with the direct model",
}

SUFFIX_FORMATS = {".json": "json", ".csv": "csv"}


def _isVector(value: Any) -> bool:
    return isinstance(value, list) and all(isinstance(v, str) for v in value)


def _isVectorGrid(value: Any) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(row, list) and all(_isVector(cell) for cell in row) for row in value)
    )


def _isDimSequence(key: str, value: Any) -> bool:
    if not key.lower().endswith("dims"):
        return False
    if isinstance(value, list):
        return all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    if isinstance(value, dict):
        return all(isinstance(v, int) and not isinstance(v, bool) for v in value.values())
    return False


def _vectorText(vector: list[str]) -> str:
    return "[" + ", ".join(vector) + "]"


class ExportService:
    """Service for rendering and exporting reports in various formats."""

    def __init__(self) -> None:
        """Initialize the export service."""
        self.supportedFormats = ["text", "json", "csv"]
        logger.info("Export service initialized with formats: " + ", ".join(self.supportedFormats))

    def render(self, command: str, report: dict[str, Any], format: str = "text") -> str:
        """
        Render a report.

        Args:
            command: Name of the command that produced the report
            report: The report as returned by a record's toDict()
            format: "text", "json" or "csv"

        Returns:
            The rendered report, ending in a newline

        Raises:
            ExportError: If the format is not supported
        """
        format = format.lower()
        if format not in self.supportedFormats:
            raise ExportError(f"Unsupported format: {format}. Supported: {self.supportedFormats}")
        if format == "json":
            return self._renderJson(command, report)
        if format == "csv":
            return self.dimensionFrame(report).to_csv(index_label="sequence")
        return self._renderText(command, report)

    def exportReport(self, command: str, report: dict[str, Any], filePath: Path, format: str | None = None) -> None:
        """
        Write a report to a file.

        Args:
            command: Name of the command that produced the report
            report: The report dictionary
            filePath: Destination; the suffix picks the format when none is given
            format: Explicit format overriding the suffix

        Raises:
            ExportError: If export fails
        """
        chosen = format or SUFFIX_FORMATS.get(filePath.suffix.lower(), "text")
        try:
            filePath.parent.mkdir(parents=True, exist_ok=True)
            content = self.render(command, report, chosen)
            with open(filePath, "w", encoding="utf-8") as f:
                f.write(content)
            logger.info(f"Exported {command} report to {filePath} in {chosen} format")

        except ExportError:
            raise
        except OSError as e:
            logger.error(f"Export failed: {e}")
            raise ExportError(f"Failed to export report: {e}") from e

    def dimensionFrame(self, report: dict[str, Any]) -> pd.DataFrame:
        """
        Collect every dimension sequence of a report into one table.

        Rows are the dotted paths of the sequences, columns the degrees;
        degrees a sequence does not cover show as "-".
        """
        rows: dict[str, dict[int, int]] = {}
        self._collectDims(report, "", rows)
        if not rows:
            return pd.DataFrame()
        frame = pd.DataFrame.from_dict(rows, orient="index")
        frame = frame.reindex(sorted(frame.columns), axis=1)
        frame.columns = [str(c) for c in frame.columns]
        return frame.map(lambda v: "-" if pd.isna(v) else str(int(v)))

    def _collectDims(self, value: Any, path: str, rows: dict[str, dict[int, int]]) -> None:
        if not isinstance(value, dict):
            return
        for key in sorted(value):
            item = value[key]
            label = f"{path}.{key}" if path else key
            if _isDimSequence(key, item):
                if isinstance(item, list):
                    rows[label] = dict(enumerate(item))
                else:
                    rows[label] = {int(n): d for n, d in item.items()}
            elif isinstance(item, dict):
                self._collectDims(item, label, rows)

    def _renderJson(self, command: str, report: dict[str, Any]) -> str:
        document = {"command": command, "report": report}
        return json.dumps(document, indent=settings.output.indent, sort_keys=True, ensure_ascii=False) + "\n"

    def _renderText(self, command: str, report: dict[str, Any]) -> str:
        lines = [command.upper(), "=" * max(len(command), 20)]
        if "passed" in report:
            headline = HEADLINES.get(command, "result")
            lines.append(f"{headline}: {'PASS' if report['passed'] else 'FAIL'}")

        frame = self.dimensionFrame(report)
        if not frame.empty:
            lines.append("")
            lines.append("dimensions")
            lines.append(frame.to_string())

        lines.append("")
        self._appendLines(report, 0, lines)
        return "\n".join(lines).rstrip() + "\n"

    def _appendLines(self, value: dict[str, Any], depth: int, lines: list[str]) -> None:
        pad = "  " * depth
        for key in sorted(value):
            item = value[key]
            if key == "passed" and depth == 0:
                continue
            if _isDimSequence(key, item):
                continue
            if key == "products" and isinstance(item, dict):
                self._appendProducts(item, depth, lines)
            elif isinstance(item, dict):
                if not item:
                    lines.append(f"{pad}{key}: {{}}")
                    continue
                lines.append(f"{pad}{key}:")
                self._appendLines(item, depth + 1, lines)
            elif _isVector(item):
                lines.append(f"{pad}{key}: {_vectorText(item)}")
            elif isinstance(item, list) and item and all(_isVector(v) for v in item):
                lines.append(f"{pad}{key}:")
                lines.extend(f"{pad}  {_vectorText(v)}" for v in item)
            elif _isVectorGrid(item):
                lines.append(f"{pad}{key}:")
                for matrix in item:
                    lines.extend(f"{pad}  {_vectorText(row)}" for row in matrix)
                    lines.append(f"{pad}  --")
            elif isinstance(item, list) and item and all(isinstance(v, dict) for v in item):
                lines.append(f"{pad}{key}:")
                for entry in item:
                    lines.append(f"{pad}  -")
                    self._appendLines(entry, depth + 2, lines)
            else:
                lines.append(f"{pad}{key}: {self._scalarText(item)}")

    def _appendProducts(self, products: dict[str, Any], depth: int, lines: list[str]) -> None:
        """Product tables as grids: row i, column j holds class_i * class_j."""
        pad = "  " * depth
        lines.append(f"{pad}products:")
        for key in sorted(products):
            grid = products[key]
            lines.append(f"{pad}  degrees ({key}):")
            if not grid or not grid[0]:
                lines.append(f"{pad}    (empty)")
                continue
            frame = pd.DataFrame([[_vectorText(cell) for cell in row] for row in grid])
            lines.extend(f"{pad}    {line}" for line in frame.to_string().splitlines())

    @staticmethod
    def _scalarText(value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, list):
            return "[" + ", ".join(str(v) for v in value) + "]"
        return str(value)
