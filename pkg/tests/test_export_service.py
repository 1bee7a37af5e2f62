"""Tests for report rendering and export."""

import json

import pytest

from services.export_service import HEADLINES, ExportService
from utils.exceptions import ExportError

REPORT = {
    "passed": False,
    "homologyDims": [1, 1],
    "failedDegree": 1,
    "reason": None,
    "transitions": {"0": [["1"]], "1": [["1/2", "0"]]},
}

TABLE_REPORT = {
    "table": {
        "convention": "composition",
        "dims": {"0": 1, "1": 1},
        "products": {"0,1": [[["1"]]], "1,1": [[["0"]]]},
        "unitClass": ["1"],
    },
    "stable": True,
}


@pytest.fixture
def exportService() -> ExportService:
    return ExportService()


class TestRender:
    def test_text_has_a_headline_and_dimensions(self, exportService):
        text = exportService.render("validate", REPORT)
        assert text.startswith("VALIDATE\n")
        assert f"{HEADLINES['validate']}: FAIL" in text
        assert "dimensions" in text
        assert "reason: -" in text
        assert text.endswith("\n")

    def test_text_without_a_check_has_no_headline(self, exportService):
        text = exportService.render("tor", {"dims": [1, 0], "vanishing": True})
        assert "PASS" not in text and "FAIL" not in text
        assert "vanishing: yes" in text

    def test_products_render_as_grids(self, exportService):
        text = exportService.render("hecke", TABLE_REPORT)
        assert "degrees (0,1):" in text
        assert "[1]" in text

    def test_json_wraps_the_report(self, exportService):
        document = json.loads(exportService.render("validate", REPORT, "json"))
        assert document["command"] == "validate"
        assert document["report"]["homologyDims"] == [1, 1]

    def test_csv_lists_dimension_sequences(self, exportService):
        lines = exportService.render("hecke", TABLE_REPORT, "CSV").splitlines()
        assert lines[0] == "sequence,0,1"
        assert lines[1] == "table.dims,1,1"

    def test_unsupported_format(self, exportService):
        with pytest.raises(ExportError):
            exportService.render("tor", {}, "xml")


class TestDimensionFrame:
    def test_sequences_of_different_lengths(self, exportService):
        frame = exportService.dimensionFrame({"dims": [1, 0, 2], "nested": {"fiberDims": [3]}})
        assert list(frame.index) == ["dims", "nested.fiberDims"]
        assert list(frame.columns) == ["0", "1", "2"]
        assert frame.loc["nested.fiberDims", "1"] == "-"
        assert frame.loc["dims", "2"] == "2"

    def test_negative_degrees_sort_first(self, exportService):
        frame = exportService.dimensionFrame({"dims": {"-1": 0, "0": 1}})
        assert list(frame.columns) == ["-1", "0"]

    def test_no_sequences(self, exportService):
        assert exportService.dimensionFrame({"passed": True}).empty


class TestExportReport:
    def test_suffix_picks_the_format(self, exportService, tmp_path):
        target = tmp_path / "out" / "report.json"
        exportService.exportReport("validate", REPORT, target)
        assert json.loads(target.read_text(encoding="utf-8"))["command"] == "validate"

    def test_unknown_suffix_falls_back_to_text(self, exportService, tmp_path):
        target = tmp_path / "report.txt"
        exportService.exportReport("validate", REPORT, target)
        assert target.read_text(encoding="utf-8").startswith("VALIDATE")

    def test_explicit_format_wins(self, exportService, tmp_path):
        target = tmp_path / "report.json"
        exportService.exportReport("tor", {"dims": [1]}, target, "csv")
        assert target.read_text(encoding="utf-8").startswith("sequence")

    def test_unwritable_target(self, exportService, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(ExportError):
            exportService.exportReport("tor", {"dims": [1]}, blocker / "report.json")
