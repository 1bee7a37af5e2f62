"""Tests for reading problem documents and resolution files."""

import json
from fractions import Fraction

import pytest

from core.algebra import opposite
from oracles import vector
from utils.exceptions import InvalidLieActionError, ParseError, ValidationError

M2_STRUCTURE = [
    [0, 0, 0, "1"], [0, 1, 1, "1"],
    [1, 2, 0, "1"], [1, 3, 1, "1"],
    [2, 0, 2, "1"], [2, 1, 3, "1"],
    [3, 2, 2, "1"], [3, 3, 3, "1"],
]


def m2Document(**sections):
    algebra = {"dim": 4, "labels": ["E11", "E12", "E21", "E22"], "unit": ["1", "0", "0", "1"], "structure": M2_STRUCTURE}
    document = {"algebra": algebra}
    document.update(sections)
    return document


def writeJson(tmp_path, document, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


class TestShippedExamples:
    def test_dual_numbers(self, inputService, examplePath):
        problem = inputService.loadProblem(examplePath("dual_numbers.json"))
        assert problem.algebra.dim == 2
        assert problem.algebra.labels == ("1", "t")
        assert problem.subalgebra is not None and problem.subalgebra.dim == 2
        assert problem.requireAction().rho == (vector(0, 1),)
        assert problem.source == examplePath("dual_numbers.json")

    def test_named_and_built_in_modules(self, inputService, examplePath):
        problem = inputService.loadProblem(examplePath("m2_nilpotent.json"))
        assert problem.module("column").dim == 2
        assert problem.module("row").algebra == opposite(problem.algebra)
        assert problem.module("induced").dim == 2
        assert problem.module("K").dim == 1
        assert problem.module("regular").dim == 4
        with pytest.raises(ValidationError) as info:
            problem.module("missing")
        assert "column" in info.value.message

    def test_trivial_subalgebra_without_action(self, inputService, examplePath):
        problem = inputService.loadProblem(examplePath("m2_trivial.json"))
        assert problem.requireSubalgebra().dim == 1
        with pytest.raises(ValidationError):
            problem.requireAction()

    def test_lie_action_without_subalgebra(self, inputService, examplePath):
        problem = inputService.loadProblem(examplePath("m2_nonabelian_lie.json"))
        assert problem.requireAction().rank == 2
        assert problem.requireAction().rho[0] == (Fraction(1, 2), 0, 0, Fraction(-1, 2))
        with pytest.raises(ValidationError):
            problem.requireSubalgebra()
        with pytest.raises(ValidationError):
            problem.module("K")

    def test_resolution_file(self, inputService, examplePath):
        data = inputService.loadResolution(examplePath("dual_numbers_koszul.json"))
        assert data.fiberDims == (1, 1)
        assert data.periodic
        assert list(data.differentials[1]) == [(0, 0, vector(0, 1))]


class TestMalformedDocuments:
    def test_missing_file(self, inputService, tmp_path):
        with pytest.raises(ParseError):
            inputService.loadProblem(tmp_path / "absent.json")

    def test_invalid_json(self, inputService, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"algebra\": ", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            inputService.loadProblem(path)
        assert "invalid JSON" in info.value.message

    def test_document_must_be_an_object(self, inputService):
        with pytest.raises(ParseError):
            inputService.parseProblem([1, 2])
        with pytest.raises(ParseError) as info:
            inputService.parseProblem({})
        assert info.value.location == "document.algebra"

    def test_float_literals_are_rejected(self, inputService):
        document = m2Document()
        document["algebra"]["unit"] = [1.0, 0, 0, 1]
        with pytest.raises(ParseError) as info:
            inputService.parseProblem(document)
        assert info.value.location == "algebra.unit[0]"

    def test_zero_denominator(self, inputService):
        document = m2Document()
        document["algebra"]["structure"] = [*M2_STRUCTURE[:-1], [3, 3, 3, "1/0"]]
        with pytest.raises(ParseError):
            inputService.parseProblem(document)

    def test_out_of_range_index(self, inputService):
        document = m2Document()
        document["algebra"]["structure"] = [*M2_STRUCTURE, [4, 0, 0, "1"]]
        with pytest.raises(ValidationError):
            inputService.parseProblem(document)

    def test_lie_section_needs_an_action(self, inputService):
        with pytest.raises(ParseError):
            inputService.parseProblem(m2Document(lie={"dim": 1}))

    def test_module_names_cannot_shadow_built_ins(self, inputService):
        module = {"dim": 1, "action": [[[0, 0, "1"]], [], [], [[0, 0, "1"]]]}
        with pytest.raises(ParseError):
            inputService.parseProblem(m2Document(modules={"K": module}))

    def test_module_over_b_needs_a_subalgebra(self, inputService):
        module = {"dim": 1, "over": "B", "action": [[[0, 0, "1"]]]}
        with pytest.raises(ValidationError):
            inputService.parseProblem(m2Document(modules={"v": module}))


class TestAxiomViolations:
    def test_non_associative_structure(self, inputService):
        # (e1 e2) e2 = e1 but e1 (e2 e2) = 0
        structure = [[0, 0, 0, "1"], [0, 1, 1, "1"], [0, 2, 2, "1"], [1, 0, 1, "1"], [2, 0, 2, "1"], [1, 2, 1, "1"]]
        document = {"algebra": {"dim": 3, "unit": ["1", "0", "0"], "structure": structure}}
        with pytest.raises(ValidationError):
            inputService.parseProblem(document)

    def test_subalgebra_must_contain_the_unit(self, inputService):
        document = m2Document(subalgebra={"inclusion": [["1", "0", "0", "0"], ["0", "1", "0", "0"]], "eps": ["1", "0"]})
        with pytest.raises(ValidationError):
            inputService.parseProblem(document)

    def test_action_must_respect_brackets(self, inputService):
        document = m2Document(lie={"dim": 2}, action={"rho": [["0", "1", "0", "0"], ["0", "0", "1", "0"]]})
        with pytest.raises(InvalidLieActionError) as info:
            inputService.parseProblem(document)
        assert info.value.errorCode == "INVALID_LIE_ACTION"

    def test_module_unit_must_act_as_identity(self, inputService):
        module = {"dim": 1, "action": [[], [], [], []]}
        with pytest.raises(ValidationError):
            inputService.parseProblem(m2Document(modules={"v": module}))


class TestResolutionFiles:
    def test_extra_differential(self, inputService, tmp_path):
        path = writeJson(tmp_path, {"fiberDims": [1, 1], "differentials": {"1": [], "2": []}}, "resolution.json")
        with pytest.raises(ParseError):
            inputService.loadResolution(path)

    def test_periodic_flag_must_be_boolean(self, inputService, tmp_path):
        path = writeJson(tmp_path, {"fiberDims": [1], "differentials": {}, "periodic": "yes"}, "resolution.json")
        with pytest.raises(ParseError) as info:
            inputService.loadResolution(path)
        assert info.value.location == "resolution.periodic"

    def test_malformed_entry(self, inputService, tmp_path):
        path = writeJson(tmp_path, {"fiberDims": [1, 1], "differentials": {"1": [[0, 0]]}}, "resolution.json")
        with pytest.raises(ParseError):
            inputService.loadResolution(path)

    def test_missing_degrees_default_to_zero_maps(self, inputService, tmp_path):
        path = writeJson(tmp_path, {"fiberDims": [1, 2], "differentials": {}}, "resolution.json")
        data = inputService.loadResolution(path)
        assert data.fiberDims == (1, 2)
        assert data.differentials[1] == []
        assert not data.periodic
