"""Tests for the Hecke algebra, its degree-0 model, Tor and Ext."""

import pytest

from core.algebra import LeftModule, characterModule
from core.complexes import EndComplex, cohomologyAlgebra
from core.hecke import (
    barModelConsistency,
    compareHk0WithDirect,
    extASelfExt,
    extB,
    freenessCertificate,
    heckeAlgebra,
    hk0Direct,
    sourceComplex,
    structureTheoremReport,
    tor,
)
from core.linalg import SparseMatrix, isZeroVector, rank
from core.models import ResolutionKind
from core.resolutions import ResolutionData, ceComplex
from oracles import vector
from utils.exceptions import ResolutionError, UnstableTruncationError, ValidationError


class TestTor:
    def test_dual_numbers_over_themselves(self, dualNumbers, dualPair):
        report = tor(dualNumbers, dualPair, 4)
        assert report.dims == (1, 0, 0, 0)
        assert report.vanishing

    def test_matrices_over_subalgebras(self, m2, nilpotentPair, trivialPair):
        assert tor(m2, nilpotentPair, 4).dims == (2, 0, 0, 0)
        assert tor(m2, trivialPair, 4).dims == (4, 0, 0, 0)

    def test_triangular_matrices_are_not_flat(self, upperTriangular, triangularPair):
        report = tor(upperTriangular, triangularPair, 4)
        assert report.dims == (2, 1, 1, 1)
        assert not report.vanishing


class TestHeckeAlgebra:
    def test_dual_numbers(self, dualNumbers, dualPair):
        result = heckeAlgebra(dualNumbers, dualPair, window=4, maxDegree=3, shifts=5)
        assert result.dims == {0: 1, 1: 1, 2: 1, 3: 1}
        assert result.stable
        assert not result.advisory
        assert result.resolutionUsed is ResolutionKind.BAR
        assert not isZeroVector(result.table.product(1, 0, 1, 0))

    def test_matrices_over_the_nilpotent_subalgebra(self, m2, nilpotentPair):
        result = heckeAlgebra(m2, nilpotentPair, window=4, maxDegree=3, shifts=5)
        assert result.dims == {0: 1, 1: 0, 2: 0, 3: 0}
        assert not isZeroVector(result.table.unitClass)

    def test_negative_degrees(self, dualNumbers, dualPair):
        result = heckeAlgebra(dualNumbers, dualPair, window=3, maxDegree=1, minDegree=-1, shifts=5)
        assert result.dims[-1] == 0
        assert result.stable

    def test_strict_mode_raises_on_unstable_degrees(self, dualNumbers, dualPair):
        with pytest.raises(UnstableTruncationError) as info:
            heckeAlgebra(dualNumbers, dualPair, window=2, maxDegree=2, passes=2, strict=True)
        assert info.value.degrees == [2]
        assert info.value.window == 2

    def test_lenient_mode_flags_unstable_degrees(self, dualNumbers, dualPair):
        result = heckeAlgebra(dualNumbers, dualPair, window=2, maxDegree=2, passes=2)
        assert result.stability == {0: True, 1: True, 2: False}
        assert not result.stable

    def test_non_flat_pair_is_advisory(self, upperTriangular, triangularPair):
        result = heckeAlgebra(upperTriangular, triangularPair, window=3, maxDegree=1, shifts=5)
        assert result.advisory
        assert result.torVanishing is not None and not result.torVanishing.vanishing

    def test_file_route_agrees_with_bar_route(self, dualNumbers, dualPair):
        data = ResolutionData((1, 1), {1: [(0, 0, vector(0, 1))]}, periodic=True)
        viaFile = heckeAlgebra(dualNumbers, dualPair, ResolutionKind.FILE, maxDegree=2, resolutionData=data, shifts=5)
        viaBar = heckeAlgebra(dualNumbers, dualPair, maxDegree=2, shifts=5)
        assert viaFile.dims == viaBar.dims
        assert viaFile.resolutionUsed is ResolutionKind.FILE

    def test_rejected_file_resolution(self, dualNumbers, dualPair):
        data = ResolutionData((1, 1), {1: [(0, 0, vector(1, 0))]})
        with pytest.raises(ResolutionError):
            heckeAlgebra(dualNumbers, dualPair, ResolutionKind.FILE, resolutionData=data)

    def test_ce_route_uses_the_bounded_complex(self, dualNumbers, dualPair, dualAction):
        result = heckeAlgebra(dualNumbers, dualPair, ResolutionKind.CE, maxDegree=1, minDegree=-1, action=dualAction, shifts=5)
        direct = cohomologyAlgebra(EndComplex(ceComplex(dualAction)), [-1, 0, 1], shifts=0)
        assert result.dims == dict(direct.dims)
        assert result.torVanishing is None
        assert result.stable
        assert not result.endComplex.truncated

    def test_routes_need_their_data(self, dualNumbers, dualPair, m2Action):
        with pytest.raises(ValidationError):
            sourceComplex(dualNumbers, dualPair, ResolutionKind.CE, 3)
        with pytest.raises(ValidationError):
            sourceComplex(dualNumbers, dualPair, ResolutionKind.CE, 3, action=m2Action)
        with pytest.raises(ValidationError):
            sourceComplex(dualNumbers, dualPair, ResolutionKind.FILE, 3)

    def test_arguments_are_checked(self, dualNumbers, dualPair):
        with pytest.raises(ValidationError):
            heckeAlgebra(dualNumbers, dualPair, window=0)
        with pytest.raises(ValidationError):
            heckeAlgebra(dualNumbers, dualPair, maxDegree=0, minDegree=1)

    def test_result_serializes_both_conventions(self, dualNumbers, dualPair):
        payload = heckeAlgebra(dualNumbers, dualPair, maxDegree=1, shifts=2).toDict()
        assert payload["table"]["convention"] == "composition"
        assert payload["oppositeTable"]["convention"] == "opposite"
        assert payload["tor"]["vanishing"]


class TestDegreeZero:
    def test_direct_model_for_the_nilpotent_subalgebra(self, m2, nilpotentPair):
        direct = hk0Direct(m2, nilpotentPair)
        assert direct.dim == 1
        assert direct.inducedDim == 2
        assert direct.unitClass == vector(1)

    def test_direct_model_is_anti_isomorphic_to_hecke_degree_zero(self, m2, trivialPair):
        direct = hk0Direct(m2, trivialPair, shifts=5)
        assert direct.dim == 4
        result = heckeAlgebra(m2, trivialPair, maxDegree=0, shifts=5)
        comparison = compareHk0WithDirect(result, direct, m2, trivialPair)
        assert comparison.passed

    def test_comparison_for_the_nilpotent_subalgebra(self, m2, nilpotentPair):
        result = heckeAlgebra(m2, nilpotentPair, maxDegree=1, shifts=5)
        assert compareHk0WithDirect(result, hk0Direct(m2, nilpotentPair), m2, nilpotentPair).passed

    def test_comparison_needs_degree_zero(self, dualNumbers, dualPair):
        result = heckeAlgebra(dualNumbers, dualPair, maxDegree=2, minDegree=1, shifts=2)
        with pytest.raises(ValidationError):
            compareHk0WithDirect(result, hk0Direct(dualNumbers, dualPair), dualNumbers, dualPair)


class TestExt:
    def test_ext_of_the_trivial_module(self, dualPair):
        assert extB(dualPair, characterModule(dualPair), 3).dims == (1, 1, 1)

    def test_dual_numbers_are_self_injective(self, dualPair):
        assert extB(dualPair, LeftModule.regular(dualPair.asAlgebra()), 3).dims == (1, 0, 0)

    def test_parent_modules_are_restricted(self, m2, nilpotentPair):
        assert extB(nilpotentPair, LeftModule.regular(m2), 2).dims == (2, 0)

    def test_unrelated_modules_are_rejected(self, m2, dualPair):
        with pytest.raises(ValidationError):
            extB(dualPair, LeftModule.regular(m2), 2)

    def test_self_ext_of_the_induced_module(self, m2, nilpotentPair):
        report = extASelfExt(m2, nilpotentPair, 3)
        assert report.dims == (1, 0, 0)
        assert not report.advisory

    def test_self_ext_is_advisory_without_flatness(self, upperTriangular, triangularPair):
        assert extASelfExt(upperTriangular, triangularPair, 2).advisory


class TestStructureChecks:
    def test_freeness_certificate(self, m2, nilpotentPair):
        good = freenessCertificate(m2, nilpotentPair, [vector(1, 0, 0, 0), vector(0, 0, 1, 0)])
        assert good.passed
        bad = freenessCertificate(m2, nilpotentPair, [vector(1, 0, 0, 0), vector(0, 1, 0, 0)])
        assert not bad.passed
        assert (bad.rank, bad.expected) == (2, 4)
        assert freenessCertificate(m2, nilpotentPair, []).reason == "empty candidate"

    def test_bar_models_agree(self, m2, nilpotentPair, dualNumbers, dualPair):
        report = barModelConsistency(m2, nilpotentPair, 3)
        assert report.passed
        assert report.fiberDims == (1, 1, 1, 1)
        assert barModelConsistency(dualNumbers, dualPair, 3).passed

    def test_structure_report_for_dual_numbers(self, dualNumbers, dualPair):
        report = structureTheoremReport(dualNumbers, dualPair, window=3, maxDegree=2, shifts=5)
        assert report.heckeDims == report.selfExtDims == report.extBDims == (1, 1, 1)
        assert report.negativeDegreesVanish
        assert report.passed

    def test_structure_report_checks_every_negative_degree(self, dualNumbers, dualPair):
        report = structureTheoremReport(dualNumbers, dualPair, window=3, maxDegree=1, shifts=3, minDegree=-3)
        assert report.negativeDegrees == (-3, -2, -1)
        assert report.negativeDegreesVanish
        assert report.toDict()["negativeDegrees"] == [-3, -2, -1]
        assert report.passed

    def test_structure_report_checks_degree_minus_one_by_default(self, dualNumbers, dualPair):
        report = structureTheoremReport(dualNumbers, dualPair, window=3, maxDegree=1, shifts=3, minDegree=0)
        assert report.negativeDegrees == (-1,)

    def test_structure_report_for_matrices(self, m2, nilpotentPair):
        report = structureTheoremReport(m2, nilpotentPair, window=3, maxDegree=2, shifts=5)
        assert report.heckeDims == (1, 0, 0)
        assert report.passed

    def test_structure_report_without_flatness_is_advisory(self, upperTriangular, triangularPair):
        report = structureTheoremReport(upperTriangular, triangularPair, window=3, maxDegree=1, shifts=5)
        assert report.passed
        assert report.toDict()["advisory"]


def productRanks(table) -> dict[tuple[int, int], int]:
    """Rank of the span of all products x_i * y_j, per pair of degrees."""
    ranks = {}
    for (n, m), grid in table.products.items():
        columns = [cell for row in grid for cell in row]
        target = table.dims.get(n + m, 0)
        ranks[(n, m)] = rank(SparseMatrix.fromColumns(columns, target)) if columns and target else 0
    return ranks


class TestWindowGrowth:
    @pytest.mark.parametrize(
        "algebraName, pairName, window, maxDegree",
        [
            ("dualNumbers", "dualPair", 2, 2),
            ("dualNumbers", "dualPair", 3, 2),
            ("m2", "nilpotentPair", 2, 2),
            ("m2", "trivialPair", 2, 1),
        ],
    )
    def test_stable_degrees_survive_a_larger_window(self, request, algebraName, pairName, window, maxDegree):
        a, b = request.getfixturevalue(algebraName), request.getfixturevalue(pairName)
        smaller = heckeAlgebra(a, b, window=window, maxDegree=maxDegree, shifts=3)
        larger = heckeAlgebra(a, b, window=window + 1, maxDegree=maxDegree, shifts=3)
        stableDegrees = [n for n, flag in smaller.stability.items() if flag]
        assert stableDegrees
        for n in stableDegrees:
            assert larger.stability[n]
            assert larger.dims[n] == smaller.dims[n]
        smallRanks, largeRanks = productRanks(smaller.table), productRanks(larger.table)
        for (n, m), value in smallRanks.items():
            if n in stableDegrees and m in stableDegrees and n + m in stableDegrees:
                assert largeRanks[(n, m)] == value
        if 0 in stableDegrees:
            assert not isZeroVector(larger.table.unitClass)

    def test_unstable_degree_is_resolved_by_the_next_window(self, dualNumbers, dualPair):
        smaller = heckeAlgebra(dualNumbers, dualPair, window=2, maxDegree=2, shifts=3)
        larger = heckeAlgebra(dualNumbers, dualPair, window=3, maxDegree=2, shifts=3)
        assert not smaller.stability[2]
        assert larger.stability[2]
        assert larger.dims[2] == 1
