"""Tests for bar and Chevalley-Eilenberg complexes, file resolutions and comparison maps."""

import pytest

from core.complexes import EndComplex, chainMapTransport, homotopyDefect, isChainMap
from core.resolutions import (
    ResolutionData,
    barResolution,
    barWords,
    ceComplex,
    comparisonMaps,
    extendByZero,
    fileResolution,
    induceComplex,
    inducedBarComplex,
    liftChainMap,
    padWithContractible,
    tensorDownToK,
    twoSidedBarComplex,
    validateResolution,
    wedgeBasis,
)
from oracles import brokenTwoTerm, koszulDualNumbers, vector
from utils.exceptions import ResolutionError, ValidationError


def koszulData() -> ResolutionData:
    return ResolutionData((1, 1), {1: [(0, 0, vector(0, 1))]}, periodic=True)


class TestBarComplexes:
    def test_bar_words(self):
        assert barWords(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert barWords(3, 0) == [()]

    def test_trivial_subalgebra_gives_a_bounded_complex(self, m2, trivialPair):
        x = inducedBarComplex(m2, trivialPair, 3)
        assert x.fiberDims == (1,)
        assert x.bounded

    def test_nilpotent_subalgebra_is_truncated(self, m2, nilpotentPair):
        x = inducedBarComplex(m2, nilpotentPair, 3)
        assert x.fiberDims == (1, 1, 1, 1)
        assert not x.bounded
        assert x.d(1).entry(0, 0) == vector(0, 1, 0, 0)

    def test_bar_resolution_resolves_k(self, dualPair):
        report = validateResolution(barResolution(dualPair, 4), dualPair, 3)
        assert report.passed
        assert report.homologyDims == (1, 0, 0)

    def test_inducing_the_bar_resolution(self, m2, nilpotentPair):
        induced = induceComplex(barResolution(nilpotentPair, 3), nilpotentPair)
        assert induced == inducedBarComplex(m2, nilpotentPair, 3)

    def test_inducing_needs_a_complex_over_the_subalgebra(self, dualPair, nilpotentPair):
        with pytest.raises(ValidationError):
            induceComplex(barResolution(dualPair, 2), nilpotentPair)

    def test_subalgebra_of_another_algebra_is_rejected(self, dualNumbers, nilpotentPair):
        with pytest.raises(ValidationError):
            inducedBarComplex(dualNumbers, nilpotentPair, 2)

    def test_two_sided_bar_tensored_down(self, m2, nilpotentPair):
        twoSided = twoSidedBarComplex(m2, nilpotentPair, 3)
        assert twoSided.fiberDims == (2, 2, 2, 2)
        assert tensorDownToK(twoSided, nilpotentPair) == inducedBarComplex(m2, nilpotentPair, 3)


class TestChevalleyEilenberg:
    def test_wedge_basis(self):
        assert wedgeBasis(2) == ((), (0,), (1,), (0, 1))

    def test_rank_one_action(self, dualAction):
        x = ceComplex(dualAction)
        assert x.fiberDims == (1, 1)
        assert x.bounded
        assert x.d(1).entry(0, 0) == vector(0, 1)

    def test_borel_action(self, m2BorelAction):
        x = ceComplex(m2BorelAction)
        assert x.fiberDims == (1, 2, 1)
        assert not x.d(2).then(x.d(1)).entries

    def test_extend_by_zero(self, dualAction):
        x = extendByZero(ceComplex(dualAction), 3)
        assert x.fiberDims == (1, 1, 0, 0)
        assert not x.bounded


class TestFileResolutions:
    def test_periodic_file_repeats_its_last_differential(self, dualPair):
        x = fileResolution(dualPair, koszulData(), 4)
        assert x.fiberDims == (1, 1, 1, 1, 1)
        assert not x.bounded
        assert x.d(4) == x.d(1)
        assert validateResolution(x, dualPair, 3).passed

    def test_finite_file_is_bounded(self, dualPair):
        data = ResolutionData((1, 1), {1: [(0, 0, vector(0, 1))]})
        x = fileResolution(dualPair, data, 3)
        assert x.bounded
        assert x.top == 1

    def test_periodic_file_needs_equal_fibers(self, dualPair):
        with pytest.raises(ResolutionError):
            fileResolution(dualPair, ResolutionData((1, 2), {}, periodic=True), 3)

    def test_entries_need_subalgebra_coordinates(self, dualPair):
        with pytest.raises(ResolutionError) as info:
            fileResolution(dualPair, ResolutionData((1, 1), {1: [(0, 0, vector(1))]}), 2)
        assert info.value.degree == 1

    def test_file_needs_a_differential(self, dualPair):
        with pytest.raises(ResolutionError):
            fileResolution(dualPair, ResolutionData((1,), {}), 2)

    def test_non_exact_complex_names_the_failing_degree(self, trivialPair):
        report = validateResolution(brokenTwoTerm(trivialPair), trivialPair, 2)
        assert not report.passed
        assert report.failedDegree == 1
        assert report.homologyDims == (1, 1)

    def test_augmentation_must_kill_the_image_of_d1(self, dualPair):
        data = ResolutionData((1, 1), {1: [(0, 0, vector(1, 0))]})
        report = validateResolution(fileResolution(dualPair, data, 1), dualPair, 1)
        assert not report.passed
        assert report.failedDegree == 1

    def test_short_truncation_is_rejected(self, dualPair):
        with pytest.raises(ResolutionError):
            validateResolution(koszulDualNumbers(dualPair, 2), dualPair, 3)


class TestComparison:
    def test_lift_into_a_non_resolution_fails(self, dualPair):
        with pytest.raises(ResolutionError) as info:
            liftChainMap(barResolution(dualPair, 3), brokenTwoTerm(dualPair))
        assert info.value.degree == 1

    def test_comparison_maps_between_bar_and_koszul(self, dualPair):
        bar = barResolution(dualPair, 5)
        koszul = koszulDualNumbers(dualPair, 5)
        maps = comparisonMaps(bar, koszul)
        assert isChainMap(maps.forward, 5) is None
        assert isChainMap(maps.backward, 5) is None
        report = chainMapTransport(
            EndComplex(bar, 4),
            EndComplex(koszul, 4),
            maps.forward,
            maps.backward,
            maps.sourceHomotopy,
            maps.targetHomotopy,
            [0, 1, 2],
            shifts=5,
        )
        assert report.passed

    def test_padding_is_a_homotopy_equivalence(self, dualPair):
        koszul = koszulDualNumbers(dualPair, 5)
        padding = padWithContractible(koszul, 2)
        assert padding.padded.fiberDims == (1, 2, 2, 1, 1, 1)
        assert homotopyDefect(padding.projection.then(padding.inclusion), padding.homotopy, 4) is None
        maps = padding.asComparison()
        report = chainMapTransport(
            EndComplex(koszul, 4),
            EndComplex(padding.padded, 4),
            maps.forward,
            maps.backward,
            maps.sourceHomotopy,
            maps.targetHomotopy,
            [0, 1, 2],
            shifts=5,
        )
        assert report.passed
        assert report.sourceDims == report.targetDims == {0: 1, 1: 1, 2: 1}

    def test_padding_degree_must_be_positive(self, dualPair):
        with pytest.raises(ValidationError):
            padWithContractible(koszulDualNumbers(dualPair, 3), 0)

    def test_padded_complex_can_be_compared_with_the_bar_resolution(self, dualPair):
        padded = padWithContractible(koszulDualNumbers(dualPair, 4), 2).padded
        maps = comparisonMaps(barResolution(dualPair, 4), padded)
        assert isChainMap(maps.forward, 4) is None
