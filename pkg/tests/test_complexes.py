"""Tests for A-matrices, chain complexes and the endomorphism complex."""

from fractions import Fraction
from functools import cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.algebra import AugmentedSubalgebra
from core.complexes import (
    AMatrix,
    ChainComplex,
    ChainMap,
    CochainComplex,
    EndComplex,
    FreeAComplex,
    buildEndComplex,
    chainMapTransport,
    cohomology,
    cohomologyAlgebra,
    compose,
    differenceIsCoboundary,
    endDifferential,
    homology,
    identityMap,
    isChainMap,
    partialDifferentials,
)
from core.linalg import SparseMatrix, isZeroVector
from core.resolutions import ceComplex, inducedBarComplex
from oracles import dualNumbersAlgebra, koszulDualNumbers, m2AbelianAction, m2Algebra, m2BorelLieAction, vector
from strategies import vectors
from utils.exceptions import (
    DegreeOutOfRangeError,
    NotAHomotopyEquivalenceError,
    ValidationError,
    WindowUnderflowError,
)

PROPERTY = settings(max_examples=30, deadline=None)
LEIBNIZ = settings(max_examples=100, deadline=None)


def tTwoTerm() -> FreeAComplex:
    """D <-t- D over the dual numbers, a bounded complex."""
    d = dualNumbersAlgebra()
    return FreeAComplex(d, (1, 1), (AMatrix(d, 1, 1, {(0, 0): vector(0, 1)}),), True, "t")


def koszul(top: int = 5) -> FreeAComplex:
    return koszulDualNumbers(AugmentedSubalgebra.whole(dualNumbersAlgebra(), [1, 0]), top)


def dualBarEnd() -> EndComplex:
    """Window 3 of End over the induced bar resolution of the dual numbers over themselves."""
    d = dualNumbersAlgebra()
    return EndComplex(inducedBarComplex(d, AugmentedSubalgebra.whole(d, [1, 0]), 4), 3)


EXAMPLE_ENDS = {
    "dual-bar": dualBarEnd,
    "m2-ce-abelian": lambda: EndComplex(ceComplex(m2AbelianAction(m2Algebra()))),
    "m2-ce-borel": lambda: EndComplex(ceComplex(m2BorelLieAction(m2Algebra()))),
    "two-term": lambda: EndComplex(tTwoTerm()),
}


@cache
def exampleEnd(name: str) -> tuple[EndComplex, list[int]]:
    """An example End complex with the degrees its Leibniz check draws from."""
    end = EXAMPLE_ENDS[name]()
    lo, hi = end.honestDegrees()
    return end, list(range(max(lo, -2), hi + 1))


class TestAMatrix:
    @PROPERTY
    @given(vectors(2 * 3 * 4, bound=2), vectors(3 * 2 * 4, bound=2))
    def test_then_matches_scalar_composition(self, first, second):
        a = m2Algebra()
        f = AMatrix.fromCoordinates(a, 2, 3, first)
        g = AMatrix.fromCoordinates(a, 3, 2, second)
        assert f.then(g).toScalarMatrix() == g.toScalarMatrix() @ f.toScalarMatrix()

    def test_coordinates_round_trip_through_from_coordinates(self):
        a = m2Algebra()
        f = AMatrix(a, 1, 2, {(0, 1): vector(0, 1, 0, 0)})
        assert AMatrix.fromCoordinates(a, 1, 2, f.coordinates()) == f
        assert f.coordinates() == vector(0, 0, 0, 0, 0, 1, 0, 0)

    def test_entries_must_fit(self):
        a = m2Algebra()
        with pytest.raises(ValidationError):
            AMatrix(a, 1, 1, {(1, 0): a.unit})
        with pytest.raises(ValidationError):
            AMatrix(a, 1, 1, {(0, 0): vector(1, 0)})

    def test_zero_entries_are_dropped(self):
        a = m2Algebra()
        assert AMatrix(a, 2, 2, {(0, 0): a.zero()}).isZero()
        assert AMatrix.identity(a, 2) - AMatrix.identity(a, 2) == AMatrix.zero(a, 2, 2)


class TestChainComplexes:
    def test_bounded_homology(self):
        c = ChainComplex((1, 1), (SparseMatrix.zeros(1, 1),), True)
        assert homology(c, 0).dim == 1
        assert homology(c, 1).dim == 1

    def test_top_of_truncation_is_not_honest(self):
        c = ChainComplex((1, 1), (SparseMatrix.zeros(1, 1),), False)
        assert homology(c, 0).dim == 1
        with pytest.raises(DegreeOutOfRangeError) as info:
            homology(c, 1)
        assert info.value.degree == 1

    def test_d_squared_is_checked(self):
        with pytest.raises(ValidationError) as info:
            ChainComplex((1, 1, 1), (SparseMatrix.identity(1), SparseMatrix.identity(1)))
        assert info.value.axiom == "d-squared(n=2)"

    def test_cochain_complex(self):
        c = CochainComplex(0, (1, 1), (SparseMatrix.identity(1),))
        assert cohomology(c, 0).dim == 0
        assert cohomology(c, 1).dim == 0
        assert c.dim(5) == 0

    def test_free_complex_checks_d_squared(self):
        d = dualNumbersAlgebra()
        one = AMatrix.identity(d, 1)
        with pytest.raises(ValidationError) as info:
            FreeAComplex(d, (1, 1, 1), (one, one), True)
        assert info.value.axiom == "d-squared(s=2)"

    def test_koszul_complex_resolves_the_trivial_module(self):
        scalar = koszul(4).scalarComplex()
        assert [homology(scalar, n).dim for n in range(4)] == [1, 0, 0, 0]

    def test_truncate_marks_unbounded(self):
        x = tTwoTerm().truncate(0)
        assert x.top == 0
        assert not x.bounded


class TestEndComplex:
    def test_window_geometry(self):
        end = EndComplex(koszul(5), 4)
        assert end.truncated
        assert (end.minDegree, end.maxDegree) == (-5, 4)
        assert end.honestDegrees() == (0, 3)
        assert end.componentDegrees(-1) == [0, 1, 2, 3, 4]
        assert end.degreeDim(2) == 3 * 2

    def test_bounded_complex_is_not_truncated(self):
        end = EndComplex(tTwoTerm())
        assert not end.truncated
        assert end.honestDegrees() == (-1, 1)

    def test_window_beyond_built_degree_is_rejected(self):
        with pytest.raises(ValidationError):
            EndComplex(koszul(3), 4)

    def test_differential_squares_to_zero(self):
        end = EndComplex(koszul(5), 4)
        for n in range(-4, 3):
            assert (end.differentialMatrix(n + 1) @ end.differentialMatrix(n)).isZero()

    @pytest.mark.parametrize("name", sorted(EXAMPLE_ENDS))
    @LEIBNIZ
    @given(data=st.data())
    def test_leibniz_rule(self, name, data):
        end, degrees = exampleEnd(name)
        n = data.draw(st.sampled_from(degrees))
        m = data.draw(st.sampled_from([k for k in degrees if end.canMultiply(n, k) and end.canMultiply(n + 1, k)]))
        f = end.cochain(n, data.draw(vectors(end.degreeDim(n), bound=3)))
        g = end.cochain(m, data.draw(vectors(end.degreeDim(m), bound=3)))
        left = end.differential(compose(f, g))
        sign = Fraction(1) if n % 2 == 0 else Fraction(-1)
        right = end.compose(end.differential(f), g) + end.compose(f, end.differential(g)).scale(sign)
        assert left.coordinates() == right.coordinates()

    def test_identity_is_closed_and_neutral(self):
        end = EndComplex(koszul(5), 4)
        identity = end.identity()
        assert identity.isClosed()
        f = end.fromDifferential()
        assert end.compose(identity, f).coordinates() == f.coordinates()
        assert end.compose(f, identity).coordinates() == f.coordinates()

    def test_partial_differentials_of_the_identity(self):
        end = buildEndComplex(koszul(5), 4)
        d = end.fromDifferential()
        first, second = partialDifferentials(end, end.identity())
        assert second.coordinates() == d.coordinates()
        assert first.coordinates() == d.scale(Fraction(-1)).coordinates()
        assert isZeroVector(endDifferential(end, end.identity()).coordinates())
        assert isZeroVector(endDifferential(end, d).coordinates())

    def test_composition_beyond_the_window_underflows(self):
        end = EndComplex(koszul(5), 4)
        with pytest.raises(WindowUnderflowError) as info:
            end.compose(end.zero(1), end.zero(-1))
        assert info.value.requiredDegree == 5

    def test_cochain_length_is_checked(self):
        end = EndComplex(tTwoTerm())
        with pytest.raises(ValidationError):
            end.cochain(0, vector(1))

    def test_cochains_of_different_degrees_do_not_add(self):
        end = EndComplex(tTwoTerm())
        with pytest.raises(ValidationError):
            end.zero(0) + end.zero(1)

    def test_difference_is_coboundary(self):
        end = EndComplex(koszul(5), 4)
        h = end.cochain(-1, tuple(Fraction(k % 3) for k in range(end.degreeDim(-1))))
        shifted = end.identity() + end.differential(h)
        assert differenceIsCoboundary(end, end.identity(), shifted)
        assert not differenceIsCoboundary(end, end.identity(), end.zero(0))


class TestCohomologyAlgebra:
    def test_ext_of_dual_numbers_is_polynomial(self):
        end = EndComplex(koszul(5), 4)
        table = cohomologyAlgebra(end, [0, 1, 2, 3], shifts=10)
        assert [table.dims[n] for n in table.degrees] == [1, 1, 1, 1]
        assert not isZeroVector(table.product(1, 0, 1, 0))
        assert not isZeroVector(table.product(1, 0, 2, 0))
        assert table.unitClass is not None and not isZeroVector(table.unitClass)
        assert table.shiftChecks == 10
        assert table.isAssociative()

    def test_degrees_outside_the_honest_range(self):
        end = EndComplex(koszul(5), 4)
        with pytest.raises(DegreeOutOfRangeError) as info:
            cohomologyAlgebra(end, [0, 4])
        assert info.value.degree == 4
        with pytest.raises(DegreeOutOfRangeError):
            cohomologyAlgebra(end, [-1])

    def test_opposite_table(self):
        table = cohomologyAlgebra(EndComplex(koszul(5), 4), [0, 1, 2])
        flipped = table.opposite()
        assert flipped.convention == "opposite"
        assert flipped.opposite().products == table.products
        assert flipped.product(1, 0, 1, 0) == tuple(-c for c in table.product(1, 0, 1, 0))

    def test_table_serializes(self):
        table = cohomologyAlgebra(EndComplex(koszul(5), 4), [0, 1])
        payload = table.toDict()
        assert payload["dims"] == {"0": 1, "1": 1}
        assert len(payload["unitClass"]) == 1
        assert "0,1" in payload["products"]


class TestTransport:
    def test_identity_transport(self):
        x = koszul(5)
        end = EndComplex(x, 4)
        idx = identityMap(x)
        zero = ChainMap(x, x, 1, ())
        report = chainMapTransport(end, end, idx, idx, zero, zero, [0, 1, 2], shifts=5)
        assert report.passed
        assert report.transitions[1] == (vector(1),)

    def test_zero_maps_are_not_an_equivalence(self):
        x = koszul(5)
        end = EndComplex(x, 4)
        nothing = ChainMap(x, x, 0, ())
        homotopy = ChainMap(x, x, 1, ())
        assert isChainMap(nothing, x.top) is None
        with pytest.raises(NotAHomotopyEquivalenceError) as info:
            chainMapTransport(end, end, nothing, nothing, homotopy, homotopy, [0])
        assert info.value.degree == 0

    def test_windows_must_agree(self):
        x = koszul(5)
        idx = identityMap(x)
        zero = ChainMap(x, x, 1, ())
        with pytest.raises(ValidationError):
            chainMapTransport(EndComplex(x, 4), EndComplex(x, 3), idx, idx, zero, zero, [0])
