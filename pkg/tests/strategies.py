"""Hypothesis strategies for rational matrices, vectors and Clifford words."""

from fractions import Fraction

from hypothesis import strategies as st

from core.brst import ANNIHILATION, CREATION
from core.linalg import SparseMatrix


def rationals(bound: int = 4) -> st.SearchStrategy[Fraction]:
    """Small rationals, zero-heavy so that matrices are sparse."""
    return st.one_of(
        st.just(Fraction(0)),
        st.builds(Fraction, st.integers(-bound, bound), st.integers(1, 3)),
    )


def vectors(length: int, bound: int = 4) -> st.SearchStrategy[tuple[Fraction, ...]]:
    return st.lists(rationals(bound), min_size=length, max_size=length).map(tuple)


@st.composite
def sparseMatrices(draw: st.DrawFn, maxRows: int = 6, maxCols: int = 6) -> SparseMatrix:
    nrows = draw(st.integers(0, maxRows))
    ncols = draw(st.integers(0, maxCols))
    rows = [draw(vectors(ncols)) for _ in range(nrows)]
    return SparseMatrix(nrows, ncols, {i: dict(enumerate(row)) for i, row in enumerate(rows)})


@st.composite
def matrixWithVector(draw: st.DrawFn, maxRows: int = 6, maxCols: int = 6) -> tuple[SparseMatrix, tuple[Fraction, ...]]:
    """A matrix and a vector in its column space."""
    m = draw(sparseMatrices(maxRows, maxCols))
    x = draw(vectors(m.ncols))
    return m, m.applyTo(x)


def cliffordWords(rank: int, maxLength: int = 6) -> st.SearchStrategy[tuple[tuple[int, int], ...]]:
    letters = st.tuples(st.sampled_from((CREATION, ANNIHILATION)), st.integers(0, rank - 1))
    return st.lists(letters, max_size=maxLength).map(tuple)
