"""Exact sparse linear algebra over the rationals.

Matrices are stored row-wise as dictionaries of nonzero Fraction entries.
Elimination picks pivots with a Markowitz cost to keep fill-in low; every
subspace that leaves this module is in reduced row echelon form, so two
subspaces are equal exactly when their bases are equal as data.
"""

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from utils.exceptions import NotASubspaceError, ValidationError

Vector = tuple[Fraction, ...]
SparseRow = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


# --------------------------------------------------------------------------
# Dense vector helpers
# --------------------------------------------------------------------------


def zeroVector(length: int) -> Vector:
    """Return the zero vector of the given length."""
    return (ZERO,) * length


def unitVector(length: int, index: int) -> Vector:
    """Return the standard basis vector e_index."""
    return tuple(ONE if i == index else ZERO for i in range(length))


def addVectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    """Return u + v."""
    return tuple(a + b for a, b in zip(u, v, strict=True))


def subtractVectors(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    """Return u - v."""
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scaleVector(c: Fraction, v: Sequence[Fraction]) -> Vector:
    """Return c * v."""
    return tuple(c * a for a in v)


def linearCombination(coefficients: Sequence[Fraction], vectors: Sequence[Vector], length: int) -> Vector:
    """Return sum_i coefficients[i] * vectors[i]."""
    result = [ZERO] * length
    for c, vector in zip(coefficients, vectors, strict=True):
        if not c:
            continue
        for k, a in enumerate(vector):
            if a:
                result[k] += c * a
    return tuple(result)


def isZeroVector(v: Iterable[Fraction]) -> bool:
    """Return True when every coordinate vanishes."""
    return not any(v)


def toSparseRow(v: Sequence[Fraction]) -> SparseRow:
    """Drop the zero coordinates of a dense vector."""
    return {i: a for i, a in enumerate(v) if a}


def toDenseVector(row: Mapping[int, Fraction], length: int) -> Vector:
    """Expand a sparse row to a dense vector."""
    return tuple(row.get(i, ZERO) for i in range(length))


# --------------------------------------------------------------------------
# Sparse matrices
# --------------------------------------------------------------------------


class SparseMatrix:
    """Immutable sparse rational matrix."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, Fraction]] | None = None) -> None:
        if nrows < 0 or ncols < 0:
            raise ValidationError(f"Matrix shape ({nrows}, {ncols}) is negative", "shape")
        cleaned: dict[int, SparseRow] = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < nrows:
                raise ValidationError(f"Row index {i} outside {nrows} rows", "shape")
            kept = {}
            for j, value in row.items():
                if not 0 <= j < ncols:
                    raise ValidationError(f"Column index {j} outside {ncols} columns", "shape")
                if value:
                    kept[j] = Fraction(value)
            if kept:
                cleaned[i] = kept
        self.nrows = nrows
        self.ncols = ncols
        self._rows = cleaned

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def fromDense(cls, rows: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> "SparseMatrix":
        width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), width, {i: {j: Fraction(a) for j, a in enumerate(row) if a} for i, row in enumerate(rows)})

    @classmethod
    def fromColumns(cls, columns: Sequence[Sequence[Fraction]], nrows: int) -> "SparseMatrix":
        """Build a matrix whose j-th column is columns[j]."""
        rows: dict[int, dict[int, Fraction]] = {}
        for j, column in enumerate(columns):
            for i, a in enumerate(column):
                if a:
                    rows.setdefault(i, {})[j] = a
        return cls(nrows, len(columns), rows)

    @classmethod
    def fromEntries(cls, nrows: int, ncols: int, entries: Mapping[tuple[int, int], Fraction]) -> "SparseMatrix":
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), a in entries.items():
            if a:
                rows.setdefault(i, {})[j] = rows.get(i, {}).get(j, ZERO) + a
        return cls(nrows, ncols, rows)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"], ncols: int | None = None) -> "SparseMatrix":
        width = blocks[0].ncols if blocks else (ncols or 0)
        rows: dict[int, SparseRow] = {}
        offset = 0
        for block in blocks:
            if block.ncols != width:
                raise ValidationError("vstack blocks disagree on column count", "shape")
            for i, row in block._rows.items():
                rows[offset + i] = dict(row)
            offset += block.nrows
        return SparseMatrix(offset, width, rows)

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"], nrows: int | None = None) -> "SparseMatrix":
        height = blocks[0].nrows if blocks else (nrows or 0)
        rows: dict[int, SparseRow] = {}
        offset = 0
        for block in blocks:
            if block.nrows != height:
                raise ValidationError("hstack blocks disagree on row count", "shape")
            for i, row in block._rows.items():
                target = rows.setdefault(i, {})
                for j, a in row.items():
                    target[offset + j] = a
            offset += block.ncols
        return SparseMatrix(height, offset, rows)

    @staticmethod
    def blockDiagonal(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        rows: dict[int, SparseRow] = {}
        rowOffset = colOffset = 0
        for block in blocks:
            for i, row in block._rows.items():
                rows[rowOffset + i] = {colOffset + j: a for j, a in row.items()}
            rowOffset += block.nrows
            colOffset += block.ncols
        return SparseMatrix(rowOffset, colOffset, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nonzeroCount(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows.get(i, {}).get(j, ZERO)

    def row(self, i: int) -> SparseRow:
        return dict(self._rows.get(i, {}))

    def rowItems(self) -> Iterable[tuple[int, SparseRow]]:
        """Iterate over (index, row) for the nonzero rows in index order."""
        for i in sorted(self._rows):
            yield i, self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(self._rows.get(i, {}).get(j, ZERO) for i in range(self.nrows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def toDense(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def isZero(self) -> bool:
        return not self._rows

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, SparseRow] = {}
        for i, row in self._rows.items():
            for j, a in row.items():
                rows.setdefault(j, {})[i] = a
        return SparseMatrix(self.ncols, self.nrows, rows)

    def permuteRows(self, order: Sequence[int]) -> "SparseMatrix":
        """Return the matrix whose i-th row is row order[i] of self."""
        if sorted(order) != list(range(self.nrows)):
            raise ValidationError("Row order is not a permutation", "shape")
        return SparseMatrix(self.nrows, self.ncols, {i: self._rows[k] for i, k in enumerate(order) if k in self._rows})

    def scale(self, c: Fraction) -> "SparseMatrix":
        if not c:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols, {i: {j: c * a for j, a in row.items()} for i, row in self._rows.items()})

    def applyTo(self, v: Sequence[Fraction]) -> Vector:
        """Return self @ v for a dense vector v."""
        if len(v) != self.ncols:
            raise ValidationError(f"Vector of length {len(v)} against {self.ncols} columns", "shape")
        result = [ZERO] * self.nrows
        for i, row in self._rows.items():
            total = ZERO
            for j, a in row.items():
                if v[j]:
                    total += a * v[j]
            result[i] = total
        return tuple(result)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValidationError(f"Cannot multiply {self.shape} by {other.shape}", "shape")
        rows: dict[int, SparseRow] = {}
        for i, row in self._rows.items():
            accumulated: SparseRow = {}
            for k, a in row.items():
                for j, b in other._rows.get(k, {}).items():
                    accumulated[j] = accumulated.get(j, ZERO) + a * b
            rows[i] = accumulated
        return SparseMatrix(self.nrows, other.ncols, rows)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValidationError(f"Shapes {self.shape} and {other.shape} differ", "shape")
        rows = {i: dict(row) for i, row in self._rows.items()}
        for i, row in other._rows.items():
            target = rows.setdefault(i, {})
            for j, a in row.items():
                target[j] = target.get(j, ZERO) + sign * a
        return SparseMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(Fraction(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self._rows.items()))))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nonzeroCount})"


# --------------------------------------------------------------------------
# Elimination
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Elimination:
    """Result of a full Gauss-Jordan elimination.

    `pivots` maps pivot column to its reduced row; each pivot row has a 1 in
    its own column and 0 in every other pivot column. `inconsistent` is set
    when a row reduced to nothing but entries in excluded columns.
    """

    pivots: dict[int, SparseRow]
    order: tuple[int, ...]
    inconsistent: bool


def _eliminate(rows: Iterable[Mapping[int, Fraction]], excluded: frozenset[int] = frozenset()) -> Elimination:
    active = [dict(r) for r in rows if r]
    pivotRows: list[tuple[int, SparseRow]] = []
    inconsistent = False

    while active:
        eligible: list[SparseRow] = []
        for row in active:
            if any(c not in excluded for c in row):
                eligible.append(row)
            elif row:
                inconsistent = True
        active = eligible
        if not active:
            break

        colCount = Counter(c for row in active for c in row if c not in excluded)
        bestKey: tuple[int, int, int, int] | None = None
        bestRow = bestCol = -1
        for index, row in enumerate(active):
            rowLength = len(row)
            for c in row:
                if c in excluded:
                    continue
                key = ((rowLength - 1) * (colCount[c] - 1), rowLength, c, index)
                if bestKey is None or key < bestKey:
                    bestKey, bestRow, bestCol = key, index, c

        pivotRow = active.pop(bestRow)
        inverse = ONE / pivotRow[bestCol]
        pivotRow = {c: a * inverse for c, a in pivotRow.items()}

        remaining = []
        for row in active:
            factor = row.get(bestCol)
            if factor:
                for c, a in pivotRow.items():
                    value = row.get(c, ZERO) - factor * a
                    if value:
                        row[c] = value
                    else:
                        row.pop(c, None)
            if row:
                remaining.append(row)
        active = remaining
        pivotRows.append((bestCol, pivotRow))

    # back substitution in reverse selection order
    for k in range(len(pivotRows) - 1, -1, -1):
        col, pivotRow = pivotRows[k]
        for j in range(k):
            other = pivotRows[j][1]
            factor = other.get(col)
            if not factor:
                continue
            for c, a in pivotRow.items():
                value = other.get(c, ZERO) - factor * a
                if value:
                    other[c] = value
                else:
                    other.pop(c, None)

    return Elimination(
        pivots={col: row for col, row in pivotRows},
        order=tuple(col for col, _ in pivotRows),
        inconsistent=inconsistent,
    )


def _reducedEchelon(vectors: Iterable[Mapping[int, Fraction]], length: int) -> tuple[Vector, ...]:
    """Canonical reduced row echelon basis of the span of `vectors`."""
    pivots: dict[int, SparseRow] = {}
    for vector in vectors:
        row = {c: a for c, a in vector.items() if a}
        for col in sorted(pivots):
            factor = row.get(col)
            if factor:
                for c, a in pivots[col].items():
                    value = row.get(c, ZERO) - factor * a
                    if value:
                        row[c] = value
                    else:
                        row.pop(c, None)
        if not row:
            continue
        lead = min(row)
        inverse = ONE / row[lead]
        row = {c: a * inverse for c, a in row.items()}
        for other in pivots.values():
            factor = other.get(lead)
            if factor:
                for c, a in row.items():
                    value = other.get(c, ZERO) - factor * a
                    if value:
                        other[c] = value
                    else:
                        other.pop(c, None)
        pivots[lead] = row
    return tuple(toDenseVector(pivots[col], length) for col in sorted(pivots))


def rank(m: SparseMatrix) -> int:
    """Rank of m by sparse elimination."""
    return len(_eliminate(row for _, row in m.rowItems()).pivots)


def denseRank(m: SparseMatrix) -> int:
    """Rank of m by dense elimination over QQ, used as an independent oracle."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    dense = [[QQ(int(a.numerator), int(a.denominator)) for a in row] for row in m.toDense()]
    return int(DomainMatrix(dense, m.shape, QQ).rank())


def kernelBasis(m: SparseMatrix) -> "Subspace":
    """Canonical basis of the null space of m."""
    elimination = _eliminate(row for _, row in m.rowItems())
    free = [c for c in range(m.ncols) if c not in elimination.pivots]
    vectors = []
    for f in free:
        v: SparseRow = {f: ONE}
        for col, row in elimination.pivots.items():
            a = row.get(f)
            if a:
                v[col] = -a
        vectors.append(v)
    return Subspace(m.ncols, _reducedEchelon(vectors, m.ncols))


def imageBasis(m: SparseMatrix) -> "Subspace":
    """Canonical basis of the column space of m."""
    transposed = m.transpose()
    return Subspace(m.nrows, _reducedEchelon((row for _, row in transposed.rowItems()), m.nrows))


def solve(m: SparseMatrix, rhs: Sequence[Fraction]) -> Vector | None:
    """
    Solve m x = rhs exactly.

    Args:
        m: Coefficient matrix
        rhs: Right-hand side of length m.nrows

    Returns:
        One solution (free variables set to zero), or None when the system
        is inconsistent

    Raises:
        ValidationError: If rhs has the wrong length
    """
    if len(rhs) != m.nrows:
        raise ValidationError(f"Right-hand side of length {len(rhs)} against {m.nrows} rows", "shape")
    augmented = m.ncols
    rows = []
    for i in range(m.nrows):
        row = m.row(i)
        if rhs[i]:
            row[augmented] = Fraction(rhs[i])
        rows.append(row)
    elimination = _eliminate(rows, excluded=frozenset({augmented}))
    if elimination.inconsistent:
        return None
    solution = [ZERO] * m.ncols
    for col, row in elimination.pivots.items():
        solution[col] = row.get(augmented, ZERO)
    return tuple(solution)


# --------------------------------------------------------------------------
# Subspaces and quotients
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^ambientDim stored by its reduced row echelon basis."""

    ambientDim: int
    basis: tuple[Vector, ...]

    @classmethod
    def spannedBy(cls, vectors: Iterable[Sequence[Fraction]], ambientDim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambientDim:
                raise ValidationError(f"Vector of length {len(v)} in ambient dimension {ambientDim}", "shape")
            rows.append(toSparseRow(v))
        return cls(ambientDim, _reducedEchelon(rows, ambientDim))

    @classmethod
    def zero(cls, ambientDim: int) -> "Subspace":
        return cls(ambientDim, ())

    @classmethod
    def full(cls, ambientDim: int) -> "Subspace":
        return cls(ambientDim, tuple(unitVector(ambientDim, i) for i in range(ambientDim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivotColumns(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(v) if a) for v in self.basis)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Normal form of v modulo the subspace."""
        result = list(v)
        for col, row in zip(self.pivotColumns, self.basis, strict=True):
            factor = result[col]
            if factor:
                for k, a in enumerate(row):
                    if a:
                        result[k] -= factor * a
        return tuple(result)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return isZeroVector(self.reduce(v))

    def containsSubspace(self, other: "Subspace") -> bool:
        return self.ambientDim == other.ambientDim and all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of v in the echelon basis; raises when v is outside."""
        coefficients = tuple(v[col] for col in self.pivotColumns)
        if tuple(v) != linearCombination(coefficients, self.basis, self.ambientDim):
            raise NotASubspaceError("Vector does not lie in the subspace", tuple(v))
        return coefficients

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.spannedBy(self.basis + other.basis, self.ambientDim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambientDim)
        # x = sum a_i u_i = sum b_j w_j  <=>  (a, -b) in ker [U | -W]
        columns = list(self.basis) + [scaleVector(Fraction(-1), w) for w in other.basis]
        relations = kernelBasis(SparseMatrix.fromColumns(columns, self.ambientDim))
        vectors = [linearCombination(r[: self.dim], self.basis, self.ambientDim) for r in relations.basis]
        return Subspace.spannedBy(vectors, self.ambientDim)


@dataclass(frozen=True)
class QuotientSpace:
    """The quotient ambient / sub with canonical coset representatives."""

    ambient: Subspace
    sub: Subspace
    representatives: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @cached_property
    def _representativeSpace(self) -> Subspace:
        return Subspace(self.ambient.ambientDim, self.representatives)

    def classOf(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of the coset of v in the representative basis."""
        normal = self.sub.reduce(v)
        try:
            return self._representativeSpace.coordinates(normal)
        except NotASubspaceError as e:
            raise NotASubspaceError("Vector does not lie in the ambient space of the quotient", tuple(v)) from e

    def representative(self, coordinates: Sequence[Fraction]) -> Vector:
        return linearCombination(coordinates, self.representatives, self.ambient.ambientDim)


def quotientSpace(ambient: Subspace, sub: Subspace) -> QuotientSpace:
    """
    Build ambient / sub.

    Representatives are the canonical echelon basis of the normal forms of
    the ambient basis modulo sub; they complete sub's basis to ambient's.

    Raises:
        NotASubspaceError: If sub is not contained in ambient
    """
    if ambient.ambientDim != sub.ambientDim:
        raise NotASubspaceError("Subspaces live in different ambient spaces")
    for v in sub.basis:
        if not ambient.contains(v):
            raise NotASubspaceError("Quotient requires sub to lie inside ambient", v)
    normalForms = [toSparseRow(sub.reduce(v)) for v in ambient.basis]
    representatives = _reducedEchelon(normalForms, ambient.ambientDim)
    return QuotientSpace(ambient, sub, representatives)
