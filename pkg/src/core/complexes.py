"""Chain complexes, the endomorphism complex End_A(X) and its cohomology algebra.

Grading convention: a cochain f of degree n has components f_s : X_s -> X_{s-n},
so the total differential raises degree by one.

An A-linear map between free modules A (x) F and A (x) G is stored by the
images of the generators: f(1 (x) phi_i) = sum_j f_ij (x) psi_j with f_ij in A.
A general element then maps as a (x) phi_i -> sum_j a f_ij (x) psi_j.
"""

import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Protocol

from core.algebra import FinAlgebra
from core.linalg import (
    ONE,
    ZERO,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    Vector,
    addVectors,
    imageBasis,
    isZeroVector,
    kernelBasis,
    linearCombination,
    quotientSpace,
    rank,
    scaleVector,
    subtractVectors,
    unitVector,
    zeroVector,
)
from core.models import TransportReport
from utils.exceptions import (
    ConsistencyError,
    DegreeOutOfRangeError,
    NotAHomotopyEquivalenceError,
    NotASubspaceError,
    ValidationError,
    WindowUnderflowError,
)
from utils.helpers import RationalHelper
from utils.logger import logger

# --------------------------------------------------------------------------
# A-linear maps between free modules
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AMatrix:
    """Matrix over A of an A-linear map A (x) K^rows -> A (x) K^cols."""

    algebra: FinAlgebra = field(compare=False, repr=False)
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Vector]

    def __post_init__(self) -> None:
        cleaned = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValidationError(f"Entry ({i},{j}) outside a {self.rows}x{self.cols} A-matrix", "shape")
            if len(value) != self.algebra.dim:
                raise ValidationError("A-matrix entries must be algebra coordinates", "shape")
            if any(value):
                cleaned[(i, j)] = tuple(value)
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def zero(cls, algebra: FinAlgebra, rows: int, cols: int) -> "AMatrix":
        return cls(algebra, rows, cols, {})

    @classmethod
    def identity(cls, algebra: FinAlgebra, n: int) -> "AMatrix":
        return cls(algebra, n, n, {(i, i): algebra.unit for i in range(n)})

    @classmethod
    def fromScalars(cls, algebra: FinAlgebra, rows: int, cols: int, scalars: Mapping[tuple[int, int], Fraction]) -> "AMatrix":
        return cls(algebra, rows, cols, {key: scaleVector(c, algebra.unit) for key, c in scalars.items()})

    @classmethod
    def fromCoordinates(cls, algebra: FinAlgebra, rows: int, cols: int, coordinates: Sequence[Fraction]) -> "AMatrix":
        n = algebra.dim
        entries = {}
        for i in range(rows):
            for j in range(cols):
                start = (i * cols + j) * n
                chunk = tuple(coordinates[start : start + n])
                if any(chunk):
                    entries[(i, j)] = chunk
        return cls(algebra, rows, cols, entries)

    @property
    def size(self) -> int:
        return self.rows * self.cols * self.algebra.dim

    def entry(self, i: int, j: int) -> Vector:
        return self.entries.get((i, j), self.algebra.zero())

    def isZero(self) -> bool:
        return not self.entries

    def then(self, other: "AMatrix") -> "AMatrix":
        """The composite 'apply self, then other': (self then other)_ik = sum_j self_ij other_jk."""
        if self.cols != other.rows:
            raise ValidationError(f"Cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}", "shape")
        a = self.algebra
        byRow: dict[int, list[tuple[int, Vector]]] = {}
        for (j, k), value in other.entries.items():
            byRow.setdefault(j, []).append((k, value))
        result: dict[tuple[int, int], Vector] = {}
        for (i, j), left in self.entries.items():
            for k, right in byRow.get(j, ()):
                productValue = a.multiply(left, right)
                if (i, k) in result:
                    result[(i, k)] = addVectors(result[(i, k)], productValue)
                else:
                    result[(i, k)] = productValue
        return AMatrix(a, self.rows, other.cols, result)

    def _combine(self, other: "AMatrix", sign: Fraction) -> "AMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("A-matrices of different shapes", "shape")
        result = dict(self.entries)
        for key, value in other.entries.items():
            current = result.get(key)
            scaled = scaleVector(sign, value)
            result[key] = addVectors(current, scaled) if current is not None else scaled
        return AMatrix(self.algebra, self.rows, self.cols, result)

    def __add__(self, other: "AMatrix") -> "AMatrix":
        return self._combine(other, ONE)

    def __sub__(self, other: "AMatrix") -> "AMatrix":
        return self._combine(other, -ONE)

    def scale(self, c: Fraction) -> "AMatrix":
        return AMatrix(self.algebra, self.rows, self.cols, {k: scaleVector(c, v) for k, v in self.entries.items()})

    def mapEntries(self, algebra: FinAlgebra, fn: Any) -> "AMatrix":
        """Apply a linear map to every entry, landing in another algebra."""
        return AMatrix(algebra, self.rows, self.cols, {k: fn(v) for k, v in self.entries.items()})

    def coordinates(self) -> Vector:
        n = self.algebra.dim
        result = [ZERO] * self.size
        for (i, j), value in self.entries.items():
            start = (i * self.cols + j) * n
            result[start : start + n] = value
        return tuple(result)

    def toScalarMatrix(self) -> SparseMatrix:
        """K-linear matrix with fiber-major coordinates (index = fiber * dim A + k)."""
        a = self.algebra
        n = a.dim
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), value in self.entries.items():
            for k in range(n):
                image = a.multiply(a.basisVector(k), value)
                for l, c in enumerate(image):
                    if c:
                        rows.setdefault(j * n + l, {})[i * n + k] = c
        return SparseMatrix(self.cols * n, self.rows * n, rows)


# --------------------------------------------------------------------------
# Complexes over K
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    """H = ker / im at one degree with canonical coset representatives."""

    degree: int
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def representatives(self) -> tuple[Vector, ...]:
        return self.quotient.representatives

    @property
    def cycles(self) -> Subspace:
        return self.quotient.ambient

    @property
    def boundaries(self) -> Subspace:
        return self.quotient.sub

    def classOf(self, v: Sequence[Fraction]) -> Vector:
        return self.quotient.classOf(v)


def _homologyQuotient(cycles: Subspace, boundaries: Subspace, degree: int) -> QuotientSpace:
    try:
        return quotientSpace(cycles, boundaries)
    except NotASubspaceError as e:
        raise ConsistencyError(f"Boundaries are not cycles at degree {degree}", "d-squared") from e


@dataclass(frozen=True)
class ChainComplex:
    """Complex C_0 <- C_1 <- ... <- C_top; differentials[n-1] is d_n : C_n -> C_{n-1}.

    An unbounded complex is a truncation: its top homology is not honest.
    """

    dims: tuple[int, ...]
    differentials: tuple[SparseMatrix, ...]
    bounded: bool = True

    def __post_init__(self) -> None:
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValidationError("A chain complex needs one differential per positive degree", "shape")
        for n, d in enumerate(self.differentials, start=1):
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise ValidationError(f"d_{n} has shape {d.shape}", "shape")
        for n in range(2, len(self.dims)):
            if not (self.differentials[n - 2] @ self.differentials[n - 1]).isZero():
                raise ValidationError(f"d_{n - 1} d_{n} is not zero", f"d-squared(n={n})")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> SparseMatrix:
        if n <= 0:
            return SparseMatrix.zeros(0, self.dims[0])
        if n > self.top:
            return SparseMatrix.zeros(self.dims[self.top], 0)
        return self.differentials[n - 1]


def homology(c: ChainComplex, n: int) -> HomologyGroup:
    """
    Homology of a chain complex at degree n.

    Raises:
        DegreeOutOfRangeError: If n lies outside the complex or is the top
            degree of a truncated complex
    """
    if n < 0 or n > c.top or (n == c.top and not c.bounded):
        raise DegreeOutOfRangeError(f"Homology at degree {n} is outside the honest range of the complex", n)
    cycles = kernelBasis(c.d(n)) if n > 0 else Subspace.full(c.dims[0])
    boundaries = imageBasis(c.d(n + 1)) if n < c.top else Subspace.zero(c.dims[n])
    return HomologyGroup(n, _homologyQuotient(cycles, boundaries, n))


@dataclass(frozen=True)
class CochainComplex:
    """Complex C^lo -> ... -> C^hi; differentials[k] is delta at degree lo + k."""

    lowestDegree: int
    dims: tuple[int, ...]
    differentials: tuple[SparseMatrix, ...]
    bounded: bool = True

    def __post_init__(self) -> None:
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValidationError("A cochain complex needs one differential per non-top degree", "shape")
        for k, delta in enumerate(self.differentials):
            if delta.shape != (self.dims[k + 1], self.dims[k]):
                raise ValidationError(f"delta at degree {self.lowestDegree + k} has shape {delta.shape}", "shape")
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).isZero():
                raise ValidationError("delta squared is not zero", f"d-squared(n={self.lowestDegree + k})")

    @property
    def highestDegree(self) -> int:
        return self.lowestDegree + len(self.dims) - 1

    def dim(self, n: int) -> int:
        if self.lowestDegree <= n <= self.highestDegree:
            return self.dims[n - self.lowestDegree]
        return 0

    def delta(self, n: int) -> SparseMatrix:
        """delta_n : C^n -> C^{n+1}."""
        if self.lowestDegree <= n < self.highestDegree:
            return self.differentials[n - self.lowestDegree]
        return SparseMatrix.zeros(self.dim(n + 1), self.dim(n))


def cohomology(c: CochainComplex, n: int) -> HomologyGroup:
    """Cohomology of a cochain complex at degree n."""
    if n < c.lowestDegree or n > c.highestDegree or (n == c.highestDegree and not c.bounded):
        raise DegreeOutOfRangeError(f"Cohomology at degree {n} is outside the honest range of the complex", n)
    cocycles = kernelBasis(c.delta(n))
    coboundaries = imageBasis(c.delta(n - 1))
    return HomologyGroup(n, _homologyQuotient(cocycles, coboundaries, n))


# --------------------------------------------------------------------------
# Free complexes over A
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeAComplex:
    """X_s = A (x) K^fiberDims[s]; differentials[s-1] is d_s : X_s -> X_{s-1}.

    `bounded` marks a finite complex; otherwise the data is a truncation at
    degree `top` of a longer complex.
    """

    algebra: FinAlgebra
    fiberDims: tuple[int, ...]
    differentials: tuple[AMatrix, ...]
    bounded: bool
    name: str = field(default="X", compare=False)

    def __post_init__(self) -> None:
        if not self.fiberDims:
            raise ValidationError("A complex needs at least degree 0", "shape")
        if len(self.differentials) != len(self.fiberDims) - 1:
            raise ValidationError("A complex needs one differential per positive degree", "shape")
        for s, d in enumerate(self.differentials, start=1):
            if (d.rows, d.cols) != (self.fiberDims[s], self.fiberDims[s - 1]):
                raise ValidationError(f"d_{s} has shape {d.rows}x{d.cols}", "shape")
        for s in range(2, self.top + 1):
            if not self.differentials[s - 1].then(self.differentials[s - 2]).isZero():
                raise ValidationError(f"d_{s - 1} d_{s} is not zero", f"d-squared(s={s})")

    @property
    def top(self) -> int:
        return len(self.fiberDims) - 1

    def fiber(self, s: int) -> int:
        return self.fiberDims[s] if 0 <= s <= self.top else 0

    def d(self, s: int) -> AMatrix:
        """d_s, zero outside 1..top."""
        if 1 <= s <= self.top:
            return self.differentials[s - 1]
        return AMatrix.zero(self.algebra, self.fiber(s), self.fiber(s - 1))

    def identity(self, s: int) -> AMatrix:
        return AMatrix.identity(self.algebra, self.fiber(s))

    def truncate(self, top: int) -> "FreeAComplex":
        """Brutal truncation to degrees 0..top."""
        if top >= self.top:
            return self
        return FreeAComplex(self.algebra, self.fiberDims[: top + 1], self.differentials[:top], False, self.name)

    def scalarComplex(self) -> ChainComplex:
        n = self.algebra.dim
        return ChainComplex(
            tuple(f * n for f in self.fiberDims),
            tuple(d.toScalarMatrix() for d in self.differentials),
            self.bounded,
        )


# --------------------------------------------------------------------------
# Chain maps between free complexes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainMap:
    """Components X_s -> Y_{s+degree}; degree 0 for chain maps, 1 for homotopies."""

    source: FreeAComplex = field(repr=False)
    target: FreeAComplex = field(repr=False)
    degree: int
    components: tuple[AMatrix, ...]

    def component(self, s: int) -> AMatrix:
        if 0 <= s < len(self.components):
            return self.components[s]
        return AMatrix.zero(self.source.algebra, self.source.fiber(s), self.target.fiber(s + self.degree))

    def then(self, other: "ChainMap") -> "ChainMap":
        count = min(len(self.components), len(other.components) - self.degree)
        return ChainMap(
            self.source,
            other.target,
            self.degree + other.degree,
            tuple(self.component(s).then(other.component(s + self.degree)) for s in range(max(count, 0))),
        )


def identityMap(x: FreeAComplex) -> ChainMap:
    return ChainMap(x, x, 0, tuple(x.identity(s) for s in range(x.top + 1)))


def isChainMap(f: ChainMap, upTo: int) -> int | None:
    """Return the first degree s <= upTo where f fails to commute with d, if any."""
    for s in range(1, upTo + 1):
        if f.source.d(s).then(f.component(s - 1)) != f.component(s).then(f.target.d(s)):
            return s
    return None


def homotopyDefect(g: ChainMap, h: ChainMap, upTo: int) -> int | None:
    """First degree s <= upTo where g - id != d h + h d on the source, if any."""
    x = g.source
    for s in range(upTo + 1):
        left = g.component(s) - x.identity(s)
        right = h.component(s).then(x.d(s + 1)) + x.d(s).then(h.component(s - 1))
        if left != right:
            return s
    return None


# --------------------------------------------------------------------------
# The endomorphism complex
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """A homogeneous element of End_A(X): components f_s keyed by source degree."""

    complex: "EndComplex" = field(compare=False, repr=False)
    degree: int
    components: Mapping[int, AMatrix]

    def component(self, s: int) -> AMatrix:
        return self.components[s]

    def coordinates(self) -> Vector:
        return self.complex.coordinates(self)

    def isClosed(self) -> bool:
        return isZeroVector(self.complex.differential(self).coordinates())

    def __add__(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise ValidationError("Cannot add cochains of different degrees", "degree")
        return Cochain(self.complex, self.degree, {s: self.components[s] + other.components[s] for s in self.components})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-ONE)

    def scale(self, c: Fraction) -> "Cochain":
        return Cochain(self.complex, self.degree, {s: m.scale(c) for s, m in self.components.items()})


@dataclass(frozen=True)
class _Block:
    source: int
    rows: int
    cols: int
    offset: int


class EndComplex:
    """Window of End_A(X): components f_s : X_s -> X_{s-n} for s <= window.

    Targets are taken in X as built (degrees up to X.top), which makes the
    stored object the honest complex Hom_A(X_{<=window}, X_{<=top}). For a
    bounded X with window = top nothing is truncated.
    """

    def __init__(self, source: FreeAComplex, window: int | None = None) -> None:
        top = source.top
        if window is None:
            window = top
        if source.bounded:
            window = min(window, top)
        elif window > top:
            raise ValidationError(f"Window {window} exceeds the built degree {top} of the source", "window")
        if window < 0:
            raise ValidationError("Window must be non-negative", "window")
        self.source = source
        self.algebra = source.algebra
        self.window = window
        self.top = top
        self.truncated = not (source.bounded and window == top)
        self._blocks: dict[int, tuple[_Block, ...]] = {}
        self._differentials: dict[int, SparseMatrix] = {}
        logger.debug(f"End complex over {source.name}: window {window}, targets up to {top}")

    @property
    def minDegree(self) -> int:
        return -self.top

    @property
    def maxDegree(self) -> int:
        return self.window

    def honestDegrees(self) -> tuple[int, int]:
        """Degrees whose cohomology agrees with that of the untruncated complex."""
        if not self.truncated:
            return (self.minDegree, self.maxDegree)
        return (self.window - self.top + 1, self.window - 1)

    def componentDegrees(self, n: int) -> list[int]:
        return [s for s in range(max(0, n), self.window + 1) if 0 <= s - n <= self.top]

    def blocks(self, n: int) -> tuple[_Block, ...]:
        if n not in self._blocks:
            blocks = []
            offset = 0
            for s in self.componentDegrees(n):
                rows, cols = self.source.fiber(s), self.source.fiber(s - n)
                blocks.append(_Block(s, rows, cols, offset))
                offset += rows * cols * self.algebra.dim
            self._blocks[n] = tuple(blocks)
        return self._blocks[n]

    def degreeDim(self, n: int) -> int:
        blocks = self.blocks(n)
        if not blocks:
            return 0
        last = blocks[-1]
        return last.offset + last.rows * last.cols * self.algebra.dim

    def cochain(self, n: int, coordinates: Sequence[Fraction]) -> Cochain:
        if len(coordinates) != self.degreeDim(n):
            raise ValidationError(f"Degree {n} cochains have {self.degreeDim(n)} coordinates", "shape")
        components = {}
        for block in self.blocks(n):
            size = block.rows * block.cols * self.algebra.dim
            chunk = coordinates[block.offset : block.offset + size]
            components[block.source] = AMatrix.fromCoordinates(self.algebra, block.rows, block.cols, chunk)
        return Cochain(self, n, components)

    def fromComponents(self, n: int, components: Mapping[int, AMatrix]) -> Cochain:
        """Cochain with the given components, zero elsewhere."""
        full = {}
        for block in self.blocks(n):
            full[block.source] = components.get(block.source, AMatrix.zero(self.algebra, block.rows, block.cols))
        return Cochain(self, n, full)

    def zero(self, n: int) -> Cochain:
        return self.fromComponents(n, {})

    def coordinates(self, f: Cochain) -> Vector:
        result: list[Fraction] = []
        for block in self.blocks(f.degree):
            result.extend(f.components[block.source].coordinates())
        return tuple(result)

    def identity(self) -> Cochain:
        return self.fromComponents(0, {s: self.source.identity(s) for s in self.componentDegrees(0)})

    def fromDifferential(self) -> Cochain:
        """d itself as a cochain of degree 1."""
        return self.fromComponents(1, {s: self.source.d(s) for s in self.componentDegrees(1)})

    def _sign(self, n: int) -> Fraction:
        return ONE if n % 2 == 0 else -ONE

    def partialDifferentials(self, f: Cochain) -> tuple[Cochain, Cochain]:
        """(d'f, d''f) with (d'f)_s = -(-1)^n f_{s-1} d_s and (d''f)_s = d_{s-n} f_s."""
        n = f.degree
        x = self.source
        first: dict[int, AMatrix] = {}
        second: dict[int, AMatrix] = {}
        for s in self.componentDegrees(n + 1):
            if s in f.components:
                second[s] = f.components[s].then(x.d(s - n))
            if s - 1 in f.components:
                first[s] = x.d(s).then(f.components[s - 1]).scale(-self._sign(n))
        return self.fromComponents(n + 1, first), self.fromComponents(n + 1, second)

    def differential(self, f: Cochain) -> Cochain:
        """The total differential d o f - (-1)^n f o d."""
        first, second = self.partialDifferentials(f)
        return first + second

    def compose(self, f: Cochain, g: Cochain) -> Cochain:
        """f o g, with components f_{s-m} o g_s.

        Raises:
            WindowUnderflowError: If some g_s lands beyond the window
        """
        n, m = f.degree, g.degree
        components: dict[int, AMatrix] = {}
        for s in self.componentDegrees(n + m):
            if s not in g.components:
                continue
            middle = s - m
            if middle > self.window:
                raise WindowUnderflowError(
                    f"Composing needs the degree-{n} component at source degree {middle}, beyond window {self.window}",
                    middle,
                )
            components[s] = g.components[s].then(f.components[middle])
        return self.fromComponents(n + m, components)

    def canMultiply(self, n: int, m: int) -> bool:
        return not self.truncated or m >= 0

    def differentialMatrix(self, n: int) -> SparseMatrix:
        """Matrix of the total differential from degree n to degree n+1."""
        if n not in self._differentials:
            source = self.degreeDim(n)
            columns = []
            for k in range(source):
                image = self.differential(self.cochain(n, unitVector(source, k)))
                columns.append(image.coordinates())
            self._differentials[n] = SparseMatrix.fromColumns(columns, self.degreeDim(n + 1))
        return self._differentials[n]

    def multiplyCoordinates(self, n: int, u: Sequence[Fraction], m: int, v: Sequence[Fraction]) -> Vector:
        return self.compose(self.cochain(n, u), self.cochain(m, v)).coordinates()

    def unitCoordinates(self) -> Vector:
        return self.identity().coordinates()


def buildEndComplex(x: FreeAComplex, window: int | None = None) -> EndComplex:
    return EndComplex(x, window)


def endDifferential(y: EndComplex, f: Cochain) -> Cochain:
    return y.differential(f)


def partialDifferentials(y: EndComplex, f: Cochain) -> tuple[Cochain, Cochain]:
    return y.partialDifferentials(f)


def compose(f: Cochain, g: Cochain) -> Cochain:
    if f.complex is not g.complex:
        raise ValidationError("Cochains belong to different End complexes", "window")
    return f.complex.compose(f, g)


# --------------------------------------------------------------------------
# Cohomology algebras
# --------------------------------------------------------------------------


class DifferentialGradedAlgebra(Protocol):
    """What the cohomology-algebra machinery needs from a dg algebra.

    A dg algebra that is not `truncated` is honest in every degree.
    """

    truncated: bool

    def degreeDim(self, n: int) -> int: ...

    def differentialMatrix(self, n: int) -> SparseMatrix: ...

    def multiplyCoordinates(self, n: int, u: Sequence[Fraction], m: int, v: Sequence[Fraction]) -> Vector: ...

    def unitCoordinates(self) -> Vector: ...

    def canMultiply(self, n: int, m: int) -> bool: ...

    def honestDegrees(self) -> tuple[int, int]: ...


def cohomologyGroup(dga: DifferentialGradedAlgebra, n: int) -> HomologyGroup:
    cocycles = kernelBasis(dga.differentialMatrix(n))
    if dga.degreeDim(n - 1):
        coboundaries = imageBasis(dga.differentialMatrix(n - 1))
    else:
        coboundaries = Subspace.zero(dga.degreeDim(n))
    return HomologyGroup(n, _homologyQuotient(cocycles, coboundaries, n))


def _sign(k: int) -> Fraction:
    return ONE if k % 2 == 0 else -ONE


@dataclass(frozen=True)
class GradedAlgebraTable:
    """Dims, representatives and structure constants of a graded algebra.

    products[(n, m)][i][j] holds the coordinates (in degree n+m) of the
    product of the i-th degree-n class with the j-th degree-m class.
    """

    degrees: tuple[int, ...]
    dims: Mapping[int, int]
    representatives: Mapping[int, tuple[Vector, ...]]
    products: Mapping[tuple[int, int], tuple[tuple[Vector, ...], ...]]
    convention: str
    unitClass: Vector | None = None
    stable: Mapping[int, bool] = field(default_factory=dict)
    shiftChecks: int = 0

    def product(self, n: int, i: int, m: int, j: int) -> Vector:
        return self.products[(n, m)][i][j]

    def multiply(self, n: int, x: Sequence[Fraction], m: int, y: Sequence[Fraction]) -> Vector:
        """Bilinear product of classes given by coordinates."""
        result = zeroVector(self.dims[n + m])
        table = self.products[(n, m)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    result = addVectors(result, scaleVector(a * b, table[i][j]))
        return result

    def opposite(self) -> "GradedAlgebraTable":
        """The opposite graded algebra, x *' y = (-1)^{nm} y x."""
        products = {}
        for (n, m), _ in self.products.items():
            if (m, n) not in self.products:
                continue
            flipped = self.products[(m, n)]
            sign = _sign(n * m)
            products[(n, m)] = tuple(
                tuple(scaleVector(sign, flipped[j][i]) for j in range(self.dims[m])) for i in range(self.dims[n])
            )
        convention = "opposite" if self.convention == "composition" else "composition"
        return GradedAlgebraTable(
            self.degrees, self.dims, self.representatives, products, convention, self.unitClass, self.stable, self.shiftChecks
        )

    def isAssociative(self) -> bool:
        for n in self.degrees:
            for m in self.degrees:
                for p in self.degrees:
                    keys = [(n, m), (n + m, p), (m, p), (n, m + p)]
                    if not all(k in self.products for k in keys):
                        continue
                    for i in range(self.dims[n]):
                        for j in range(self.dims[m]):
                            for k in range(self.dims[p]):
                                left = self.multiply(n + m, self.product(n, i, m, j), p, unitVector(self.dims[p], k))
                                right = self.multiply(n, unitVector(self.dims[n], i), m + p, self.product(m, j, p, k))
                                if left != right:
                                    return False
        return True

    def toDict(self) -> dict[str, Any]:
        fmt = RationalHelper.formatVector
        return {
            "convention": self.convention,
            "degrees": list(self.degrees),
            "dims": {str(n): self.dims[n] for n in self.degrees},
            "stable": {str(n): self.stable.get(n, True) for n in self.degrees},
            "unitClass": fmt(self.unitClass) if self.unitClass is not None else None,
            "products": {
                f"{n},{m}": [[fmt(cell) for cell in row] for row in table]
                for (n, m), table in sorted(self.products.items())
            },
            "representativeShiftChecks": self.shiftChecks,
        }


def _randomVector(rng: random.Random, length: int) -> Vector:
    return tuple(Fraction(rng.randint(-2, 2)) for _ in range(length))


def cohomologyAlgebra(
    dga: DifferentialGradedAlgebra,
    degrees: Sequence[int],
    shifts: int = 20,
    seed: int = 0,
    convention: str = "composition",
) -> GradedAlgebraTable:
    """
    Cohomology algebra of a dg algebra on the given degrees.

    Products are reduced modulo coboundaries; afterwards `shifts` random
    products are recomputed with representatives perturbed by random
    coboundaries and compared with the table.

    Args:
        dga: End complex, BRST complex or any other dg algebra
        degrees: Degrees to compute; for a truncated dga all inside dga.honestDegrees()
        shifts: Number of representative-perturbation checks
        seed: Seed of the perturbation generator
        convention: Label stored on the table

    Returns:
        The graded algebra table

    Raises:
        DegreeOutOfRangeError: If a degree is outside the honest range of a
            truncated dga
        ConsistencyError: If a product of cocycles is not a cocycle or the
            table depends on representatives
    """
    lo, hi = dga.honestDegrees()
    degrees = tuple(sorted(set(degrees)))
    for n in degrees:
        if dga.truncated and not lo <= n <= hi:
            raise DegreeOutOfRangeError(f"Degree {n} is outside the honest range [{lo}, {hi}]", n)

    groups = {n: cohomologyGroup(dga, n) for n in degrees}
    products: dict[tuple[int, int], tuple[tuple[Vector, ...], ...]] = {}
    for n in degrees:
        for m in degrees:
            if n + m not in groups or not dga.canMultiply(n, m):
                continue
            target = groups[n + m]
            rows = []
            for u in groups[n].representatives:
                row = []
                for v in groups[m].representatives:
                    try:
                        row.append(target.classOf(dga.multiplyCoordinates(n, u, m, v)))
                    except NotASubspaceError as e:
                        raise ConsistencyError(
                            f"Product of cocycles in degrees {n} and {m} is not a cocycle", "leibniz"
                        ) from e
                rows.append(tuple(row))
            products[(n, m)] = tuple(rows)

    unitClass = groups[0].classOf(dga.unitCoordinates()) if 0 in groups else None
    performed = _checkRepresentativeIndependence(dga, groups, products, shifts, seed)
    logger.debug(f"Cohomology dims {[groups[n].dim for n in degrees]} in degrees {list(degrees)}")

    return GradedAlgebraTable(
        degrees=degrees,
        dims={n: groups[n].dim for n in degrees},
        representatives={n: groups[n].representatives for n in degrees},
        products=products,
        convention=convention,
        unitClass=unitClass,
        shiftChecks=performed,
    )


def _checkRepresentativeIndependence(
    dga: DifferentialGradedAlgebra,
    groups: Mapping[int, HomologyGroup],
    products: Mapping[tuple[int, int], tuple[tuple[Vector, ...], ...]],
    shifts: int,
    seed: int,
) -> int:
    candidates = [(n, m) for (n, m) in sorted(products) if groups[n].dim and groups[m].dim]
    if not candidates:
        return 0
    rng = random.Random(seed)
    for _ in range(shifts):
        n, m = rng.choice(candidates)
        i = rng.randrange(groups[n].dim)
        j = rng.randrange(groups[m].dim)
        u = _perturb(dga, n, groups[n].representatives[i], rng)
        v = _perturb(dga, m, groups[m].representatives[j], rng)
        value = groups[n + m].classOf(dga.multiplyCoordinates(n, u, m, v))
        if value != products[(n, m)][i][j]:
            raise ConsistencyError(
                f"Product of classes ({n},{i}) and ({m},{j}) depends on the chosen representatives",
                "representative-independence",
            )
    return shifts


def _perturb(dga: DifferentialGradedAlgebra, n: int, cocycle: Vector, rng: random.Random) -> Vector:
    below = dga.degreeDim(n - 1)
    if not below:
        return cocycle
    return addVectors(cocycle, dga.differentialMatrix(n - 1).applyTo(_randomVector(rng, below)))


# --------------------------------------------------------------------------
# Transport along homotopy equivalences
# --------------------------------------------------------------------------


def transportCochain(target: EndComplex, f: Cochain, forward: ChainMap, backward: ChainMap) -> Cochain:
    """F o f o F' as a cochain of the target End complex."""
    n = f.degree
    components = {}
    for t in target.componentDegrees(n):
        if t not in f.components:
            continue
        components[t] = backward.component(t).then(f.components[t]).then(forward.component(t - n))
    return target.fromComponents(n, components)


def chainMapTransport(
    source: EndComplex,
    target: EndComplex,
    forward: ChainMap,
    backward: ChainMap,
    homotopy: ChainMap,
    targetHomotopy: ChainMap,
    degrees: Sequence[int],
    shifts: int = 20,
    seed: int = 0,
) -> TransportReport:
    """
    Compare the cohomology algebras of End(X) and End(X') along F : X -> X'.

    Args:
        source: End complex of X
        target: End complex of X' with the same window and built degree
        forward: F : X -> X'
        backward: F' : X' -> X
        homotopy: s with F'F - id = ds + sd on X
        targetHomotopy: s' with FF' - id = ds' + s'd on X'
        degrees: Degrees to compare

    Returns:
        TransportReport with per-degree transition matrices

    Raises:
        NotAHomotopyEquivalenceError: If F, F' are not chain maps or the
            homotopy identities fail
    """
    if (source.window, source.top) != (target.window, target.top):
        raise ValidationError("Transport needs End complexes with the same window and built degree", "window")
    upTo = source.top - 1
    for label, chainMap in (("F", forward), ("F'", backward)):
        failing = isChainMap(chainMap, source.top)
        if failing is not None:
            raise NotAHomotopyEquivalenceError(f"{label} does not commute with d at degree {failing}", failing)
    failing = homotopyDefect(forward.then(backward), homotopy, upTo)
    if failing is not None:
        raise NotAHomotopyEquivalenceError(f"F'F - id != ds + sd at degree {failing}", failing)
    failing = homotopyDefect(backward.then(forward), targetHomotopy, upTo)
    if failing is not None:
        raise NotAHomotopyEquivalenceError(f"FF' - id != ds' + s'd at degree {failing}", failing)

    sourceTable = cohomologyAlgebra(source, degrees, shifts, seed)
    targetTable = cohomologyAlgebra(target, degrees, shifts, seed)
    targetGroups = {n: cohomologyGroup(target, n) for n in sourceTable.degrees}

    transitions: dict[int, tuple[Vector, ...]] = {}
    invertible = True
    for n in sourceTable.degrees:
        columns = []
        for representative in sourceTable.representatives[n]:
            image = transportCochain(target, source.cochain(n, representative), forward, backward)
            columns.append(targetGroups[n].classOf(image.coordinates()))
        transitions[n] = tuple(columns)
        square = sourceTable.dims[n] == targetTable.dims[n]
        if not square or rank(SparseMatrix.fromColumns(columns, targetTable.dims[n])) != sourceTable.dims[n]:
            invertible = False

    multiplicative = True
    for (n, m), table in sourceTable.products.items():
        if (n, m) not in targetTable.products:
            continue
        for i in range(sourceTable.dims[n]):
            for j in range(sourceTable.dims[m]):
                image = linearCombination(table[i][j], transitions[n + m], targetTable.dims[n + m])
                expected = targetTable.multiply(n, transitions[n][i], m, transitions[m][j])
                if image != expected:
                    multiplicative = False

    logger.info(f"Transport over degrees {list(sourceTable.degrees)}: invertible={invertible}, multiplicative={multiplicative}")
    return TransportReport(
        degrees=sourceTable.degrees,
        sourceDims=dict(sourceTable.dims),
        targetDims=dict(targetTable.dims),
        transitions=transitions,
        invertible=invertible,
        multiplicative=multiplicative,
    )


def differenceIsCoboundary(y: EndComplex, f: Cochain, g: Cochain) -> bool:
    """True when f - g is exact in y."""
    difference = subtractVectors(f.coordinates(), g.coordinates())
    if isZeroVector(difference):
        return True
    return imageBasis(y.differentialMatrix(f.degree - 1)).contains(difference)
