"""Finite-dimensional algebras, augmented subalgebras, Lie actions and modules."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from core.linalg import (
    ONE,
    ZERO,
    QuotientSpace,
    SparseMatrix,
    Subspace,
    Vector,
    kernelBasis,
    linearCombination,
    quotientSpace,
    solve,
    subtractVectors,
    unitVector,
    zeroVector,
)
from utils.exceptions import InvalidLieActionError, NotASubspaceError, ValidationError
from utils.logger import logger

# structure[i][j] holds the coordinates of e_i * e_j
StructureTable = tuple[tuple[Vector, ...], ...]


def _checkShape(table: StructureTable, dim: int, what: str) -> None:
    if len(table) != dim or any(len(row) != dim for row in table):
        raise ValidationError(f"{what} table must be {dim}x{dim}", "shape")
    for row in table:
        for vector in row:
            if len(vector) != dim:
                raise ValidationError(f"{what} constants must have length {dim}", "shape")


def _tableFromTriples(dim: int, triples: Sequence[tuple[int, int, int, Fraction]], what: str) -> StructureTable:
    table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, value in triples:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ValidationError(f"{what} triple ({i},{j},{k}) out of range for dim {dim}", "shape")
        table[i][j][k] += Fraction(value)
    return tuple(tuple(tuple(v) for v in row) for row in table)


@dataclass(frozen=True)
class FinAlgebra:
    """Unital associative algebra given by structure constants."""

    dim: int
    labels: tuple[str, ...]
    structure: StructureTable
    unit: Vector
    name: str = field(default="A", compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError("An algebra needs at least one basis element", "dimension")
        if len(self.labels) != self.dim:
            raise ValidationError(f"Expected {self.dim} basis labels", "labels")
        if len(self.unit) != self.dim:
            raise ValidationError(f"Unit must have length {self.dim}", "shape")
        _checkShape(self.structure, self.dim, "Structure")

        for i, j, k in product(range(self.dim), repeat=3):
            left = self.multiply(self.structure[i][j], unitVector(self.dim, k))
            right = self.multiply(unitVector(self.dim, i), self.structure[j][k])
            if left != right:
                raise ValidationError(
                    f"Associativity fails for ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})",
                    f"associativity(i={i},j={j},k={k})",
                )
        for i in range(self.dim):
            basis = unitVector(self.dim, i)
            if self.multiply(self.unit, basis) != basis or self.multiply(basis, self.unit) != basis:
                raise ValidationError(f"Unit axiom fails on {self.labels[i]}", f"unit(i={i})")

    @classmethod
    def fromTriples(
        cls,
        labels: Sequence[str],
        unit: Sequence[Fraction],
        triples: Sequence[tuple[int, int, int, Fraction]],
        name: str = "A",
    ) -> "FinAlgebra":
        dim = len(labels)
        return cls(dim, tuple(labels), _tableFromTriples(dim, triples, "Structure"), tuple(Fraction(u) for u in unit), name)

    def basisVector(self, i: int) -> Vector:
        return unitVector(self.dim, i)

    def zero(self) -> Vector:
        return zeroVector(self.dim)

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        result = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.structure[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        result[k] += ab * c
        return tuple(result)

    def leftMultiplicationMatrix(self, x: Sequence[Fraction]) -> SparseMatrix:
        """Matrix of v -> x v."""
        return SparseMatrix.fromColumns([self.multiply(x, self.basisVector(j)) for j in range(self.dim)], self.dim)

    def rightMultiplicationMatrix(self, x: Sequence[Fraction]) -> SparseMatrix:
        """Matrix of v -> v x."""
        return SparseMatrix.fromColumns([self.multiply(self.basisVector(j), x) for j in range(self.dim)], self.dim)

    def isCommutative(self) -> bool:
        return all(self.structure[i][j] == self.structure[j][i] for i in range(self.dim) for j in range(i))


def opposite(a: FinAlgebra) -> FinAlgebra:
    """The opposite algebra: c'[i][j][k] = c[j][i][k], same unit."""
    structure = tuple(tuple(a.structure[j][i] for j in range(a.dim)) for i in range(a.dim))
    name = a.name[:-4] if a.name.endswith("^opp") else f"{a.name}^opp"
    return FinAlgebra(a.dim, a.labels, structure, a.unit, name)


@dataclass(frozen=True)
class AugmentedSubalgebra:
    """A subalgebra B of `parent` with an augmentation eps: B -> K.

    `inclusion[j]` is the image of the j-th basis element of B in A.
    """

    parent: FinAlgebra
    inclusion: tuple[Vector, ...]
    eps: Vector

    def __post_init__(self) -> None:
        a = self.parent
        if not self.inclusion:
            raise ValidationError("A subalgebra needs at least one basis element", "dimension")
        if len(self.eps) != len(self.inclusion):
            raise ValidationError("Augmentation must have one value per subalgebra basis element", "shape")
        if any(len(column) != a.dim for column in self.inclusion):
            raise ValidationError(f"Inclusion columns must have length {a.dim}", "shape")
        if self.span.dim != len(self.inclusion):
            raise ValidationError("Inclusion columns are linearly dependent", "inclusion-independent")
        if not self.span.contains(a.unit):
            raise ValidationError("Subalgebra does not contain the unit", "subalgebra-unit")
        for i, j in product(range(self.dim), repeat=2):
            if not self.span.contains(a.multiply(self.inclusion[i], self.inclusion[j])):
                raise ValidationError(f"Subalgebra not closed under ({i},{j})", f"subalgebra-closure(i={i},j={j})")
        if self.epsilon(self.unitCoordinates) != ONE:
            raise ValidationError("The augmentation must send 1 to 1", "augmentation-unit")
        for i, j in product(range(self.dim), repeat=2):
            productCoords = self.coordinates(a.multiply(self.inclusion[i], self.inclusion[j]))
            if self.epsilon(productCoords) != self.eps[i] * self.eps[j]:
                raise ValidationError(
                    f"The augmentation is not multiplicative on ({i},{j})",
                    f"augmentation-multiplicative(i={i},j={j})",
                )

    @classmethod
    def trivial(cls, a: FinAlgebra) -> "AugmentedSubalgebra":
        """B = K*1 with eps(1) = 1."""
        return cls(a, (a.unit,), (ONE,))

    @classmethod
    def whole(cls, a: FinAlgebra, eps: Sequence[Fraction]) -> "AugmentedSubalgebra":
        """B = A with the given augmentation."""
        return cls(a, tuple(a.basisVector(i) for i in range(a.dim)), tuple(Fraction(e) for e in eps))

    @property
    def dim(self) -> int:
        return len(self.inclusion)

    @cached_property
    def span(self) -> Subspace:
        return Subspace.spannedBy(self.inclusion, self.parent.dim)

    @cached_property
    def inclusionMatrix(self) -> SparseMatrix:
        return SparseMatrix.fromColumns(self.inclusion, self.parent.dim)

    @cached_property
    def unitCoordinates(self) -> Vector:
        return self.coordinates(self.parent.unit)

    def embed(self, coordinates: Sequence[Fraction]) -> Vector:
        """Image in A of the element of B with the given coordinates."""
        return linearCombination(coordinates, self.inclusion, self.parent.dim)

    def coordinates(self, x: Sequence[Fraction]) -> Vector:
        """B-coordinates of an element of A lying in B."""
        solution = solve(self.inclusionMatrix, x)
        if solution is None:
            raise NotASubspaceError("Element does not lie in the subalgebra", tuple(x))
        return solution

    def epsilon(self, coordinates: Sequence[Fraction]) -> Fraction:
        return sum((c * e for c, e in zip(coordinates, self.eps, strict=True)), ZERO)

    @cached_property
    def kernelBasis(self) -> tuple[Vector, ...]:
        """Canonical basis of ker eps in B-coordinates."""
        return kernelBasis(SparseMatrix.fromDense([self.eps])).basis

    @cached_property
    def kernelSpace(self) -> Subspace:
        return Subspace(self.dim, self.kernelBasis)

    @cached_property
    def kernelInParent(self) -> tuple[Vector, ...]:
        return tuple(self.embed(u) for u in self.kernelBasis)

    @property
    def kernelDim(self) -> int:
        return len(self.kernelBasis)

    @cached_property
    def kernelProducts(self) -> tuple[tuple[Vector, ...], ...]:
        """kernelProducts[i][j] = coordinates of u_i u_j in the ker eps basis."""
        b = self.asAlgebra()
        return tuple(
            tuple(self.kernelSpace.coordinates(b.multiply(ui, uj)) for uj in self.kernelBasis)
            for ui in self.kernelBasis
        )

    def asAlgebra(self) -> FinAlgebra:
        """B as an algebra in its own basis."""
        return self._ownAlgebra

    @cached_property
    def _ownAlgebra(self) -> FinAlgebra:
        a = self.parent
        structure = tuple(
            tuple(self.coordinates(a.multiply(self.inclusion[i], self.inclusion[j])) for j in range(self.dim))
            for i in range(self.dim)
        )
        labels = tuple(f"b{i}" for i in range(self.dim))
        return FinAlgebra(self.dim, labels, structure, self.unitCoordinates, f"B<{a.name}")

    def selfPair(self) -> "AugmentedSubalgebra":
        """B as an augmented subalgebra of itself."""
        return AugmentedSubalgebra.whole(self.asAlgebra(), self.eps)


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra: [e_i, e_j] = sum_k bracket[i][j][k] e_k."""

    dim: int
    bracket: StructureTable

    def __post_init__(self) -> None:
        _checkShape(self.bracket, self.dim, "Bracket")
        for i, j in product(range(self.dim), repeat=2):
            for k in range(self.dim):
                if self.bracket[i][j][k] != -self.bracket[j][i][k]:
                    raise ValidationError(
                        f"Bracket is not antisymmetric at ({i},{j},{k})", f"antisymmetry(i={i},j={j},k={k})"
                    )
        for i, j, k in product(range(self.dim), repeat=3):
            total = zeroVector(self.dim)
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket[y][z]
                term = linearCombination(inner, [self.bracket[x][m] for m in range(self.dim)], self.dim)
                total = tuple(t + s for t, s in zip(total, term, strict=True))
            if any(total):
                raise ValidationError(f"Jacobi identity fails on ({i},{j},{k})", f"jacobi(i={i},j={j},k={k})")

    @classmethod
    def fromTriples(cls, dim: int, triples: Sequence[tuple[int, int, int, Fraction]]) -> "LieAlgebra":
        return cls(dim, _tableFromTriples(dim, triples, "Bracket"))

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls.fromTriples(dim, [])

    def isAbelian(self) -> bool:
        return not any(any(v) for row in self.bracket for v in row)


@dataclass(frozen=True)
class LieAction:
    """A Lie algebra map rho: g -> A, A viewed as a Lie algebra by commutators."""

    lie: LieAlgebra
    target: FinAlgebra
    rho: tuple[Vector, ...]

    def __post_init__(self) -> None:
        a = self.target
        if len(self.rho) != self.lie.dim or any(len(r) != a.dim for r in self.rho):
            raise ValidationError(f"Action needs {self.lie.dim} images of length {a.dim}", "shape")
        for i, j in product(range(self.lie.dim), repeat=2):
            commutator = subtractVectors(a.multiply(self.rho[i], self.rho[j]), a.multiply(self.rho[j], self.rho[i]))
            image = linearCombination(self.lie.bracket[i][j], self.rho, a.dim)
            if commutator != image:
                raise InvalidLieActionError(
                    f"rho([e{i},e{j}]) differs from the commutator of rho(e{i}) and rho(e{j})",
                    f"bracket-compatibility(i={i},j={j})",
                )

    @property
    def rank(self) -> int:
        return self.lie.dim


@dataclass(frozen=True)
class LeftModule:
    """Left module over `algebra`: action[i] is the matrix of e_i."""

    algebra: FinAlgebra
    dim: int
    action: tuple[SparseMatrix, ...]
    name: str = field(default="V", compare=False)

    def __post_init__(self) -> None:
        a = self.algebra
        if len(self.action) != a.dim:
            raise ValidationError(f"Module needs {a.dim} action matrices", "shape")
        if any(m.shape != (self.dim, self.dim) for m in self.action):
            raise ValidationError(f"Action matrices must be {self.dim}x{self.dim}", "shape")
        if self.actionOf(a.unit) != SparseMatrix.identity(self.dim):
            raise ValidationError("The unit does not act as the identity", "module-unit")
        for i, j in product(range(a.dim), repeat=2):
            if self.action[i] @ self.action[j] != self.actionOf(a.structure[i][j]):
                raise ValidationError(
                    f"Module action is not multiplicative on ({i},{j})", f"module-action(i={i},j={j})"
                )

    @classmethod
    def regular(cls, a: FinAlgebra) -> "LeftModule":
        return cls(a, a.dim, tuple(a.leftMultiplicationMatrix(a.basisVector(i)) for i in range(a.dim)), "regular")

    @classmethod
    def rightRegular(cls, a: FinAlgebra) -> "LeftModule":
        """A as a right A-module, i.e. a left module over opposite(a)."""
        return cls(
            opposite(a), a.dim, tuple(a.rightMultiplicationMatrix(a.basisVector(i)) for i in range(a.dim)), "right-regular"
        )

    @classmethod
    def fromCharacter(cls, a: FinAlgebra, character: Sequence[Fraction], name: str = "K") -> "LeftModule":
        """One-dimensional module on which e_i acts by character[i]."""
        return cls(a, 1, tuple(SparseMatrix.fromDense([[c]]) for c in character), name)

    @classmethod
    def zero(cls, a: FinAlgebra) -> "LeftModule":
        return cls(a, 0, tuple(SparseMatrix.zeros(0, 0) for _ in range(a.dim)), "0")

    def actionOf(self, x: Sequence[Fraction]) -> SparseMatrix:
        result = SparseMatrix.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                result = result + self.action[i].scale(c)
        return result

    def act(self, x: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        total = zeroVector(self.dim)
        for i, c in enumerate(x):
            if c:
                total = tuple(t + c * w for t, w in zip(total, self.action[i].applyTo(v), strict=True))
        return total

    def restrict(self, b: AugmentedSubalgebra) -> "LeftModule":
        """The same space as a module over B in B's own basis."""
        if b.parent != self.algebra:
            raise ValidationError("Cannot restrict to a subalgebra of a different algebra", "restriction")
        return LeftModule(b.asAlgebra(), self.dim, tuple(self.actionOf(column) for column in b.inclusion), f"{self.name}|B")


def leftIdeal(a: FinAlgebra, seed: Subspace) -> Subspace:
    """Smallest left ideal containing seed, by saturation."""
    current = seed
    while True:
        products = [a.multiply(a.basisVector(i), v) for i in range(a.dim) for v in current.basis]
        grown = Subspace.spannedBy(list(current.basis) + products, a.dim)
        if grown.dim == current.dim:
            return grown
        current = grown


def generatedSubalgebra(a: FinAlgebra, gens: Subspace) -> Subspace:
    """Smallest unital subalgebra containing gens."""
    current = Subspace.spannedBy([a.unit, *gens.basis], a.dim)
    while True:
        products = [a.multiply(x, y) for x in current.basis for y in current.basis]
        grown = Subspace.spannedBy(list(current.basis) + products, a.dim)
        if grown.dim == current.dim:
            return grown
        current = grown


@dataclass(frozen=True)
class InducedModule:
    """A (x)_B K = A / J with J the left ideal generated by ker eps."""

    ideal: Subspace
    quotient: QuotientSpace
    module: LeftModule

    @property
    def dim(self) -> int:
        return self.module.dim

    def classOf(self, x: Sequence[Fraction]) -> Vector:
        return self.quotient.classOf(x)

    def representative(self, coordinates: Sequence[Fraction]) -> Vector:
        return self.quotient.representative(coordinates)


def inducedModule(a: FinAlgebra, b: AugmentedSubalgebra) -> InducedModule:
    """
    Build A (x)_B K.

    Args:
        a: The ambient algebra
        b: Augmented subalgebra of a

    Returns:
        The quotient of A by the left ideal generated by ker eps with the
        induced left action

    Raises:
        ValidationError: If b is not a subalgebra of a
    """
    if b.parent != a:
        raise ValidationError("Subalgebra belongs to a different algebra", "restriction")
    ideal = leftIdeal(a, Subspace.spannedBy(b.kernelInParent, a.dim))
    quotient = quotientSpace(Subspace.full(a.dim), ideal)
    action = []
    for i in range(a.dim):
        columns = [quotient.classOf(a.multiply(a.basisVector(i), r)) for r in quotient.representatives]
        action.append(SparseMatrix.fromColumns(columns, quotient.dim))
    module = LeftModule(a, quotient.dim, tuple(action), "A(x)_BK")
    logger.debug(f"Induced module {a.name} (x)_B K has dim {module.dim} (ideal dim {ideal.dim})")
    return InducedModule(ideal, quotient, module)


def invariants(v: LeftModule, b: AugmentedSubalgebra) -> Subspace:
    """V^B = { v : b v = eps(b) v for all b in B }."""
    if v.algebra != b.parent:
        raise ValidationError("Module is not over the subalgebra's parent", "restriction")
    blocks = []
    for column, e in zip(b.inclusion, b.eps, strict=True):
        blocks.append(v.actionOf(column) - SparseMatrix.identity(v.dim).scale(e))
    return kernelBasis(SparseMatrix.vstack(blocks, v.dim))


def characterModule(b: AugmentedSubalgebra) -> LeftModule:
    """K as a module over B (in B's own basis) through eps."""
    return LeftModule.fromCharacter(b.asAlgebra(), b.eps, "K")
