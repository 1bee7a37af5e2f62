"""Clifford algebra C(g + g*), the BRST complex A^opp (x) C and its identification with End_A(A (x) wedge g).

A Clifford monomial is a pair (creations, annihilations) of strictly
increasing index tuples standing for e_c1 ... e_cp e*_a1 ... e*_aq. On the
exterior algebra e_i acts by exterior multiplication and e*_i by contraction,
each with the sign (-1)^{#{s in S : s < i}}.
"""

import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Any

from core.algebra import FinAlgebra, LieAction
from core.complexes import (
    AMatrix,
    Cochain,
    EndComplex,
    FreeAComplex,
    GradedAlgebraTable,
    cohomologyAlgebra,
    cohomologyGroup,
)
from core.linalg import ONE, ZERO, SparseMatrix, Vector, addVectors, rank, scaleVector, unitVector
from core.models import BrstDifferentialReport, BrstIsomorphismReport
from core.resolutions import ceComplex, wedgeBasis
from utils.exceptions import ConsistencyError, RankMismatchError, ValidationError
from utils.helpers import RationalHelper, TimeHelper
from utils.logger import logger

CREATION = 0
ANNIHILATION = 1

Letter = tuple[int, int]
Monomial = tuple[tuple[int, ...], tuple[int, ...]]
STRATEGIES = ("leftmost", "rightmost")

UNIT_MONOMIAL: Monomial = ((), ())


def lettersOf(monomial: Monomial) -> tuple[Letter, ...]:
    creations, annihilations = monomial
    return tuple((CREATION, i) for i in creations) + tuple((ANNIHILATION, i) for i in annihilations)


def monomialDegree(monomial: Monomial) -> int:
    """Z-degree: +1 per annihilation, -1 per creation."""
    return len(monomial[1]) - len(monomial[0])


def monomialLabel(monomial: Monomial) -> str:
    creations, annihilations = monomial
    parts = [f"e{i}" for i in creations] + [f"e*{i}" for i in annihilations]
    return " ".join(parts) if parts else "1"


def _outOfOrder(x: Letter, y: Letter) -> bool:
    if x[0] != y[0]:
        return x[0] == ANNIHILATION
    return x[1] >= y[1]


def _isNormal(word: Sequence[Letter]) -> bool:
    return not any(_outOfOrder(word[p], word[p + 1]) for p in range(len(word) - 1))


@lru_cache(maxsize=65536)
def normalOrder(word: tuple[Letter, ...], strategy: str = "leftmost") -> tuple[tuple[Monomial, Fraction], ...]:
    """
    Rewrite a word in the generators as a combination of normal-ordered monomials.

    Args:
        word: Letters (kind, index), kind 0 for e_i and 1 for e*_i
        strategy: Rewrite the leftmost or the rightmost offending pair first

    Returns:
        Sorted (monomial, coefficient) pairs with nonzero coefficients
    """
    if strategy not in STRATEGIES:
        raise ValidationError(f"Unknown normal-ordering strategy {strategy}", "strategy")
    offending = [p for p in range(len(word) - 1) if _outOfOrder(word[p], word[p + 1])]
    if not offending:
        creations = tuple(i for kind, i in word if kind == CREATION)
        annihilations = tuple(i for kind, i in word if kind == ANNIHILATION)
        return (((creations, annihilations), ONE),)

    p = offending[0] if strategy == "leftmost" else offending[-1]
    x, y = word[p], word[p + 1]
    result: dict[Monomial, Fraction] = {}

    def accumulate(terms: Iterable[tuple[Monomial, Fraction]], sign: Fraction) -> None:
        for monomial, c in terms:
            result[monomial] = result.get(monomial, ZERO) + sign * c

    if x[0] == y[0] and x[1] == y[1]:
        return ()
    accumulate(normalOrder(word[:p] + (y, x) + word[p + 2 :], strategy), -ONE)
    if x[0] != y[0] and x[1] == y[1]:
        accumulate(normalOrder(word[:p] + word[p + 2 :], strategy), ONE)
    return tuple(sorted((m, c) for m, c in result.items() if c))


def _checkRank(monomial: Monomial, rank_: int) -> None:
    creations, annihilations = monomial
    for indices in (creations, annihilations):
        if any(not 0 <= i < rank_ for i in indices):
            raise ValidationError(f"Index out of range for rank {rank_}", "clifford-index")
    if not _isNormal(lettersOf(monomial)):
        raise ValidationError(f"Monomial {monomialLabel(monomial)} is not normal-ordered", "clifford-normal-order")


@dataclass(frozen=True)
class CliffordElement:
    """Element of C(g + g*) for dim g = rank, as a map from normal monomials to scalars."""

    rank: int
    terms: Mapping[Monomial, Fraction]

    def __post_init__(self) -> None:
        cleaned = {}
        for monomial, c in self.terms.items():
            _checkRank(monomial, self.rank)
            if c:
                cleaned[monomial] = Fraction(c)
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def one(cls, rank_: int) -> "CliffordElement":
        return cls(rank_, {UNIT_MONOMIAL: ONE})

    @classmethod
    def creation(cls, rank_: int, i: int) -> "CliffordElement":
        return cls(rank_, {((i,), ()): ONE})

    @classmethod
    def annihilation(cls, rank_: int, i: int) -> "CliffordElement":
        return cls(rank_, {((), (i,)): ONE})

    @classmethod
    def fromWord(cls, rank_: int, word: Sequence[Letter], strategy: str = "leftmost") -> "CliffordElement":
        return cls(rank_, dict(normalOrder(tuple(word), strategy)))

    def isZero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        degrees = {monomialDegree(m) for m in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def parity(self) -> int | None:
        parities = {(len(m[0]) + len(m[1])) % 2 for m in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def _combine(self, other: "CliffordElement", sign: Fraction) -> "CliffordElement":
        if self.rank != other.rank:
            raise RankMismatchError("Clifford elements of different rank", (self.rank, other.rank))
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + sign * c
        return CliffordElement(self.rank, terms)

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        return self._combine(other, ONE)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self._combine(other, -ONE)

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        return cliffordProduct(self, other)

    def scale(self, c: Fraction) -> "CliffordElement":
        return CliffordElement(self.rank, {m: c * v for m, v in self.terms.items()})

    def toDict(self) -> dict[str, str]:
        return {monomialLabel(m): RationalHelper.formatRational(c) for m, c in sorted(self.terms.items())}


@lru_cache(maxsize=65536)
def monomialProduct(
    left: Monomial, right: Monomial, strategy: str = "leftmost"
) -> tuple[tuple[Monomial, Fraction], ...]:
    return normalOrder(lettersOf(left) + lettersOf(right), strategy)


def cliffordProduct(x: CliffordElement, y: CliffordElement, strategy: str = "leftmost") -> CliffordElement:
    """
    Normal-ordered product x y.

    Raises:
        RankMismatchError: If x and y have different ranks
    """
    if x.rank != y.rank:
        raise RankMismatchError(f"Cannot multiply rank {x.rank} by rank {y.rank}", (x.rank, y.rank))
    terms: dict[Monomial, Fraction] = {}
    for (m1, c1), (m2, c2) in product(x.terms.items(), y.terms.items()):
        for m, c in monomialProduct(m1, m2, strategy):
            terms[m] = terms.get(m, ZERO) + c1 * c2 * c
    return CliffordElement(x.rank, terms)


def _applyLetter(letter: Letter, mask: int) -> tuple[int, int] | None:
    kind, i = letter
    below = bin(mask & ((1 << i) - 1)).count("1")
    sign = -1 if below % 2 else 1
    present = (mask >> i) & 1
    if kind == CREATION:
        return None if present else (sign, mask | (1 << i))
    return (sign, mask & ~(1 << i)) if present else None


def _masks(rank_: int) -> tuple[list[int], dict[int, int]]:
    masks = [sum(1 << i for i in subset) for subset in wedgeBasis(rank_)]
    return masks, {mask: position for position, mask in enumerate(masks)}


@lru_cache(maxsize=4096)
def monomialOperator(monomial: Monomial, rank_: int) -> SparseMatrix:
    """Matrix of a monomial on wedge(K^rank) in wedgeBasis order."""
    masks, position = _masks(rank_)
    letters = lettersOf(monomial)
    entries: dict[tuple[int, int], Fraction] = {}
    for column, mask in enumerate(masks):
        sign = 1
        current: int | None = mask
        for letter in reversed(letters):
            assert current is not None
            applied = _applyLetter(letter, current)
            if applied is None:
                current = None
                break
            step, current = applied
            sign *= step
        if current is not None:
            entries[(position[current], column)] = Fraction(sign)
    size = len(masks)
    return SparseMatrix.fromEntries(size, size, entries)


def operatorMatrix(x: CliffordElement) -> SparseMatrix:
    """Realization of x on the exterior algebra by exterior and inner multiplications."""
    size = 1 << x.rank
    result = SparseMatrix.zeros(size, size)
    for monomial, c in x.terms.items():
        result = result + monomialOperator(monomial, x.rank).scale(c)
    return result


# --------------------------------------------------------------------------
# A^opp (x) C
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BrstElement:
    """Element of A^opp (x) C: each Clifford monomial carries a coefficient in A."""

    algebra: FinAlgebra = field(compare=False, repr=False)
    rank: int
    terms: Mapping[Monomial, Vector]

    def __post_init__(self) -> None:
        cleaned = {}
        for monomial, value in self.terms.items():
            _checkRank(monomial, self.rank)
            if len(value) != self.algebra.dim:
                raise ValidationError("BRST coefficients must be algebra coordinates", "shape")
            if any(value):
                cleaned[monomial] = tuple(value)
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def zero(cls, algebra: FinAlgebra, rank_: int) -> "BrstElement":
        return cls(algebra, rank_, {})

    @classmethod
    def one(cls, algebra: FinAlgebra, rank_: int) -> "BrstElement":
        return cls(algebra, rank_, {UNIT_MONOMIAL: algebra.unit})

    @classmethod
    def tensor(cls, algebra: FinAlgebra, a: Vector, c: CliffordElement) -> "BrstElement":
        """a (x) c."""
        return cls(algebra, c.rank, {m: scaleVector(v, a) for m, v in c.terms.items()})

    def isZero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        degrees = {monomialDegree(m) for m in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def _combine(self, other: "BrstElement", sign: Fraction) -> "BrstElement":
        if self.rank != other.rank:
            raise RankMismatchError("BRST elements of different rank", (self.rank, other.rank))
        terms = dict(self.terms)
        for m, value in other.terms.items():
            scaled = scaleVector(sign, value)
            terms[m] = addVectors(terms[m], scaled) if m in terms else scaled
        return BrstElement(self.algebra, self.rank, terms)

    def __add__(self, other: "BrstElement") -> "BrstElement":
        return self._combine(other, ONE)

    def __sub__(self, other: "BrstElement") -> "BrstElement":
        return self._combine(other, -ONE)

    def scale(self, c: Fraction) -> "BrstElement":
        return BrstElement(self.algebra, self.rank, {m: scaleVector(c, v) for m, v in self.terms.items()})

    def __mul__(self, other: "BrstElement") -> "BrstElement":
        """(x (x) m)(y (x) m') = (y x) (x) m m'; A^opp is even, so no sign."""
        if self.rank != other.rank:
            raise RankMismatchError("BRST elements of different rank", (self.rank, other.rank))
        a = self.algebra
        terms: dict[Monomial, Vector] = {}
        for (m1, x), (m2, y) in product(self.terms.items(), other.terms.items()):
            coefficient = a.multiply(y, x)
            if not any(coefficient):
                continue
            for m, c in monomialProduct(m1, m2):
                value = scaleVector(c, coefficient)
                terms[m] = addVectors(terms[m], value) if m in terms else value
        return BrstElement(a, self.rank, terms)

    def toDict(self) -> dict[str, list[str]]:
        return {monomialLabel(m): RationalHelper.formatVector(v) for m, v in sorted(self.terms.items())}


def supercommutator(d: BrstElement, x: BrstElement) -> BrstElement:
    """[d, x] = d x - (-1)^{|d||x|} x d for homogeneous d and x."""
    if d.isZero() or x.isZero():
        return BrstElement.zero(x.algebra, x.rank)
    p, q = d.degree, x.degree
    if p is None or q is None:
        raise ValidationError("Supercommutator needs homogeneous elements", "degree")
    sign = ONE if (p * q) % 2 == 0 else -ONE
    return d * x - (x * d).scale(sign)


def operatorRealization(x: BrstElement) -> AMatrix:
    """
    The A-linear endomorphism of A (x) wedge g given by x.

    a (x) m sends 1 (x) w_i to sum_j T_ji a (x) w_j with T the matrix of m,
    so A^opp acts by right multiplication.
    """
    a = x.algebra
    size = 1 << x.rank
    entries: dict[tuple[int, int], Vector] = {}
    for monomial, value in x.terms.items():
        for j, row in monomialOperator(monomial, x.rank).rowItems():
            for i, t in row.items():
                scaled = scaleVector(t, value)
                entries[(i, j)] = addVectors(entries[(i, j)], scaled) if (i, j) in entries else scaled
    return AMatrix(a, size, size, entries)


def _degreeOffsets(rank_: int) -> list[int]:
    """offsets[s] = number of wedge basis elements of degree below s."""
    return [sum(comb(rank_, t) for t in range(s)) for s in range(rank_ + 2)]


def totalDifferential(x: FreeAComplex, rank_: int) -> AMatrix:
    """The CE differential assembled into one endomorphism of A (x) wedge g."""
    offsets = _degreeOffsets(rank_)
    size = 1 << rank_
    entries: dict[tuple[int, int], Vector] = {}
    for s in range(1, x.top + 1):
        for (i, j), value in x.d(s).entries.items():
            entries[(offsets[s] + i, offsets[s - 1] + j)] = value
    return AMatrix(x.algebra, size, size, entries)


def _proportionality(x: BrstElement, y: BrstElement) -> Fraction | None:
    """c with x = c y, or None when y is zero or the two are not proportional."""
    if y.isZero():
        return None
    monomial, value = next(iter(y.terms.items()))
    k = next(i for i, c in enumerate(value) if c)
    c = x.terms.get(monomial, y.algebra.zero())[k] / value[k]
    return c if (x - y.scale(c)).isZero() else None


def brstElement(act: LieAction) -> BrstDifferentialReport:
    """
    The odd element D in wedge normalization and in the literal operator form.

    wedge:   D = sum_i rho(e_i) (x) e*_i + 1/2 sum_{i,j} f_ij^k e_k e*_i e*_j
    literal: D = sum_i rho(e_i) (x) e*_i -     sum_{i,j} f_ij^k e_k e*_i e*_j
    The wedge form realizes the Chevalley-Eilenberg differential.
    """
    a = act.target
    n = act.rank
    linear: dict[Monomial, Vector] = {((), (i,)): act.rho[i] for i in range(n)}
    quadratic: dict[Monomial, Fraction] = {}
    for i, j in product(range(n), repeat=2):
        for k, f in enumerate(act.lie.bracket[i][j]):
            if not f:
                continue
            for monomial, c in normalOrder(((CREATION, k), (ANNIHILATION, i), (ANNIHILATION, j))):
                quadratic[monomial] = quadratic.get(monomial, ZERO) + f * c

    linearPart = BrstElement(a, n, linear)
    quadraticPart = BrstElement.tensor(a, a.unit, CliffordElement(n, quadratic))
    wedgeElement = linearPart + quadraticPart.scale(Fraction(1, 2))
    literalElement = linearPart - quadraticPart

    quadraticScale = _proportionality(wedgeElement - linearPart, literalElement - linearPart)
    wedgeSquares = (wedgeElement * wedgeElement).isZero()
    literalSquares = (literalElement * literalElement).isZero()
    matches = operatorRealization(wedgeElement) == totalDifferential(ceComplex(act), n)
    if not literalSquares:
        logger.info("The literal operator form does not square to zero; the wedge normalization is used")
    return BrstDifferentialReport(wedgeElement, literalElement, quadraticScale, wedgeSquares, literalSquares, matches)


def _normalMonomials(rank_: int) -> list[Monomial]:
    subsets = wedgeBasis(rank_)
    return [(creations, annihilations) for creations in subsets for annihilations in subsets]


class BrstComplex:
    """A^opp (x) C(g + g*) with d x = D x - (-1)^{|x|} x D, graded by monomialDegree.

    Coordinates in degree m: monomial index (within degree m) * dim A + k.
    """

    truncated = False

    def __init__(self, act: LieAction) -> None:
        self.act = act
        self.algebra = act.target
        self.rank = act.rank
        self.report = brstElement(act)
        self.odd = self.report.wedgeElement
        self.monomials: dict[int, list[Monomial]] = {}
        for monomial in _normalMonomials(self.rank):
            self.monomials.setdefault(monomialDegree(monomial), []).append(monomial)
        self._index = {m: i for ms in self.monomials.values() for i, m in enumerate(ms)}
        self._differentials: dict[int, SparseMatrix] = {}
        logger.debug(f"BRST complex of rank {self.rank} over {self.algebra.name}")

    def degreeDim(self, n: int) -> int:
        return len(self.monomials.get(n, ())) * self.algebra.dim

    def honestDegrees(self) -> tuple[int, int]:
        return (-self.rank, self.rank)

    def canMultiply(self, n: int, m: int) -> bool:
        return True

    def basisElement(self, n: int, index: int) -> BrstElement:
        dim = self.algebra.dim
        monomial = self.monomials[n][index // dim]
        return BrstElement(self.algebra, self.rank, {monomial: unitVector(dim, index % dim)})

    def fromCoordinates(self, n: int, coordinates: Sequence[Fraction]) -> BrstElement:
        dim = self.algebra.dim
        terms = {}
        for position, monomial in enumerate(self.monomials.get(n, ())):
            chunk = tuple(coordinates[position * dim : (position + 1) * dim])
            if any(chunk):
                terms[monomial] = chunk
        return BrstElement(self.algebra, self.rank, terms)

    def coordinates(self, x: BrstElement, n: int) -> Vector:
        dim = self.algebra.dim
        result = [ZERO] * self.degreeDim(n)
        for monomial, value in x.terms.items():
            if monomialDegree(monomial) != n:
                raise ValidationError(f"Element has a component outside degree {n}", "degree")
            start = self._index[monomial] * dim
            result[start : start + dim] = value
        return tuple(result)

    def differential(self, x: BrstElement) -> BrstElement:
        return supercommutator(self.odd, x)

    def differentialMatrix(self, n: int) -> SparseMatrix:
        if n not in self._differentials:
            columns = [
                self.coordinates(self.differential(self.basisElement(n, k)), n + 1) for k in range(self.degreeDim(n))
            ]
            self._differentials[n] = SparseMatrix.fromColumns(columns, self.degreeDim(n + 1))
        return self._differentials[n]

    def multiplyCoordinates(self, n: int, u: Sequence[Fraction], m: int, v: Sequence[Fraction]) -> Vector:
        return self.coordinates(self.fromCoordinates(n, u) * self.fromCoordinates(m, v), n + m)

    def unitCoordinates(self) -> Vector:
        return self.coordinates(BrstElement.one(self.algebra, self.rank), 0)

    def squaresToZero(self) -> bool:
        lo, hi = self.honestDegrees()
        return all((self.differentialMatrix(n + 1) @ self.differentialMatrix(n)).isZero() for n in range(lo, hi))

    def cohomologyDims(self) -> dict[int, int]:
        lo, hi = self.honestDegrees()
        return {n: cohomologyGroup(self, n).dim for n in range(lo, hi + 1)}

    def cohomologyAlgebra(self, degrees: Sequence[int] | None = None, shifts: int = 20, seed: int = 0) -> GradedAlgebraTable:
        lo, hi = self.honestDegrees()
        return cohomologyAlgebra(self, degrees if degrees is not None else range(lo, hi + 1), shifts, seed, "brst")


def buildBrstComplex(act: LieAction) -> BrstComplex:
    """
    Build the BRST complex and assert d^2 = 0 on the whole space.

    Raises:
        ConsistencyError: If the differential does not square to zero
    """
    complex_ = BrstComplex(act)
    if not complex_.squaresToZero():
        raise ConsistencyError("The BRST differential does not square to zero", "d-squared")
    return complex_


def _toCochain(end: EndComplex, matrix: AMatrix, degree: int, offsets: list[int]) -> tuple[Cochain, bool]:
    """Cut a full endomorphism into degree-`degree` components; flag entries of other degrees."""

    def wedgeDegree(index: int) -> int:
        return next(s for s in range(len(offsets) - 1) if offsets[s] <= index < offsets[s + 1])

    grouped: dict[int, dict[tuple[int, int], Vector]] = {}
    graded = True
    for (i, j), value in matrix.entries.items():
        s, t = wedgeDegree(i), wedgeDegree(j)
        if s - t != degree:
            graded = False
            continue
        grouped.setdefault(s, {})[(i - offsets[s], j - offsets[t])] = value
    x = end.source
    components = {
        s: AMatrix(end.algebra, x.fiber(s), x.fiber(s - degree), entries) for s, entries in grouped.items()
    }
    return end.fromComponents(degree, components), graded


@TimeHelper.measureExecutionTime("brstIsomorphismCheck")
def brstIsomorphismCheck(act: LieAction, maxPairs: int = 4096, seed: int = 0) -> BrstIsomorphismReport:
    """
    Check that operatorRealization identifies the BRST complex with End_A(A (x) wedge g).

    Verifies grading, bijectivity per degree, d-intertwining on every basis
    element, multiplicativity on basis pairs (all of them, or `maxPairs`
    sampled with `seed`), and equality of cohomology dimensions.
    """
    brst = buildBrstComplex(act)
    end = EndComplex(ceComplex(act))
    offsets = _degreeOffsets(brst.rank)
    lo, hi = brst.honestDegrees()
    failures: list[str] = []

    images: dict[tuple[int, int], Cochain] = {}
    gradingMatches = True
    bijective = True
    intertwines = True
    for n in range(lo, hi + 1):
        columns = []
        for k in range(brst.degreeDim(n)):
            x = brst.basisElement(n, k)
            image, graded = _toCochain(end, operatorRealization(x), n, offsets)
            if not graded:
                gradingMatches = False
                failures.append(f"grading: basis element {k} of degree {n}")
            images[(n, k)] = image
            columns.append(image.coordinates())
            dx, _ = _toCochain(end, operatorRealization(brst.differential(x)), n + 1, offsets)
            if dx.coordinates() != end.differential(image).coordinates():
                intertwines = False
                failures.append(f"differential: basis element {k} of degree {n}")
        if brst.degreeDim(n) != end.degreeDim(n) or rank(SparseMatrix.fromColumns(columns, end.degreeDim(n))) != end.degreeDim(n):
            bijective = False
            failures.append(f"bijectivity in degree {n}")

    pairs = [(p, q) for p in images for q in images]
    if len(pairs) > maxPairs:
        pairs = random.Random(seed).sample(pairs, maxPairs)
    multiplicative = True
    for (n, k), (m, l) in pairs:
        product_ = brst.basisElement(n, k) * brst.basisElement(m, l)
        expected, _ = _toCochain(end, operatorRealization(product_), n + m, offsets)
        if end.compose(images[(n, k)], images[(m, l)]).coordinates() != expected.coordinates():
            multiplicative = False
            failures.append(f"product: ({n},{k}) x ({m},{l})")
            break

    brstDims = brst.cohomologyDims()
    endDims = {n: cohomologyGroup(end, n).dim for n in range(lo, hi + 1)}
    logger.info(f"BRST cohomology {brstDims}, End cohomology {endDims}")
    return BrstIsomorphismReport(
        gradingMatches=gradingMatches,
        bijective=bijective,
        intertwines=intertwines,
        multiplicative=multiplicative,
        dimsMatch=brstDims == endDims,
        brstDims=brstDims,
        endDims=endDims,
        pairsChecked=len(pairs),
        firstFailure=failures[0] if failures else None,
    )


def brstSummary(act: LieAction) -> dict[str, Any]:
    """Element report plus cohomology dims, as shown by the `brst` command."""
    complex_ = buildBrstComplex(act)
    return {"differential": complex_.report.toDict(), "cohomologyDims": {str(n): d for n, d in complex_.cohomologyDims().items()}}
