"""Resolutions of K over B and the free A-complexes induced from them.

Bar complexes are normalized: tensor slots run over the canonical basis of
ker eps, which is an ideal of B, so products of slots stay in the slots.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from core.algebra import AugmentedSubalgebra, FinAlgebra, LieAction
from core.complexes import (
    AMatrix,
    ChainMap,
    FreeAComplex,
    homology,
    homotopyDefect,
    isChainMap,
)
from core.linalg import ONE, SparseMatrix, Vector, addVectors, scaleVector, solve
from core.models import ResolutionReport
from utils.exceptions import ResolutionError, ValidationError
from utils.logger import logger


def _sign(k: int) -> Fraction:
    return ONE if k % 2 == 0 else -ONE


def _accumulate(entries: dict[tuple[int, int], Vector], key: tuple[int, int], value: Vector) -> None:
    entries[key] = addVectors(entries[key], value) if key in entries else value


# --------------------------------------------------------------------------
# Bar constructions
# --------------------------------------------------------------------------


def barWords(kernelDim: int, s: int) -> list[tuple[int, ...]]:
    """Basis words of (ker eps)^{(x) s} in lexicographic order."""
    return list(product(range(kernelDim), repeat=s))


def inducedBarComplex(a: FinAlgebra, b: AugmentedSubalgebra, top: int) -> FreeAComplex:
    """
    A (x)_B (bar resolution of K) = A (x) (ker eps)^{(x) s}, degrees 0..top.

    d(1[u_1|...|u_s]) = u_1[u_2|...|u_s] + sum_k (-1)^k [...|u_k u_{k+1}|...]
    + (-1)^s eps(u_s)[u_1|...|u_{s-1}], the last term vanishing on ker eps.
    """
    if b.parent != a:
        raise ValidationError("Subalgebra belongs to a different algebra", "restriction")
    r = b.kernelDim
    if r == 0:
        return FreeAComplex(a, (1,), (), True, "A(x)_B Bar")
    if top < 0:
        raise ValidationError("Top degree must be non-negative", "window")

    fibers = tuple(r**s for s in range(top + 1))
    differentials = []
    for s in range(1, top + 1):
        target = {w: i for i, w in enumerate(barWords(r, s - 1))}
        entries: dict[tuple[int, int], Vector] = {}
        for i, w in enumerate(barWords(r, s)):
            _accumulate(entries, (i, target[w[1:]]), b.kernelInParent[w[0]])
            for k in range(1, s):
                coefficients = b.kernelProducts[w[k - 1]][w[k]]
                for l, c in enumerate(coefficients):
                    if c:
                        merged = w[: k - 1] + (l,) + w[k + 1 :]
                        _accumulate(entries, (i, target[merged]), scaleVector(_sign(k) * c, a.unit))
            last = b.epsilon(b.kernelBasis[w[-1]])
            if last:
                _accumulate(entries, (i, target[w[:-1]]), scaleVector(_sign(s) * last, a.unit))
        differentials.append(AMatrix(a, fibers[s], fibers[s - 1], entries))
    logger.debug(f"Induced bar complex over {a.name}: fibers {fibers}")
    return FreeAComplex(a, fibers, tuple(differentials), False, "A(x)_B Bar")


def barResolution(b: AugmentedSubalgebra, top: int) -> FreeAComplex:
    """The normalized bar resolution of K over B, in B's own basis."""
    return inducedBarComplex(b.asAlgebra(), b.selfPair(), top)


def induceComplex(x: FreeAComplex, b: AugmentedSubalgebra) -> FreeAComplex:
    """A (x)_B X for a free B-complex X: entries pushed into A."""
    if x.algebra != b.asAlgebra():
        raise ValidationError("Complex is not over the subalgebra", "restriction")
    a = b.parent
    differentials = tuple(d.mapEntries(a, b.embed) for d in x.differentials)
    return FreeAComplex(a, x.fiberDims, differentials, x.bounded, f"A(x)_B {x.name}")


def twoSidedBarComplex(a: FinAlgebra, b: AugmentedSubalgebra, top: int) -> FreeAComplex:
    """A (x) (ker eps)^{(x) s} (x) B with the full two-sided bar differential.

    Fiber index of [w] (x) b_k is wordIndex * dim B + k.
    """
    if b.parent != a:
        raise ValidationError("Subalgebra belongs to a different algebra", "restriction")
    r, m = b.kernelDim, b.dim
    bAlgebra = b.asAlgebra()
    depth = top if r else 0
    fibers = tuple((r**s) * m for s in range(depth + 1))
    differentials = []
    for s in range(1, depth + 1):
        target = {w: i for i, w in enumerate(barWords(r, s - 1))}
        entries: dict[tuple[int, int], Vector] = {}
        for wi, w in enumerate(barWords(r, s)):
            for k in range(m):
                row = wi * m + k
                _accumulate(entries, (row, target[w[1:]] * m + k), b.kernelInParent[w[0]])
                for position in range(1, s):
                    coefficients = b.kernelProducts[w[position - 1]][w[position]]
                    for l, c in enumerate(coefficients):
                        if c:
                            merged = w[: position - 1] + (l,) + w[position + 1 :]
                            _accumulate(entries, (row, target[merged] * m + k), scaleVector(_sign(position) * c, a.unit))
                rightProduct = bAlgebra.multiply(b.kernelBasis[w[-1]], bAlgebra.basisVector(k))
                for kk, c in enumerate(rightProduct):
                    if c:
                        _accumulate(entries, (row, target[w[:-1]] * m + kk), scaleVector(_sign(s) * c, a.unit))
        differentials.append(AMatrix(a, fibers[s], fibers[s - 1], entries))
    return FreeAComplex(a, fibers, tuple(differentials), r == 0, "A(x)Bar(x)B")


def tensorDownToK(twoSided: FreeAComplex, b: AugmentedSubalgebra) -> FreeAComplex:
    """Apply - (x)_B K to a two-sided bar complex: [w] (x) b_k -> eps(b_k) [w]."""
    a = twoSided.algebra
    m = b.dim
    unitCoordinates = b.unitCoordinates

    def section(s: int) -> AMatrix:
        words = twoSided.fiber(s) // m
        scalars = {(w, w * m + k): c for w in range(words) for k, c in enumerate(unitCoordinates) if c}
        return AMatrix.fromScalars(a, words, words * m, scalars)

    def projection(s: int) -> AMatrix:
        words = twoSided.fiber(s) // m
        scalars = {(w * m + k, w): e for w in range(words) for k, e in enumerate(b.eps) if e}
        return AMatrix.fromScalars(a, words * m, words, scalars)

    fibers = tuple(f // m for f in twoSided.fiberDims)
    differentials = tuple(
        section(s).then(twoSided.d(s)).then(projection(s - 1)) for s in range(1, twoSided.top + 1)
    )
    return FreeAComplex(a, fibers, differentials, twoSided.bounded, "A(x)Bar(x)_B K")


# --------------------------------------------------------------------------
# Chevalley-Eilenberg
# --------------------------------------------------------------------------


def wedgeBasis(n: int) -> tuple[tuple[int, ...], ...]:
    """Basis of the exterior algebra on n generators, by degree then lexicographically."""
    return tuple(subset for s in range(n + 1) for subset in combinations(range(n), s))


def wedgeDegreeBasis(n: int, s: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), s))


def ceComplex(act: LieAction) -> FreeAComplex:
    """
    A (x) wedge^s(g) with the Chevalley-Eilenberg differential.

    d(1 (x) x_1^...^x_s) = sum_p (-1)^p rho(x_p) (x) (omit p)
    + sum_{p<q} (-1)^{p+q} [x_p, x_q]^(omit p, q), positions counted from 0;
    rho acts by right multiplication in A.
    """
    a = act.target
    n = act.rank
    lie = act.lie
    fibers = tuple(comb(n, s) for s in range(n + 1))
    differentials = []
    for s in range(1, n + 1):
        target = {w: i for i, w in enumerate(wedgeDegreeBasis(n, s - 1))}
        entries: dict[tuple[int, int], Vector] = {}
        for i, word in enumerate(wedgeDegreeBasis(n, s)):
            for p, index in enumerate(word):
                rest = word[:p] + word[p + 1 :]
                _accumulate(entries, (i, target[rest]), scaleVector(_sign(p), act.rho[index]))
            for p, q in combinations(range(s), 2):
                rest = tuple(x for t, x in enumerate(word) if t not in (p, q))
                for k, c in enumerate(lie.bracket[word[p]][word[q]]):
                    if not c or k in rest:
                        continue
                    inserted = tuple(sorted(rest + (k,)))
                    sortSign = _sign(sum(1 for x in rest if x < k))
                    _accumulate(entries, (i, target[inserted]), scaleVector(_sign(p + q) * sortSign * c, a.unit))
        differentials.append(AMatrix(a, fibers[s], fibers[s - 1], entries))
    return FreeAComplex(a, fibers, tuple(differentials), True, "A(x)Wedge(g)")


# --------------------------------------------------------------------------
# User supplied resolutions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionData:
    """A free B-complex as read from a resolution file.

    differentials[s] lists (i, j, B-coordinates) for d_s : X_s -> X_{s-1};
    a periodic file repeats its last differential forever.
    """

    fiberDims: tuple[int, ...]
    differentials: Mapping[int, Sequence[tuple[int, int, Vector]]]
    periodic: bool = False

    @property
    def givenTop(self) -> int:
        return len(self.fiberDims) - 1


def fileResolution(b: AugmentedSubalgebra, data: ResolutionData, top: int) -> FreeAComplex:
    """Build the B-complex described by `data` up to degree `top`."""
    bAlgebra = b.asAlgebra()
    given = data.givenTop
    if given < 1:
        raise ResolutionError("A resolution file needs at least one differential", 1)
    if data.periodic and data.fiberDims[given] != data.fiberDims[given - 1]:
        raise ResolutionError("A periodic resolution needs equal fibers in its last two degrees", given)

    def givenDifferential(s: int) -> AMatrix:
        entries: dict[tuple[int, int], Vector] = {}
        for i, j, coords in data.differentials.get(s, ()):
            if len(coords) != bAlgebra.dim:
                raise ResolutionError(f"d_{s} entry ({i},{j}) must have {bAlgebra.dim} coordinates", s)
            _accumulate(entries, (i, j), tuple(coords))
        return AMatrix(bAlgebra, data.fiberDims[s], data.fiberDims[s - 1], entries)

    if not data.periodic and top >= given:
        fibers = data.fiberDims
        differentials = tuple(givenDifferential(s) for s in range(1, given + 1))
        return FreeAComplex(bAlgebra, fibers, differentials, True, "file")

    fibers = tuple(data.fiberDims[min(s, given)] for s in range(top + 1))
    differentials = tuple(givenDifferential(min(s, given)) for s in range(1, top + 1))
    return FreeAComplex(bAlgebra, fibers, differentials, False, "file")


def _leftActionBlocks(x: FreeAComplex, s: int, element: Vector) -> SparseMatrix:
    block = x.algebra.leftMultiplicationMatrix(element)
    return SparseMatrix.blockDiagonal([block] * x.fiber(s))


def validateResolution(x: FreeAComplex, b: AugmentedSubalgebra, window: int) -> ResolutionReport:
    """
    Check that x resolves K over B through degree window-1.

    Args:
        x: Free complex over B's own algebra
        b: The augmented subalgebra
        window: Homology is checked in degrees 0..window-1

    Returns:
        ResolutionReport naming the first failing degree, if any

    Raises:
        ResolutionError: If x is a truncation shorter than the window
    """
    if x.algebra != b.asAlgebra():
        raise ValidationError("Complex is not over the subalgebra", "restriction")
    if not x.bounded and x.top < window:
        raise ResolutionError(f"Complex is built only to degree {x.top}, need {window}", x.top)

    if x.fiber(0) != 1:
        return ResolutionReport(False, (), 0, "degree 0 must be a single copy of B")
    for value in x.d(1).entries.values():
        if b.epsilon(value):
            return ResolutionReport(False, (), 1, "d_1 does not land in ker eps")

    scalar = x.scalarComplex()
    dims: list[int] = []
    for s in range(min(window, x.top + 1)):
        if s == x.top and not x.bounded:
            break
        dims.append(homology(scalar, s).dim)
        expected = 1 if s == 0 else 0
        if dims[-1] != expected:
            return ResolutionReport(False, tuple(dims), s, f"H_{s} has dim {dims[-1]}, expected {expected}")

    bAlgebra = x.algebra
    for s in range(1, x.top + 1):
        d = x.d(s).toScalarMatrix()
        for j in range(bAlgebra.dim):
            element = bAlgebra.basisVector(j)
            if d @ _leftActionBlocks(x, s, element) != _leftActionBlocks(x, s - 1, element) @ d:
                return ResolutionReport(False, tuple(dims), s, f"d_{s} is not B-linear")

    return ResolutionReport(True, tuple(dims))


# --------------------------------------------------------------------------
# Comparison maps between resolutions
# --------------------------------------------------------------------------


def _solveRows(d: AMatrix, rhs: AMatrix, degree: int) -> AMatrix:
    """Find h with h then d = rhs, row by row."""
    a = d.algebra
    n = a.dim
    matrix = d.toScalarMatrix()
    entries: dict[tuple[int, int], Vector] = {}
    for i in range(rhs.rows):
        target: list[Fraction] = []
        for j in range(rhs.cols):
            target.extend(rhs.entry(i, j))
        solution = solve(matrix, target)
        if solution is None:
            raise ResolutionError(f"No lift exists at degree {degree}", degree)
        for j in range(d.rows):
            chunk = solution[j * n : (j + 1) * n]
            if any(chunk):
                entries[(i, j)] = chunk
    return AMatrix(a, rhs.rows, d.rows, entries)


def liftChainMap(x: FreeAComplex, y: FreeAComplex) -> ChainMap:
    """
    Lift id_K to a chain map X -> Y between resolutions of K.

    Raises:
        ResolutionError: If some degree admits no lift (y is not exact there)
    """
    if x.algebra != y.algebra:
        raise ValidationError("Resolutions over different algebras", "restriction")
    if x.fiber(0) != 1 or y.fiber(0) != 1:
        raise ResolutionError("Both resolutions need a single copy of B in degree 0", 0)
    # past the top of a bounded Y the lift must vanish
    top = x.top if y.bounded else min(x.top, y.top)
    components = [AMatrix.identity(x.algebra, 1)]
    for s in range(1, top + 1):
        rhs = x.d(s).then(components[s - 1])
        components.append(_solveRows(y.d(s), rhs, s))
    return ChainMap(x, y, 0, tuple(components))


def constructHomotopy(g: ChainMap) -> ChainMap:
    """
    Homotopy h with g - id = d h + h d for a self-map g of X lifting id_K.

    Raises:
        ResolutionError: If the equation has no solution in some degree
    """
    x = g.source
    a = x.algebra
    components: list[AMatrix] = []
    for s in range(x.top):
        previous = components[s - 1] if s > 0 else AMatrix.zero(a, 0, x.fiber(0))
        rhs = g.component(s) - x.identity(s) - x.d(s).then(previous)
        components.append(_solveRows(x.d(s + 1), rhs, s))
    return ChainMap(x, x, 1, tuple(components))


@dataclass(frozen=True)
class ComparisonMaps:
    """F : X -> Y, F' : Y -> X and homotopies on both sides."""

    forward: ChainMap
    backward: ChainMap
    sourceHomotopy: ChainMap
    targetHomotopy: ChainMap


def comparisonMaps(x: FreeAComplex, y: FreeAComplex) -> ComparisonMaps:
    """The standard comparison data between two resolutions of K."""
    forward = liftChainMap(x, y)
    backward = liftChainMap(y, x)
    sourceHomotopy = constructHomotopy(forward.then(backward))
    targetHomotopy = constructHomotopy(backward.then(forward))
    for label, g, h, complex_ in (
        ("source", forward.then(backward), sourceHomotopy, x),
        ("target", backward.then(forward), targetHomotopy, y),
    ):
        failing = homotopyDefect(g, h, complex_.top - 1)
        if failing is not None:
            raise ResolutionError(f"Homotopy on the {label} side fails at degree {failing}", failing)
    return ComparisonMaps(forward, backward, sourceHomotopy, targetHomotopy)


def induceChainMap(f: ChainMap, b: AugmentedSubalgebra, source: FreeAComplex, target: FreeAComplex) -> ChainMap:
    """A (x)_B f between the induced complexes."""
    a = b.parent
    return ChainMap(source, target, f.degree, tuple(c.mapEntries(a, b.embed) for c in f.components))


def induceComparison(maps: ComparisonMaps, b: AugmentedSubalgebra, x: FreeAComplex, y: FreeAComplex) -> ComparisonMaps:
    """Push comparison data along A (x)_B -, given the induced complexes x and y."""
    return ComparisonMaps(
        induceChainMap(maps.forward, b, x, y),
        induceChainMap(maps.backward, b, y, x),
        induceChainMap(maps.sourceHomotopy, b, x, x),
        induceChainMap(maps.targetHomotopy, b, y, y),
    )


@dataclass(frozen=True)
class Padding:
    """X with an acyclic summand A = A in degrees (k, k-1), plus the equivalence data."""

    padded: FreeAComplex
    inclusion: ChainMap
    projection: ChainMap
    homotopy: ChainMap

    def asComparison(self) -> ComparisonMaps:
        original = self.inclusion.source
        zero = ChainMap(original, original, 1, ())
        return ComparisonMaps(self.inclusion, self.projection, zero, self.homotopy)


def padWithContractible(x: FreeAComplex, k: int) -> Padding:
    """
    Add 0 -> A --id--> A -> 0 in degrees k and k-1.

    The new generators are appended to the fibers. inclusion o projection - id
    equals d h + h d with h sending the new degree-(k-1) generator to minus the
    new degree-k generator; projection o inclusion is the identity.
    """
    if not 1 <= k <= x.top:
        raise ValidationError(f"Padding degree {k} must lie in 1..{x.top}", "window")
    a = x.algebra
    fibers = tuple(f + 1 if s in (k, k - 1) else f for s, f in enumerate(x.fiberDims))
    differentials = []
    for s in range(1, x.top + 1):
        entries = dict(x.d(s).entries)
        if s == k:
            entries[(x.fiber(k), x.fiber(k - 1))] = a.unit
        differentials.append(AMatrix(a, fibers[s], fibers[s - 1], entries))
    padded = FreeAComplex(a, fibers, tuple(differentials), x.bounded, f"{x.name}+cone")

    inclusion = ChainMap(
        x, padded, 0, tuple(AMatrix(a, x.fiber(s), fibers[s], {(i, i): a.unit for i in range(x.fiber(s))}) for s in range(x.top + 1))
    )
    projection = ChainMap(
        padded, x, 0, tuple(AMatrix(a, fibers[s], x.fiber(s), {(i, i): a.unit for i in range(x.fiber(s))}) for s in range(x.top + 1))
    )
    homotopyComponents = []
    for s in range(x.top):
        entries = {}
        if s == k - 1:
            entries[(x.fiber(k - 1), x.fiber(k))] = scaleVector(-ONE, a.unit)
        homotopyComponents.append(AMatrix(a, fibers[s], fibers[s + 1], entries))
    homotopy = ChainMap(padded, padded, 1, tuple(homotopyComponents))

    if isChainMap(inclusion, x.top) is not None or isChainMap(projection, x.top) is not None:
        raise ResolutionError("Padding maps are not chain maps", k)
    if homotopyDefect(inclusion.then(projection), ChainMap(x, x, 1, ()), x.top) is not None:
        raise ResolutionError("projection o inclusion is not the identity", k)
    return Padding(padded, inclusion, projection, homotopy)


def extendByZero(x: FreeAComplex, top: int) -> FreeAComplex:
    """A bounded complex followed by zero modules up to degree `top`, viewed as a truncation."""
    if not x.bounded or top <= x.top:
        return x
    a = x.algebra
    fibers = x.fiberDims + (0,) * (top - x.top)
    differentials = x.differentials + tuple(AMatrix.zero(a, fibers[s], fibers[s - 1]) for s in range(x.top + 1, top + 1))
    return FreeAComplex(a, fibers, differentials, False, x.name)
