"""Module (co)homology over B, the Hecke actions on it, and Dirac reduction."""

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from core.algebra import AugmentedSubalgebra, FinAlgebra, LeftModule, invariants, opposite
from core.complexes import (
    ChainComplex,
    Cochain,
    CochainComplex,
    EndComplex,
    FreeAComplex,
    HomologyGroup,
    cohomology,
    cohomologyGroup,
    homology,
)
from core.linalg import SparseMatrix, Subspace, Vector, addVectors, kernelBasis, zeroVector
from core.models import ObservablesReport, UniversalReductionReport
from core.resolutions import barResolution, inducedBarComplex
from utils.exceptions import (
    ConsistencyError,
    DegreeOutOfRangeError,
    NotASubspaceError,
    ValidationError,
    WindowUnderflowError,
)
from utils.logger import logger


def _blockEntries(entries: dict[tuple[int, int], Fraction], block: SparseMatrix, rowOffset: int, colOffset: int) -> None:
    for r, row in block.rowItems():
        for c, value in row.items():
            key = (rowOffset + r, colOffset + c)
            entries[key] = entries.get(key, Fraction(0)) + value


def homIntoModule(x: FreeAComplex, v: LeftModule) -> CochainComplex:
    """
    Hom_A(X, V) = Hom_K(F_s, V) with (delta phi)_i = sum_j rho(d_ij) phi_j.

    Cochains of degree s are stacked as phi_j in V, index j * dim V + k.
    """
    if v.algebra != x.algebra:
        raise ValidationError("Module and complex are over different algebras", "restriction")
    n = v.dim
    dims = tuple(f * n for f in x.fiberDims)
    differentials = []
    for s in range(x.top):
        d = x.d(s + 1)
        entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in d.entries.items():
            _blockEntries(entries, v.actionOf(value), i * n, j * n)
        differentials.append(SparseMatrix.fromEntries(dims[s + 1], dims[s], entries))
    return CochainComplex(0, dims, tuple(differentials), x.bounded)


def tensorWithModule(x: FreeAComplex, w: LeftModule) -> ChainComplex:
    """
    W (x)_A X for a right A-module W, given as a left module over A^opp.

    d(w (x) phi_i) = sum_j w d_ij (x) phi_j, index j * dim W + k.
    """
    if w.algebra != opposite(x.algebra):
        raise ValidationError("Right module must be given over the opposite algebra", "restriction")
    n = w.dim
    dims = tuple(f * n for f in x.fiberDims)
    differentials = []
    for s in range(1, x.top + 1):
        d = x.d(s)
        entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in d.entries.items():
            _blockEntries(entries, w.actionOf(value), j * n, i * n)
        differentials.append(SparseMatrix.fromEntries(dims[s - 1], dims[s], entries))
    return ChainComplex(dims, tuple(differentials), x.bounded)


@dataclass(frozen=True)
class ModuleCohomology:
    """H^n(V) = Ext_B^n(K, V) computed as H^n(Hom_A(A (x)_B X, V))."""

    source: FreeAComplex = field(repr=False)
    module: LeftModule
    complex: CochainComplex = field(repr=False)
    groups: dict[int, HomologyGroup] = field(repr=False)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.groups[n].dim for n in sorted(self.groups))

    def group(self, n: int) -> HomologyGroup:
        if n not in self.groups:
            raise DegreeOutOfRangeError(f"H^{n}(V) was not computed", n)
        return self.groups[n]

    def toDict(self) -> dict[str, Any]:
        return {"module": self.module.name, "dims": list(self.dims)}


@dataclass(frozen=True)
class ModuleHomology:
    """H_n(W) = Tor_n^B(W, K) computed as H_n(W (x)_A A (x)_B X)."""

    source: FreeAComplex = field(repr=False)
    module: LeftModule
    complex: ChainComplex = field(repr=False)
    groups: dict[int, HomologyGroup] = field(repr=False)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.groups[n].dim for n in sorted(self.groups))

    def group(self, n: int) -> HomologyGroup:
        if n not in self.groups:
            raise DegreeOutOfRangeError(f"H_{n}(W) was not computed", n)
        return self.groups[n]

    def toDict(self) -> dict[str, Any]:
        return {"module": self.module.name, "dims": list(self.dims)}


def _resolutionFor(algebra: FinAlgebra, b: AugmentedSubalgebra, window: int) -> FreeAComplex:
    if algebra == b.parent:
        return inducedBarComplex(b.parent, b, window)
    if algebra == b.asAlgebra():
        return barResolution(b, window)
    raise ValidationError("Module is neither over B nor over its parent", "restriction")


def moduleCohomology(
    v: LeftModule, b: AugmentedSubalgebra, window: int, source: FreeAComplex | None = None
) -> ModuleCohomology:
    """
    H^n(V) for n = 0..window-1.

    Args:
        v: Module over the parent algebra (or over B itself)
        b: Augmented subalgebra
        window: Number of degrees
        source: A (x)_B X to use, so Hecke cochains on it can act

    Returns:
        ModuleCohomology with the complex and its groups
    """
    x = source if source is not None else _resolutionFor(v.algebra, b, window)
    complex_ = homIntoModule(x, v)
    groups = {}
    for n in range(window):
        if n > complex_.highestDegree:
            groups[n] = cohomology(CochainComplex(n, (0,), ()), n)
        else:
            groups[n] = cohomology(complex_, n)
    logger.debug(f"H^*({v.name}) dims {[groups[n].dim for n in range(window)]}")
    return ModuleCohomology(x, v, complex_, groups)


def moduleHomology(
    w: LeftModule, b: AugmentedSubalgebra, window: int, source: FreeAComplex | None = None
) -> ModuleHomology:
    """H_n(W) for n = 0..window-1; W is a right module given over the opposite algebra."""
    if source is None:
        own = opposite(w.algebra)
        source = _resolutionFor(own, b, window)
    complex_ = tensorWithModule(source, w)
    groups = {}
    for n in range(window):
        if n > complex_.top:
            groups[n] = homology(ChainComplex((0,), ()), 0)
        else:
            groups[n] = homology(complex_, n)
    return ModuleHomology(source, w, complex_, groups)


# --------------------------------------------------------------------------
# Hecke actions
# --------------------------------------------------------------------------


def _checkSameSource(end: EndComplex, source: FreeAComplex) -> None:
    if end.source is not source:
        raise ValidationError("Hecke cochain and module complex use different resolutions", "resolution")


def composeWithCochain(phi: Sequence[Fraction], n: int, f: Cochain, cohomology_: ModuleCohomology) -> Vector:
    """phi o f as a cochain of degree n + m: (phi o f)_i = sum_j rho(f_ij) phi_j."""
    end = f.complex
    _checkSameSource(end, cohomology_.source)
    m = f.degree
    target = n + m
    if target > end.window:
        raise WindowUnderflowError(f"phi o f needs the component at degree {target}, beyond window {end.window}", target)
    v = cohomology_.module
    size = v.dim
    x = cohomology_.source
    result = zeroVector(x.fiber(target) * size)
    if target < 0 or target not in f.components:
        return result
    component = f.component(target)
    values = list(result)
    for (i, j), entry in component.entries.items():
        image = v.act(entry, phi[j * size : (j + 1) * size])
        for k, c in enumerate(image):
            values[i * size + k] += c
    return tuple(values)


def actOnCohomology(
    phi: Sequence[Fraction],
    n: int,
    f: Cochain,
    cohomology_: ModuleCohomology,
    shifts: int = 0,
    seed: int = 0,
) -> Vector:
    """
    Class of phi o f in H^{n+m}(V), the right action of Hk^m on H^n(V).

    Args:
        phi: Cocycle of degree n in Hom_A(A (x)_B X, V)
        n: Degree of phi
        f: Closed cochain of degree m in the End complex of the same source
        cohomology_: Module cohomology built on that source
        shifts: Random coboundary perturbations to check representative independence
        seed: Seed for the perturbations

    Returns:
        Coordinates of the class in H^{n+m}(V)

    Raises:
        WindowUnderflowError: If n + m lies beyond the End window
        ConsistencyError: If phi or f is not closed, or the class depends on
            the representatives
    """
    m = f.degree
    if not f.isClosed():
        raise ConsistencyError("The Hecke cochain is not closed", "closed")
    if any(cohomology_.complex.delta(n).applyTo(phi)):
        raise ConsistencyError("phi is not a cocycle", "closed")
    target = cohomology_.group(n + m)
    value = target.classOf(composeWithCochain(phi, n, f, cohomology_))
    if shifts:
        _checkCohomologyAction(phi, n, f, cohomology_, value, shifts, seed)
    return value


def _randomVector(rng: random.Random, length: int) -> Vector:
    return tuple(Fraction(rng.randint(-2, 2)) for _ in range(length))


def _checkCohomologyAction(
    phi: Sequence[Fraction], n: int, f: Cochain, cohomology_: ModuleCohomology, value: Vector, shifts: int, seed: int
) -> None:
    end = f.complex
    m = f.degree
    rng = random.Random(seed)
    target = cohomology_.group(n + m)
    for _ in range(shifts):
        shiftedPhi = tuple(phi)
        below = cohomology_.complex.dim(n - 1)
        if below:
            shiftedPhi = addVectors(phi, cohomology_.complex.delta(n - 1).applyTo(_randomVector(rng, below)))
        shiftedF = f
        if end.degreeDim(m - 1) and m - 1 + n <= end.window:
            g = _randomVector(rng, end.degreeDim(m - 1))
            shiftedF = f + end.cochain(m, end.differentialMatrix(m - 1).applyTo(g))
        if target.classOf(composeWithCochain(shiftedPhi, n, shiftedF, cohomology_)) != value:
            raise ConsistencyError("The Hecke action depends on the representatives", "representative-independence")


def tensorWithCochain(f: Cochain, cycle: Sequence[Fraction], k: int, homology_: ModuleHomology) -> Vector:
    """(id_W (x) f)(cycle) in W (x) X_{k-m}."""
    end = f.complex
    _checkSameSource(end, homology_.source)
    if k > end.window:
        raise WindowUnderflowError(f"f is only known on source degrees up to {end.window}", k)
    m = f.degree
    w = homology_.module
    size = w.dim
    x = homology_.source
    result = list(zeroVector(x.fiber(k - m) * size))
    if k - m < 0 or k not in f.components:
        return tuple(result)
    for (i, j), entry in f.component(k).entries.items():
        image = w.act(entry, cycle[i * size : (i + 1) * size])
        for l, c in enumerate(image):
            result[j * size + l] += c
    return tuple(result)


def actOnHomology(
    f: Cochain, cycle: Sequence[Fraction], k: int, homology_: ModuleHomology, shifts: int = 0, seed: int = 0
) -> Vector:
    """
    Class of (id (x) f)(cycle) in H_{k-m}(W), the left action of Hk^m on H_k(W).

    A class landing in negative degree is zero in the empty group, returned
    as the empty tuple.
    """
    m = f.degree
    if k - m < 0:
        return ()
    if not f.isClosed():
        raise ConsistencyError("The Hecke cochain is not closed", "closed")
    if any(homology_.complex.d(k).applyTo(cycle)):
        raise ConsistencyError("The chain is not a cycle", "closed")
    target = homology_.group(k - m)
    value = target.classOf(tensorWithCochain(f, cycle, k, homology_))
    if shifts:
        end = f.complex
        rng = random.Random(seed)
        for _ in range(shifts):
            shiftedCycle = tuple(cycle)
            above = homology_.complex.dims[k + 1] if k + 1 <= homology_.complex.top else 0
            if above:
                shiftedCycle = addVectors(cycle, homology_.complex.d(k + 1).applyTo(_randomVector(rng, above)))
            shiftedF = f
            if end.degreeDim(m - 1) and k <= end.window:
                g = _randomVector(rng, end.degreeDim(m - 1))
                shiftedF = f + end.cochain(m, end.differentialMatrix(m - 1).applyTo(g))
            if target.classOf(tensorWithCochain(shiftedF, shiftedCycle, k, homology_)) != value:
                raise ConsistencyError("The Hecke action depends on the representatives", "representative-independence")
    return value


def actionMatrix(f: Cochain, n: int, cohomology_: ModuleCohomology) -> SparseMatrix:
    """Matrix of the right action of f on H^n(V), columns indexed by H^n representatives."""
    source = cohomology_.group(n)
    target = cohomology_.group(n + f.degree)
    columns = [actOnCohomology(phi, n, f, cohomology_) for phi in source.representatives]
    return SparseMatrix.fromColumns(columns, target.dim)


# --------------------------------------------------------------------------
# Dirac reduction
# --------------------------------------------------------------------------


def diracObservables(a: FinAlgebra, b: AugmentedSubalgebra, v: LeftModule) -> ObservablesReport:
    """
    A^B_V = { a : [b, a] v = 0 for all b in B, v in V^B } and its operators on V^B.

    Raises:
        ConsistencyError: If an observable does not preserve V^B
    """
    if v.algebra != a or b.parent != a:
        raise ValidationError("Module, subalgebra and algebra do not match", "restriction")
    fixed = invariants(v, b)
    columns = []
    for i in range(a.dim):
        e = a.basisVector(i)
        stacked: list[Fraction] = []
        for column in b.inclusion:
            commutator = v.actionOf(a.multiply(column, e)) - v.actionOf(a.multiply(e, column))
            for u in fixed.basis:
                stacked.extend(commutator.applyTo(u))
        columns.append(tuple(stacked))
    height = len(b.inclusion) * fixed.dim * v.dim
    observables = kernelBasis(SparseMatrix.fromColumns(columns, height)) if height else Subspace.full(a.dim)

    closed = all(observables.contains(a.multiply(x, y)) for x in observables.basis for y in observables.basis)

    operators = []
    for x in observables.basis:
        try:
            images = [fixed.coordinates(v.act(x, u)) for u in fixed.basis]
        except NotASubspaceError as e:
            raise ConsistencyError("An observable does not preserve the invariants", "observable-invariance") from e
        operators.append(SparseMatrix.fromColumns(images, fixed.dim))
    logger.debug(f"Observables: dim {observables.dim} of {a.dim}, invariants dim {fixed.dim}")
    return ObservablesReport(observables, fixed, tuple(operators), closed)


def _flattenedImages(images: Sequence[Vector]) -> Vector:
    return tuple(c for image in images for c in image)


def universalReductionCheck(a: FinAlgebra, b: AugmentedSubalgebra, v: LeftModule) -> UniversalReductionReport:
    """
    Check that every Hk^0 operator on H^0(V) = V^B is an observable operator.

    Operators are compared as linear maps V^B -> V, flattened over the
    canonical basis of the invariants.
    """
    x = inducedBarComplex(a, b, 2)
    end = EndComplex(x, 1)
    hk0 = cohomologyGroup(end, 0)
    moduleSide = moduleCohomology(v, b, 1, source=x)
    degreeZero = moduleSide.group(0)

    heckeOperators = []
    for representative in hk0.representatives:
        f = end.cochain(0, representative)
        images = [
            degreeZero.quotient.representative(actOnCohomology(phi, 0, f, moduleSide))
            for phi in degreeZero.representatives
        ]
        heckeOperators.append(_flattenedImages(images))

    fixed = invariants(v, b)
    if fixed.dim != degreeZero.dim or not fixed.containsSubspace(degreeZero.cycles):
        raise ConsistencyError("H^0(V) differs from the invariants", "invariants")
    observables = diracObservables(a, b, v).observables
    observableOperators = [_flattenedImages([v.act(y, u) for u in degreeZero.representatives]) for y in observables.basis]

    length = degreeZero.dim * v.dim
    heckeSpan = Subspace.spannedBy(heckeOperators, length)
    observableSpan = Subspace.spannedBy(observableOperators, length)
    advisory = homology(x.scalarComplex(), 1).dim != 0
    passed = observableSpan.containsSubspace(heckeSpan)
    if not passed:
        logger.warning("Some Hk^0 operator on V^B is not an observable operator")
    return UniversalReductionReport(passed, heckeSpan.dim, observableSpan.dim, fixed.dim, advisory)
