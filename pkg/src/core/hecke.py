"""Hk^*(A, B), its direct degree-0 model, Tor and Ext, and the structure theorem checks."""

import random
from collections.abc import Sequence
from fractions import Fraction

from core.algebra import AugmentedSubalgebra, FinAlgebra, LeftModule, LieAction, inducedModule, invariants
from core.complexes import (
    CochainComplex,
    EndComplex,
    FreeAComplex,
    GradedAlgebraTable,
    cohomology,
    cohomologyAlgebra,
    homology,
)
from core.linalg import SparseMatrix, Vector, addVectors, denseRank, linearCombination, rank
from core.models import (
    BarModelReport,
    DirectHk0,
    ExtReport,
    FreenessReport,
    HeckeResult,
    Hk0Comparison,
    ProductConvention,
    ResolutionKind,
    StructureReport,
    TorReport,
)
from core.reduction import homIntoModule
from core.resolutions import (
    ResolutionData,
    barResolution,
    ceComplex,
    fileResolution,
    induceComplex,
    inducedBarComplex,
    tensorDownToK,
    twoSidedBarComplex,
    validateResolution,
)
from utils.exceptions import (
    ConsistencyError,
    NotASubspaceError,
    ResolutionError,
    UnstableTruncationError,
    ValidationError,
)
from utils.helpers import TimeHelper
from utils.logger import logger


def sourceComplex(
    a: FinAlgebra,
    b: AugmentedSubalgebra,
    kind: ResolutionKind,
    top: int,
    action: LieAction | None = None,
    resolutionData: ResolutionData | None = None,
) -> FreeAComplex:
    """
    A (x)_B X for the chosen resolution X, built to degree `top`.

    Raises:
        ValidationError: If the resolution needs data that was not given
        ResolutionError: If a file resolution fails validation
    """
    if kind is ResolutionKind.BAR:
        return inducedBarComplex(a, b, top)
    if kind is ResolutionKind.CE:
        if action is None:
            raise ValidationError("The Chevalley-Eilenberg route needs a Lie action", "resolution")
        if action.target != a:
            raise ValidationError("The Lie action lands in a different algebra", "resolution")
        return ceComplex(action)
    if resolutionData is None:
        raise ValidationError("A file resolution needs resolution data", "resolution")
    x = fileResolution(b, resolutionData, top)
    report = validateResolution(x, b, min(top, x.top) if x.bounded else top)
    if not report.passed:
        raise ResolutionError(f"Resolution file rejected: {report.reason}", report.failedDegree or 0)
    return induceComplex(x, b)


def builtTop(window: int, minDegree: int) -> int:
    """Top degree of the resolution behind a window that also reaches down to minDegree."""
    return window + 1 + max(0, -minDegree)


@TimeHelper.measureExecutionTime("heckeAlgebra")
def heckeAlgebra(
    a: FinAlgebra,
    b: AugmentedSubalgebra,
    kind: ResolutionKind = ResolutionKind.BAR,
    window: int = 4,
    maxDegree: int = 2,
    minDegree: int = 0,
    passes: int = 2,
    shifts: int = 20,
    seed: int = 0,
    strict: bool = False,
    action: LieAction | None = None,
    resolutionData: ResolutionData | None = None,
) -> HeckeResult:
    """
    Compute Hk^n(A, B) = H^n(End_A(A (x)_B X)) for minDegree <= n <= maxDegree.

    The End complex is computed for windows window, window+1, ...; a degree is
    stable when it is honest in every pass and its dimension never changes.

    Args:
        a: The algebra
        b: Augmented subalgebra of a
        kind: Which resolution of K over B to use
        window: Smallest truncation window
        maxDegree: Highest degree requested
        minDegree: Lowest degree requested (may be negative)
        passes: Number of windows compared for stability
        shifts: Representative-perturbation checks per table
        seed: Seed of the perturbation generator
        strict: Raise instead of flagging unstable degrees
        action: Lie action for the Chevalley-Eilenberg route
        resolutionData: Parsed resolution file for the file route

    Returns:
        HeckeResult with the table of the largest window and per-degree stability

    Raises:
        UnstableTruncationError: In strict mode, if a requested degree is unstable
    """
    if window < 1:
        raise ValidationError("The truncation window must be at least 1", "window")
    if minDegree > maxDegree:
        raise ValidationError("minDegree exceeds maxDegree", "degrees")
    requested = list(range(minDegree, maxDegree + 1))
    passes = max(passes, 1)

    history: list[dict[int, int]] = []
    table: GradedAlgebraTable | None = None
    end: EndComplex | None = None
    for p in range(passes):
        current = window + p
        x = sourceComplex(a, b, kind, builtTop(current, minDegree), action, resolutionData)
        end = EndComplex(x, current)
        lo, hi = end.honestDegrees()
        degrees = requested if not end.truncated else [n for n in requested if lo <= n <= hi]
        table = cohomologyAlgebra(end, degrees, shifts, seed, ProductConvention.COMPOSITION.value)
        history.append(dict(table.dims))
        if not end.truncated:
            break

    assert table is not None and end is not None
    stability = {}
    for n in requested:
        seen = [dims.get(n) for dims in history]
        stability[n] = None not in seen and len(set(seen)) == 1
    unstable = [n for n in requested if not stability[n]]
    if unstable:
        message = f"Degrees {unstable} are not stable between windows {window}..{window + passes - 1}; raise -L"
        if strict:
            raise UnstableTruncationError(message, unstable, window)
        logger.warning(message)

    torReport = None
    advisory = False
    if kind is not ResolutionKind.CE:
        torReport = tor(a, b, window)
        advisory = not torReport.vanishing
        if advisory:
            logger.warning(f"Tor^B(A, K) does not vanish: {list(torReport.dims)}; Hecke output is advisory")

    stableTable = GradedAlgebraTable(
        degrees=table.degrees,
        dims=table.dims,
        representatives=table.representatives,
        products=table.products,
        convention=table.convention,
        unitClass=table.unitClass,
        stable={n: stability.get(n, False) for n in table.degrees},
        shiftChecks=table.shiftChecks,
    )
    logger.info(f"Hecke dims {dict(table.dims)} via {kind.value}, window {window}")
    return HeckeResult(stableTable, kind, window, stability, torReport, advisory, end)


def _cohomologyDims(c: CochainComplex, count: int) -> tuple[int, ...]:
    dims = []
    for n in range(count):
        dims.append(cohomology(c, n).dim if n <= c.highestDegree else 0)
    return tuple(dims)


def tor(a: FinAlgebra, b: AugmentedSubalgebra, window: int) -> TorReport:
    """Dims of Tor_n^B(A, K) for n = 0..window-1, from the induced bar complex."""
    x = inducedBarComplex(a, b, window)
    scalar = x.scalarComplex()
    dims = tuple(homology(scalar, n).dim if n <= x.top else 0 for n in range(window))
    logger.debug(f"Tor dims {dims}")
    return TorReport(dims)


def extB(b: AugmentedSubalgebra, v: LeftModule, window: int) -> ExtReport:
    """
    Dims of Ext_B^n(K, V) for n = 0..window-1 through the bar resolution.

    Args:
        b: Augmented subalgebra
        v: Module over B (own basis) or over the parent algebra, then restricted
        window: Number of degrees
    """
    if v.algebra != b.asAlgebra():
        if v.algebra != b.parent:
            raise ValidationError("Module is neither over B nor over its parent", "restriction")
        v = v.restrict(b)
    complex_ = homIntoModule(barResolution(b, window), v)
    return ExtReport(f"Ext_B(K,{v.name})", _cohomologyDims(complex_, window))


def extASelfExt(a: FinAlgebra, b: AugmentedSubalgebra, window: int) -> ExtReport:
    """Dims of Ext_A^n(A (x)_B K, A (x)_B K), advisory unless Tor vanishes."""
    induced = inducedModule(a, b)
    complex_ = homIntoModule(inducedBarComplex(a, b, window), induced.module)
    advisory = not tor(a, b, window).vanishing
    if advisory:
        logger.warning("A (x)_B Bar is not a resolution of A (x)_B K; self-Ext is advisory")
    return ExtReport("Ext_A(A(x)_BK,A(x)_BK)", _cohomologyDims(complex_, window), advisory)


def hk0Direct(a: FinAlgebra, b: AugmentedSubalgebra, shifts: int = 20, seed: int = 0) -> DirectHk0:
    """
    Hom_B(K, A (x)_B K) = (A/J)^B with [a1][a2] = [a1 a2].

    Raises:
        ConsistencyError: If a product leaves the invariants or depends on
            the representatives
    """
    induced = inducedModule(a, b)
    invariant = invariants(induced.module, b)
    basis = invariant.basis
    representatives = [induced.representative(u) for u in basis]

    def productOf(x: Vector, y: Vector) -> Vector:
        try:
            return invariant.coordinates(induced.classOf(a.multiply(x, y)))
        except NotASubspaceError as e:
            raise ConsistencyError("A product of invariant classes is not invariant", "invariant-closure") from e

    products = tuple(tuple(productOf(x, y) for y in representatives) for x in representatives)

    performed = 0
    ideal = induced.ideal.basis
    if basis and ideal:
        rng = random.Random(seed)
        for _ in range(shifts):
            i = rng.randrange(len(basis))
            j = rng.randrange(len(basis))
            x = addVectors(representatives[i], linearCombination(_randomCoefficients(rng, len(ideal)), ideal, a.dim))
            y = addVectors(representatives[j], linearCombination(_randomCoefficients(rng, len(ideal)), ideal, a.dim))
            if productOf(x, y) != products[i][j]:
                raise ConsistencyError(
                    f"Product of invariant classes {i} and {j} depends on representatives", "representative-independence"
                )
            performed += 1

    unitClass = invariant.coordinates(induced.classOf(a.unit))
    table = GradedAlgebraTable(
        degrees=(0,),
        dims={0: len(basis)},
        representatives={0: basis},
        products={(0, 0): products},
        convention=ProductConvention.DIRECT.value,
        unitClass=unitClass,
        stable={0: True},
        shiftChecks=performed,
    )
    return DirectHk0(table, basis, induced.dim, unitClass, performed)


def _randomCoefficients(rng: random.Random, count: int) -> Vector:
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(count))


def compareHk0WithDirect(result: HeckeResult, direct: DirectHk0, a: FinAlgebra, b: AugmentedSubalgebra) -> Hk0Comparison:
    """
    Compare degree-0 Hecke classes with the direct model along f -> [f_00].

    Composition of End cochains becomes the reversed product of the direct
    model: P(f o g) = P(g) P(f).
    """
    table = result.table
    end = result.endComplex
    if 0 not in table.dims or end is None:
        raise ValidationError("The Hecke result carries no degree-0 data", "degrees")
    induced = inducedModule(a, b)
    invariant = invariants(induced.module, b)

    def project(coordinates: Vector) -> Vector:
        f = end.cochain(0, coordinates)
        try:
            return invariant.coordinates(induced.classOf(f.component(0).entry(0, 0)))
        except NotASubspaceError as e:
            raise ConsistencyError("A degree-0 Hecke class does not land in the invariants", "invariant-closure") from e

    columns = tuple(project(r) for r in table.representatives[0])
    size = table.dims[0]
    isomorphic = size == direct.dim and rank(SparseMatrix.fromColumns(columns, direct.dim)) == size

    antiMultiplicative = (0, 0) in table.products
    if antiMultiplicative:
        for i in range(size):
            for j in range(size):
                image = linearCombination(table.product(0, i, 0, j), columns, direct.dim)
                if image != direct.table.multiply(0, columns[j], 0, columns[i]):
                    antiMultiplicative = False

    unitPreserved = (
        table.unitClass is not None and linearCombination(table.unitClass, columns, direct.dim) == direct.unitClass
    )
    return Hk0Comparison(isomorphic, antiMultiplicative, unitPreserved, columns)


def freenessCertificate(a: FinAlgebra, b: AugmentedSubalgebra, candidate: Sequence[Vector]) -> FreenessReport:
    """
    Check that {n_i b_j} is a basis of A, making A a free right B-module.

    Raises:
        ConsistencyError: If sparse and dense elimination disagree on the rank
    """
    products = [a.multiply(n, column) for n in candidate for column in b.inclusion]
    if not products:
        return FreenessReport(False, 0, a.dim, "empty candidate")
    matrix = SparseMatrix.fromColumns(products, a.dim)
    found = rank(matrix)
    if found != denseRank(matrix):
        raise ConsistencyError("Sparse and dense rank disagree", "rank")
    if len(products) != a.dim:
        return FreenessReport(False, found, a.dim, f"{len(products)} products for an algebra of dim {a.dim}")
    if found != a.dim:
        return FreenessReport(False, found, a.dim, "products are linearly dependent")
    return FreenessReport(True, found, a.dim)


def barModelConsistency(a: FinAlgebra, b: AugmentedSubalgebra, window: int) -> BarModelReport:
    """
    Build the induced bar complex along both routes and compare them literally.

    Route one induces the two-sided bar complex of B tensored down to K;
    route two tensors A (x) T(ker eps) (x) B down to K directly. Both must
    coincide with A (x) T(ker eps) as built by inducedBarComplex.
    """
    own = b.selfPair()
    first = induceComplex(tensorDownToK(twoSidedBarComplex(b.asAlgebra(), own, window), own), b)
    second = tensorDownToK(twoSidedBarComplex(a, b, window), b)
    reference = inducedBarComplex(a, b, window)

    for candidate in (first, second):
        if candidate.fiberDims != reference.fiberDims:
            return BarModelReport(False, window, reference.fiberDims, 0)
    for s in range(1, reference.top + 1):
        if not first.d(s) == second.d(s) == reference.d(s):
            return BarModelReport(False, window, reference.fiberDims, s)
    return BarModelReport(True, window, reference.fiberDims)


@TimeHelper.measureExecutionTime("structureTheoremReport")
def structureTheoremReport(
    a: FinAlgebra,
    b: AugmentedSubalgebra,
    window: int = 4,
    maxDegree: int = 2,
    shifts: int = 20,
    seed: int = 0,
    minDegree: int = -1,
) -> StructureReport:
    """
    Hecke dims against self-Ext and Ext_B(K, A (x)_B K), with the degree-0 algebra comparison.

    Every degree from min(minDegree, -1) up to -1 must vanish; a degree the
    windows could not compute counts as not vanishing.
    """
    count = maxDegree + 1
    lowest = min(minDegree, -1)
    result = heckeAlgebra(a, b, ResolutionKind.BAR, max(window, count), maxDegree, lowest, 2, shifts, seed)
    heckeDims = tuple(result.dims.get(n, -1) for n in range(count))
    induced = inducedModule(a, b)
    selfExt = extASelfExt(a, b, count)
    extOverB = extB(b, induced.module, count)
    negativeDegrees = tuple(range(lowest, 0))
    negativeDegreesVanish = all(result.dims.get(n) == 0 for n in negativeDegrees)
    comparison = compareHk0WithDirect(result, hk0Direct(a, b, shifts, seed), a, b)
    return StructureReport(
        heckeDims=heckeDims,
        selfExtDims=selfExt.dims,
        extBDims=extOverB.dims,
        tor=tor(a, b, max(window, count)),
        negativeDegreesVanish=negativeDegreesVanish,
        hk0=comparison,
        negativeDegrees=negativeDegrees,
    )
