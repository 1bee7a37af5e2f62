"""Result records shared by the computations and the reports."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from utils.helpers import RationalHelper

Vector = tuple[Fraction, ...]


class ResolutionKind(Enum):
    """Which resolution of K over B feeds the Hecke computation."""

    BAR = "bar"
    CE = "ce"
    FILE = "file"


class ProductConvention(Enum):
    """Which multiplication a table stores."""

    COMPOSITION = "composition"
    OPPOSITE = "opposite"
    DIRECT = "direct"


def _vectors(vectors: Any) -> list[list[str]]:
    return [RationalHelper.formatVector(v) for v in vectors]


def _dims(dims: Mapping[int, int]) -> dict[str, int]:
    return {str(n): dims[n] for n in sorted(dims)}


@dataclass(frozen=True)
class TorReport:
    """Dims of Tor_n^B(A, K) for n = 0..len(dims)-1."""

    dims: tuple[int, ...]

    @property
    def vanishing(self) -> bool:
        return all(d == 0 for d in self.dims[1:])

    def toDict(self) -> dict[str, Any]:
        return {"dims": list(self.dims), "vanishing": self.vanishing}


@dataclass(frozen=True)
class ExtReport:
    """Dims of an Ext group sequence."""

    name: str
    dims: tuple[int, ...]
    advisory: bool = False

    def toDict(self) -> dict[str, Any]:
        return {"name": self.name, "dims": list(self.dims), "advisory": self.advisory}


@dataclass(frozen=True)
class ResolutionReport:
    """Outcome of checking that a complex resolves K over B."""

    passed: bool
    homologyDims: tuple[int, ...]
    failedDegree: int | None = None
    reason: str | None = None

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "homologyDims": list(self.homologyDims),
            "failedDegree": self.failedDegree,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class TransportReport:
    """Comparison of two cohomology algebras along a homotopy equivalence."""

    degrees: tuple[int, ...]
    sourceDims: Mapping[int, int]
    targetDims: Mapping[int, int]
    transitions: Mapping[int, tuple[Vector, ...]]
    invertible: bool
    multiplicative: bool

    @property
    def passed(self) -> bool:
        return self.invertible and self.multiplicative and dict(self.sourceDims) == dict(self.targetDims)

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "degrees": list(self.degrees),
            "sourceDims": _dims(self.sourceDims),
            "targetDims": _dims(self.targetDims),
            "invertible": self.invertible,
            "multiplicative": self.multiplicative,
            "transitions": {str(n): _vectors(self.transitions[n]) for n in sorted(self.transitions)},
        }


@dataclass(frozen=True)
class HeckeResult:
    """Hk^*(A, B) as computed from one resolution and window."""

    table: Any
    resolutionUsed: ResolutionKind
    window: int
    stability: Mapping[int, bool]
    torVanishing: TorReport | None = None
    advisory: bool = False
    endComplex: Any = field(default=None, compare=False, repr=False)

    @property
    def dims(self) -> dict[int, int]:
        return dict(self.table.dims)

    @property
    def stable(self) -> bool:
        return all(self.stability.values())

    def toDict(self) -> dict[str, Any]:
        return {
            "resolution": self.resolutionUsed.value,
            "window": self.window,
            "stable": self.stable,
            "advisory": self.advisory,
            "tor": self.torVanishing.toDict() if self.torVanishing else None,
            "table": self.table.toDict(),
            "oppositeTable": self.table.opposite().toDict(),
        }


@dataclass(frozen=True)
class DirectHk0:
    """Hom_B(K, A (x)_B K) with the product [a1][a2] = [a1 a2]."""

    table: Any
    invariantBasis: tuple[Vector, ...]
    inducedDim: int
    unitClass: Vector
    shiftChecks: int

    @property
    def dim(self) -> int:
        return len(self.invariantBasis)

    def toDict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "inducedDim": self.inducedDim,
            "invariantBasis": _vectors(self.invariantBasis),
            "unitClass": RationalHelper.formatVector(self.unitClass),
            "representativeShiftChecks": self.shiftChecks,
            "table": self.table.toDict(),
        }


@dataclass(frozen=True)
class Hk0Comparison:
    """Degree-0 Hecke classes against the direct model through f -> [f_00]."""

    isomorphic: bool
    antiMultiplicative: bool
    unitPreserved: bool
    mapMatrix: tuple[Vector, ...]

    @property
    def passed(self) -> bool:
        return self.isomorphic and self.antiMultiplicative and self.unitPreserved

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "isomorphic": self.isomorphic,
            "antiMultiplicative": self.antiMultiplicative,
            "unitPreserved": self.unitPreserved,
            "mapColumns": _vectors(self.mapMatrix),
        }


@dataclass(frozen=True)
class FreenessReport:
    """Whether n_i * b_j is a basis of A."""

    passed: bool
    rank: int
    expected: int
    reason: str | None = None

    def toDict(self) -> dict[str, Any]:
        return {"passed": self.passed, "rank": self.rank, "expected": self.expected, "reason": self.reason}


@dataclass(frozen=True)
class BarModelReport:
    """Literal comparison of the two bar-model constructions."""

    passed: bool
    window: int
    fiberDims: tuple[int, ...]
    mismatchDegree: int | None = None

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "window": self.window,
            "fiberDims": list(self.fiberDims),
            "mismatchDegree": self.mismatchDegree,
        }


@dataclass(frozen=True)
class StructureReport:
    """Hecke dims, self-Ext of A (x)_B K and Ext_B(K, A (x)_B K) side by side."""

    heckeDims: tuple[int, ...]
    selfExtDims: tuple[int, ...]
    extBDims: tuple[int, ...]
    tor: TorReport
    negativeDegreesVanish: bool
    hk0: Hk0Comparison
    negativeDegrees: tuple[int, ...] = (-1,)

    @property
    def sequencesAgree(self) -> bool:
        return self.heckeDims == self.selfExtDims == self.extBDims

    @property
    def passed(self) -> bool:
        if not self.tor.vanishing:
            return True
        return self.sequencesAgree and self.negativeDegreesVanish and self.hk0.passed

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "advisory": not self.tor.vanishing,
            "heckeDims": list(self.heckeDims),
            "selfExtDims": list(self.selfExtDims),
            "extBDims": list(self.extBDims),
            "sequencesAgree": self.sequencesAgree,
            "negativeDegrees": list(self.negativeDegrees),
            "negativeDegreesVanish": self.negativeDegreesVanish,
            "tor": self.tor.toDict(),
            "hk0": self.hk0.toDict(),
        }


@dataclass(frozen=True)
class ObservablesReport:
    """The observable subalgebra of A and its operators on V^B."""

    observables: Any
    invariants: Any
    operators: tuple[Any, ...]
    closed: bool

    def toDict(self) -> dict[str, Any]:
        return {
            "observablesDim": self.observables.dim,
            "observablesBasis": _vectors(self.observables.basis),
            "invariantsDim": self.invariants.dim,
            "invariantsBasis": _vectors(self.invariants.basis),
            "closedUnderProducts": self.closed,
            "operators": [RationalHelper.formatMatrix(m.toDense()) for m in self.operators],
        }


@dataclass(frozen=True)
class UniversalReductionReport:
    """Hk^0 operators on V^B against the observable operators."""

    passed: bool
    heckeOperatorDim: int
    observableOperatorDim: int
    invariantsDim: int
    advisory: bool = False

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "heckeOperatorDim": self.heckeOperatorDim,
            "observableOperatorDim": self.observableOperatorDim,
            "invariantsDim": self.invariantsDim,
            "advisory": self.advisory,
        }


@dataclass(frozen=True)
class BrstDifferentialReport:
    """The odd element in both normalizations and how they compare."""

    wedgeElement: Any
    literalElement: Any
    quadraticScale: Fraction | None
    wedgeSquaresToZero: bool
    literalSquaresToZero: bool
    matchesCeDifferential: bool

    def toDict(self) -> dict[str, Any]:
        return {
            "wedgeElement": self.wedgeElement.toDict(),
            "literalElement": self.literalElement.toDict(),
            "quadraticScale": (
                RationalHelper.formatRational(self.quadraticScale) if self.quadraticScale is not None else None
            ),
            "wedgeSquaresToZero": self.wedgeSquaresToZero,
            "literalSquaresToZero": self.literalSquaresToZero,
            "matchesCeDifferential": self.matchesCeDifferential,
        }


@dataclass(frozen=True)
class BrstIsomorphismReport:
    """Checks of the identification of A^opp (x) C with End_A(A (x) wedge g)."""

    gradingMatches: bool
    bijective: bool
    intertwines: bool
    multiplicative: bool
    dimsMatch: bool
    brstDims: Mapping[int, int]
    endDims: Mapping[int, int]
    pairsChecked: int
    firstFailure: str | None = None

    @property
    def passed(self) -> bool:
        return self.gradingMatches and self.bijective and self.intertwines and self.multiplicative and self.dimsMatch

    def toDict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "gradingMatches": self.gradingMatches,
            "bijective": self.bijective,
            "intertwines": self.intertwines,
            "multiplicative": self.multiplicative,
            "dimsMatch": self.dimsMatch,
            "brstCohomologyDims": _dims(self.brstDims),
            "endCohomologyDims": _dims(self.endDims),
            "pairsChecked": self.pairsChecked,
            "firstFailure": self.firstFailure,
        }
