"""Engine service manager: runs commands against a loaded problem."""

from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from config.settings import settings
from core.algebra import AugmentedSubalgebra, FinAlgebra, inducedModule, opposite
from core.brst import brstIsomorphismCheck, brstSummary
from core.complexes import EndComplex, chainMapTransport, cohomologyAlgebra
from core.hecke import (
    barModelConsistency,
    builtTop,
    compareHk0WithDirect,
    extASelfExt,
    extB,
    freenessCertificate,
    heckeAlgebra,
    hk0Direct,
    sourceComplex,
    structureTheoremReport,
    tor,
)
from core.linalg import SparseMatrix, Vector, linearCombination, unitVector
from core.models import DirectHk0, ResolutionKind
from core.reduction import (
    actionMatrix,
    actOnHomology,
    diracObservables,
    moduleCohomology,
    moduleHomology,
    universalReductionCheck,
)
from core.resolutions import (
    ResolutionData,
    barResolution,
    comparisonMaps,
    extendByZero,
    fileResolution,
    induceComparison,
    induceComplex,
    padWithContractible,
    validateResolution,
)
from utils.exceptions import HeckeEngineError, ValidationError
from utils.helpers import RationalHelper, TimeHelper
from utils.logger import logger
from utils.validators import FlagValidator

from .export_service import ExportService
from .input_service import InputService, Problem

EXIT_OK = 0
EXIT_ENGINE_ERROR = 1
EXIT_INVALID = 2
EXIT_UNSTABLE = 3
EXIT_CHECK_FAILED = 4

COMMANDS = (
    "hecke",
    "hk0",
    "ext",
    "tor",
    "free-cert",
    "thm3",
    "reduce",
    "act",
    "observables",
    "brst",
    "structure",
    "validate",
    "transport",
)


@dataclass
class RunOptions:
    """Flags of one command run; None falls back to the settings."""

    inputPath: Path
    window: int | None = None
    maxDegree: int | None = None
    minDegree: int = 0
    passes: int | None = None
    resolution: str = "bar"
    module: str | None = None
    candidates: list[str] = field(default_factory=list)
    homology: bool = False
    allowUnstable: bool = False
    padDegree: int | None = None
    shifts: int | None = None
    seed: int | None = None

    @property
    def effectiveWindow(self) -> int:
        return FlagValidator.validateWindow(self.window if self.window is not None else settings.computation.truncation)

    @property
    def effectiveMaxDegree(self) -> int:
        return self.maxDegree if self.maxDegree is not None else settings.computation.maxDegree

    @property
    def effectivePasses(self) -> int:
        return FlagValidator.validatePasses(self.passes if self.passes is not None else settings.computation.stabilityPasses)

    @property
    def effectiveShifts(self) -> int:
        return self.shifts if self.shifts is not None else settings.computation.representativeShifts

    @property
    def effectiveSeed(self) -> int:
        return self.seed if self.seed is not None else settings.computation.randomSeed


@dataclass(frozen=True)
class CommandResult:
    """A rendered-ready report and the exit code it implies."""

    command: str
    report: dict[str, Any]
    exitCode: int = EXIT_OK


def _exitFor(report: dict[str, Any]) -> int:
    return EXIT_CHECK_FAILED if report.get("passed") is False else EXIT_OK


def _matrixReport(m: SparseMatrix) -> list[list[str]]:
    return RationalHelper.formatMatrix(m.toDense())


class EngineServices:
    """Central manager for the engine's services."""

    def __init__(self) -> None:
        """Create the manager; services are built by initialize()."""
        self._initialized = False
        self.inputService: InputService | None = None
        self.exportService: ExportService | None = None
        self._handlers: dict[str, Callable[[Problem, RunOptions], CommandResult]] = {
            "hecke": self._runHecke,
            "hk0": self._runHk0,
            "ext": self._runExt,
            "tor": self._runTor,
            "free-cert": self._runFreeCert,
            "thm3": self._runBarModels,
            "reduce": self._runReduce,
            "act": self._runAct,
            "observables": self._runObservables,
            "brst": self._runBrst,
            "structure": self._runStructure,
            "validate": self._runValidate,
            "transport": self._runTransport,
        }
        logger.debug("Engine services manager created")

    def initialize(self) -> None:
        """Initialize all services."""
        if self._initialized:
            logger.warning("Services already initialized")
            return

        try:
            self.inputService = InputService()
            self.exportService = ExportService()
            self._initialized = True
            logger.info("Engine services initialized")

        except Exception as e:
            logger.error(f"Failed to initialize services: {e}")
            raise

    def shutdown(self) -> None:
        """Release the services."""
        if not self._initialized:
            return
        self.inputService = None
        self.exportService = None
        self._initialized = False
        logger.info("Engine services shutdown complete")

    def getServiceStatus(self) -> dict[str, Any]:
        return {
            "initialized": self._initialized,
            "input_service": self.inputService is not None,
            "export_service": self.exportService is not None,
            "commands": list(COMMANDS),
        }

    def run(self, command: str, options: RunOptions) -> CommandResult:
        """
        Load the problem named by the options and run one command on it.

        Args:
            command: One of COMMANDS
            options: Flags of the run

        Returns:
            CommandResult with the report dictionary and its exit code

        Raises:
            HeckeEngineError: Parse, validation or computation failures
        """
        if not self._initialized or self.inputService is None:
            raise RuntimeError("Services not initialized")
        if command not in self._handlers:
            raise ValidationError(f"Unknown command {command!r}", "command")

        problem = self.inputService.loadProblem(options.inputPath)
        logger.info(f"Running {command} on {options.inputPath}")
        timed = TimeHelper.measureExecutionTime(command)(self._handlers[command])
        return timed(problem, options)

    def render(self, result: CommandResult, format: str) -> str:
        if self.exportService is None:
            raise RuntimeError("Services not initialized")
        return self.exportService.render(result.command, result.report, FlagValidator.validateFormat(format))

    def export(self, result: CommandResult, filePath: Path) -> None:
        if self.exportService is None:
            raise RuntimeError("Services not initialized")
        self.exportService.exportReport(result.command, result.report, filePath)

    # ------------------------------------------------------------------
    # Resolution flags
    # ------------------------------------------------------------------

    def _resolutionChoice(self, options: RunOptions) -> tuple[ResolutionKind, ResolutionData | None]:
        route, path = FlagValidator.parseResolution(options.resolution)
        if route == "bar":
            return ResolutionKind.BAR, None
        if route == "ce":
            return ResolutionKind.CE, None
        assert path is not None and self.inputService is not None
        return ResolutionKind.FILE, self.inputService.loadResolution(path)

    def _requireResolutionFile(self, options: RunOptions) -> ResolutionData:
        kind, data = self._resolutionChoice(options)
        if kind is not ResolutionKind.FILE or data is None:
            raise ValidationError("This command needs --resolution file:<path>", "resolution")
        return data

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def _runHecke(self, problem: Problem, options: RunOptions) -> CommandResult:
        b = problem.requireSubalgebra()
        kind, data = self._resolutionChoice(options)
        minDegree, maxDegree = FlagValidator.validateDegrees(options.minDegree, options.effectiveMaxDegree)
        result = heckeAlgebra(
            problem.algebra,
            b,
            kind,
            options.effectiveWindow,
            maxDegree,
            minDegree,
            options.effectivePasses,
            options.effectiveShifts,
            options.effectiveSeed,
            strict=False,
            action=problem.action if kind is ResolutionKind.CE else None,
            resolutionData=data,
        )
        report = result.toDict()
        report["dims"] = {str(n): d for n, d in sorted(result.dims.items())}
        report["unstableDegrees"] = sorted(n for n, ok in result.stability.items() if not ok)
        exitCode = EXIT_OK if result.stable or options.allowUnstable else EXIT_UNSTABLE
        return CommandResult("hecke", report, exitCode)

    def _runHk0(self, problem: Problem, options: RunOptions) -> CommandResult:
        a, b = problem.algebra, problem.requireSubalgebra()
        shifts, seed = options.effectiveShifts, options.effectiveSeed
        result = heckeAlgebra(a, b, ResolutionKind.BAR, options.effectiveWindow, 0, 0, options.effectivePasses, shifts, seed)
        direct = hk0Direct(a, b, shifts, seed)
        comparison = compareHk0WithDirect(result, direct, a, b)
        report = {
            "passed": comparison.passed,
            "dim": direct.dim,
            "unitClassLabel": self._unitLabel(a, b, direct),
            "hecke": result.toDict(),
            "direct": direct.toDict(),
            "comparison": comparison.toDict(),
        }
        return CommandResult("hk0", report, _exitFor(report))

    @staticmethod
    def _unitLabel(a: FinAlgebra, b: AugmentedSubalgebra, direct: DirectHk0) -> str:
        """The unit class of Hom_B(K, A (x)_B K) written through A's basis labels, e.g. "[E11]"."""
        induced = inducedModule(a, b)
        element = linearCombination(direct.unitClass, direct.invariantBasis, induced.dim)
        terms = []
        for label, c in zip(a.labels, induced.representative(element), strict=True):
            if c:
                terms.append(label if c == 1 else f"{RationalHelper.formatRational(c)}*{label}")
        return "[" + " + ".join(terms) + "]" if terms else "[0]"

    def _runExt(self, problem: Problem, options: RunOptions) -> CommandResult:
        a, b = problem.algebra, problem.requireSubalgebra()
        count = options.effectiveMaxDegree + 1
        report: dict[str, Any] = {}
        if options.module is None:
            report["selfExt"] = extASelfExt(a, b, count).toDict()
            report["extB"] = extB(b, problem.module("induced"), count).toDict()
        else:
            report["extB"] = extB(b, problem.module(options.module), count).toDict()
        return CommandResult("ext", report)

    def _runTor(self, problem: Problem, options: RunOptions) -> CommandResult:
        b = problem.requireSubalgebra()
        report = tor(problem.algebra, b, options.effectiveWindow).toDict()
        return CommandResult("tor", report)

    def _runFreeCert(self, problem: Problem, options: RunOptions) -> CommandResult:
        a, b = problem.algebra, problem.requireSubalgebra()
        if not options.candidates:
            raise ValidationError("free-cert needs at least one --candidate", "candidate")
        candidate = [self._parseCandidate(a, text) for text in options.candidates]
        report = freenessCertificate(a, b, candidate).toDict()
        report["candidate"] = [RationalHelper.formatVector(v) for v in candidate]
        return CommandResult("free-cert", report, _exitFor(report))

    @staticmethod
    def _parseCandidate(a: FinAlgebra, text: str) -> Vector:
        """A basis label, or comma separated rational coordinates."""
        if text in a.labels:
            return unitVector(a.dim, a.labels.index(text))
        values = [part.strip() for part in text.split(",")]
        if len(values) != a.dim:
            raise ValidationError(
                f"--candidate {text!r} is neither a basis label nor {a.dim} coordinates", "candidate"
            )
        return RationalHelper.parseVector(values, a.dim, f"--candidate {text}")

    def _runBarModels(self, problem: Problem, options: RunOptions) -> CommandResult:
        report = barModelConsistency(problem.algebra, problem.requireSubalgebra(), options.effectiveWindow).toDict()
        return CommandResult("thm3", report, _exitFor(report))

    def _runReduce(self, problem: Problem, options: RunOptions) -> CommandResult:
        a, b = problem.algebra, problem.requireSubalgebra()
        v = problem.module(options.module or "induced")
        report = universalReductionCheck(a, b, v).toDict()
        report["module"] = v.name
        return CommandResult("reduce", report, _exitFor(report))

    def _runObservables(self, problem: Problem, options: RunOptions) -> CommandResult:
        a, b = problem.algebra, problem.requireSubalgebra()
        v = problem.module(options.module or "induced")
        report = diracObservables(a, b, v).toDict()
        report["module"] = v.name
        return CommandResult("observables", report)

    def _runAct(self, problem: Problem, options: RunOptions) -> CommandResult:
        """Matrices of every Hecke class of degree <= max-degree acting on H^*(V) or H_*(W)."""
        a, b = problem.algebra, problem.requireSubalgebra()
        window = options.effectiveWindow
        maxDegree = options.effectiveMaxDegree
        if maxDegree >= window:
            raise ValidationError(f"--max-degree {maxDegree} needs a window larger than {window}", "window")
        module = problem.module(options.module or "induced")
        x = sourceComplex(a, b, ResolutionKind.BAR, window + 1)
        end = EndComplex(x, window)
        table = cohomologyAlgebra(end, list(range(maxDegree + 1)), options.effectiveShifts, options.effectiveSeed)
        actions: list[dict[str, Any]] = []

        useHomology = options.homology or module.algebra != a
        if useHomology:
            if module.algebra != opposite(a):
                raise ValidationError("The homology action needs a right A-module", "module")
            homology_ = moduleHomology(module, b, maxDegree + 1, source=x)
            for m in table.degrees:
                for index, representative in enumerate(table.representatives[m]):
                    f = end.cochain(m, representative)
                    for k in range(m, maxDegree + 1):
                        columns = [
                            actOnHomology(f, cycle, k, homology_, options.effectiveShifts, options.effectiveSeed)
                            for cycle in homology_.group(k).representatives
                        ]
                        matrix = SparseMatrix.fromColumns(columns, homology_.group(k - m).dim)
                        actions.append({"class": f"{m}:{index}", "from": k, "to": k - m, "matrix": _matrixReport(matrix)})
            report: dict[str, Any] = {"side": "homology", "moduleDims": list(homology_.dims)}
        else:
            cohomology_ = moduleCohomology(module, b, maxDegree + 1, source=x)
            for m in table.degrees:
                for index, representative in enumerate(table.representatives[m]):
                    f = end.cochain(m, representative)
                    for n in range(0, maxDegree + 1 - m):
                        matrix = actionMatrix(f, n, cohomology_)
                        actions.append({"class": f"{m}:{index}", "from": n, "to": n + m, "matrix": _matrixReport(matrix)})
            report = {"side": "cohomology", "moduleDims": list(cohomology_.dims)}
        report.update({"module": module.name, "heckeDims": [table.dims[n] for n in table.degrees], "actions": actions})
        return CommandResult("act", report)

    def _runBrst(self, problem: Problem, options: RunOptions) -> CommandResult:
        act = problem.requireAction()
        summary = brstSummary(act)
        check = brstIsomorphismCheck(act, settings.computation.maxProductPairs, options.effectiveSeed)
        report = {"passed": check.passed, **summary, "isomorphism": check.toDict()}
        return CommandResult("brst", report, _exitFor(report))

    def _runStructure(self, problem: Problem, options: RunOptions) -> CommandResult:
        report = structureTheoremReport(
            problem.algebra,
            problem.requireSubalgebra(),
            options.effectiveWindow,
            options.effectiveMaxDegree,
            options.effectiveShifts,
            options.effectiveSeed,
            options.minDegree,
        ).toDict()
        return CommandResult("structure", report, _exitFor(report))

    def _runValidate(self, problem: Problem, options: RunOptions) -> CommandResult:
        b = problem.requireSubalgebra()
        data = self._requireResolutionFile(options)
        window = options.effectiveWindow
        x = fileResolution(b, data, window)
        report = validateResolution(x, b, min(window, x.top) if x.bounded else window).toDict()
        report["fiberDims"] = list(x.fiberDims)
        return CommandResult("validate", report, _exitFor(report))

    def _runTransport(self, problem: Problem, options: RunOptions) -> CommandResult:
        """Compare Hecke algebras from the bar resolution and a file (or padded bar) resolution."""
        a, b = problem.algebra, problem.requireSubalgebra()
        window = options.effectiveWindow
        top = builtTop(window, options.minDegree)
        bar = barResolution(b, top)
        if options.padDegree is not None:
            padding = padWithContractible(bar, options.padDegree)
            other = padding.padded
            maps = padding.asComparison()
            label = f"bar+cone({options.padDegree})"
        else:
            data = self._requireResolutionFile(options)
            other = extendByZero(fileResolution(b, data, top), top)
            check = validateResolution(other, b, window)
            if not check.passed:
                raise ValidationError(f"Resolution file rejected: {check.reason}", "resolution")
            maps = comparisonMaps(bar, other)
            label = "file"

        source, target = induceComplex(bar, b), induceComplex(other, b)
        induced = induceComparison(maps, b, source, target)
        minDegree, maxDegree = FlagValidator.validateDegrees(options.minDegree, options.effectiveMaxDegree)
        degrees = list(range(minDegree, maxDegree + 1))
        report = chainMapTransport(
            EndComplex(source, window),
            EndComplex(target, window),
            induced.forward,
            induced.backward,
            induced.sourceHomotopy,
            induced.targetHomotopy,
            degrees,
            options.effectiveShifts,
            options.effectiveSeed,
        ).toDict()
        report["target"] = label
        return CommandResult("transport", report, _exitFor(report))


def exitCodeFor(error: HeckeEngineError) -> int:
    """Exit code of a failed run."""
    if error.errorCode in ("PARSE_ERROR", "VALIDATION_ERROR", "INVALID_LIE_ACTION"):
        return EXIT_INVALID
    if error.errorCode == "UNSTABLE_TRUNCATION":
        return EXIT_UNSTABLE
    return EXIT_ENGINE_ERROR


# Global services instance
services = EngineServices()
