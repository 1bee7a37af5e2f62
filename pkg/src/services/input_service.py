"""Input service: problem documents and resolution files."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from core.algebra import (
    AugmentedSubalgebra,
    FinAlgebra,
    LeftModule,
    LieAction,
    LieAlgebra,
    characterModule,
    inducedModule,
    opposite,
)
from core.linalg import SparseMatrix
from core.resolutions import ResolutionData
from utils.exceptions import ParseError, ValidationError
from utils.helpers import RationalHelper
from utils.logger import logger
from utils.validators import StructureValidator

BUILTIN_MODULES = ("regular", "right-regular", "induced", "K", "K-right")


@dataclass(frozen=True)
class Problem:
    """Everything one input document describes."""

    algebra: FinAlgebra
    subalgebra: AugmentedSubalgebra | None = None
    action: LieAction | None = None
    modules: dict[str, LeftModule] = field(default_factory=dict)
    source: Path | None = None

    def requireSubalgebra(self) -> AugmentedSubalgebra:
        if self.subalgebra is None:
            raise ValidationError("This command needs a 'subalgebra' section", "subalgebra")
        return self.subalgebra

    def requireAction(self) -> LieAction:
        if self.action is None:
            raise ValidationError("This command needs 'lie' and 'action' sections", "action")
        return self.action

    def module(self, name: str) -> LeftModule:
        """
        Look up a named module.

        Built-in names: regular, right-regular, induced (A (x)_B K),
        K (the augmentation module over B) and K-right (K as a right B-module).

        Raises:
            ValidationError: If the name is unknown
        """
        if name in self.modules:
            return self.modules[name]
        a = self.algebra
        if name == "regular":
            return LeftModule.regular(a)
        if name == "right-regular":
            return LeftModule.rightRegular(a)
        b = self.requireSubalgebra()
        if name == "induced":
            return inducedModule(a, b).module
        if name == "K":
            return characterModule(b)
        if name == "K-right":
            return LeftModule.fromCharacter(opposite(b.asAlgebra()), b.eps, "K")
        known = sorted(set(self.modules) | set(BUILTIN_MODULES))
        raise ValidationError(f"Unknown module {name!r}; known modules: {', '.join(known)}", "module")


class InputService:
    """Service turning JSON documents into validated algebraic objects."""

    def __init__(self) -> None:
        """Initialize the input service."""
        logger.info("Input service initialized")

    def loadProblem(self, path: Path) -> Problem:
        """
        Read and validate a problem document.

        Args:
            path: JSON file with an 'algebra' section and optional
                'subalgebra', 'lie', 'action' and 'modules' sections

        Returns:
            The validated Problem

        Raises:
            ParseError: If the file is unreadable or malformed
            ValidationError: If an object violates one of its axioms
        """
        document = self._readJson(path)
        problem = self.parseProblem(document, path)
        logger.info(f"Loaded {problem.algebra.name} (dim {problem.algebra.dim}) from {path}")
        return problem

    def parseProblem(self, document: Any, source: Path | None = None) -> Problem:
        """Build a Problem from an already decoded JSON document."""
        document = StructureValidator.requireMapping(document, "document")
        StructureValidator.requireKeys(document, ("algebra",), "document")
        algebra = self.parseAlgebra(document["algebra"])

        subalgebra = None
        if "subalgebra" in document:
            subalgebra = self.parseSubalgebra(algebra, document["subalgebra"])

        action = None
        if "lie" in document or "action" in document:
            StructureValidator.requireKeys(document, ("lie", "action"), "document")
            lie = self.parseLieAlgebra(document["lie"])
            action = self.parseAction(lie, algebra, document["action"])

        modules = {}
        for name, section in StructureValidator.requireMapping(document.get("modules", {}), "modules").items():
            if name in BUILTIN_MODULES:
                raise ParseError(f"modules.{name}: name clashes with a built-in module", f"modules.{name}")
            modules[name] = self.parseModule(algebra, subalgebra, name, section)

        return Problem(algebra, subalgebra, action, modules, source)

    def parseAlgebra(self, section: Any) -> FinAlgebra:
        """Parse {dim, labels, unit, structure: [[i, j, k, "p/q"], ...]}."""
        section = StructureValidator.requireMapping(section, "algebra")
        StructureValidator.requireKeys(section, ("dim", "unit", "structure"), "algebra")
        dim = StructureValidator.requirePositive(section["dim"], "algebra.dim")
        labels = section.get("labels", [f"e{i}" for i in range(dim)])
        if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
            raise ParseError(f"algebra.labels: expected {dim} strings", "algebra.labels")
        unit = RationalHelper.parseVector(section["unit"], dim, "algebra.unit")
        triples = self._parseTriples(section["structure"], 3, dim, "algebra.structure")
        return FinAlgebra.fromTriples(labels, unit, triples, section.get("name", "A"))

    def parseSubalgebra(self, a: FinAlgebra, section: Any) -> AugmentedSubalgebra:
        """Parse {inclusion: [[column of length dim A], ...], eps: [...]} or {trivial: true}."""
        section = StructureValidator.requireMapping(section, "subalgebra")
        if section.get("trivial") is True:
            return AugmentedSubalgebra.trivial(a)
        StructureValidator.requireKeys(section, ("inclusion", "eps"), "subalgebra")
        columns = StructureValidator.requireList(section["inclusion"], "subalgebra.inclusion")
        inclusion = tuple(
            RationalHelper.parseVector(column, a.dim, f"subalgebra.inclusion[{j}]") for j, column in enumerate(columns)
        )
        eps = RationalHelper.parseVector(section["eps"], len(inclusion), "subalgebra.eps")
        return AugmentedSubalgebra(a, inclusion, eps)

    def parseLieAlgebra(self, section: Any) -> LieAlgebra:
        """Parse {dim, bracket: [[i, j, k, "p/q"], ...]}; both orders of a bracket must be listed."""
        section = StructureValidator.requireMapping(section, "lie")
        StructureValidator.requireKeys(section, ("dim",), "lie")
        dim = StructureValidator.requirePositive(section["dim"], "lie.dim")
        triples = self._parseTriples(section.get("bracket", []), 3, dim, "lie.bracket")
        return LieAlgebra.fromTriples(dim, triples)

    def parseAction(self, lie: LieAlgebra, a: FinAlgebra, section: Any) -> LieAction:
        """Parse {rho: [[image of e_i in A], ...]}."""
        section = StructureValidator.requireMapping(section, "action")
        StructureValidator.requireKeys(section, ("rho",), "action")
        images = StructureValidator.requireList(section["rho"], "action.rho")
        if len(images) != lie.dim:
            raise ValidationError(f"action.rho: expected {lie.dim} images", "shape")
        rho = tuple(RationalHelper.parseVector(image, a.dim, f"action.rho[{i}]") for i, image in enumerate(images))
        return LieAction(lie, a, rho)

    def parseModule(self, a: FinAlgebra, b: AugmentedSubalgebra | None, name: str, section: Any) -> LeftModule:
        """
        Parse one named module.

        The document gives {dim, side: left|right, over: A|B, action: [entries per basis element]}
        where each entry list holds [row, column, "p/q"] triples of that basis element's matrix.
        A right module is stored as a left module over the opposite algebra.
        """
        location = f"modules.{name}"
        section = StructureValidator.requireMapping(section, location)
        StructureValidator.requireKeys(section, ("dim", "action"), location)
        dim = section["dim"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
            raise ParseError(f"{location}.dim: expected a non-negative integer", f"{location}.dim")

        over = section.get("over", "A")
        if over == "A":
            base = a
        elif over == "B":
            if b is None:
                raise ValidationError(f"{location}: a module over B needs a 'subalgebra' section", "subalgebra")
            base = b.asAlgebra()
        else:
            raise ParseError(f"{location}.over: expected 'A' or 'B'", f"{location}.over")

        side = section.get("side", "left")
        if side not in ("left", "right"):
            raise ParseError(f"{location}.side: expected 'left' or 'right'", f"{location}.side")
        algebra = base if side == "left" else opposite(base)

        matrices = StructureValidator.requireList(section["action"], f"{location}.action")
        if len(matrices) != base.dim:
            raise ValidationError(f"{location}.action: expected {base.dim} matrices", "shape")
        action = []
        for k, entries in enumerate(matrices):
            triples = self._parseTriples(entries, 2, dim, f"{location}.action[{k}]")
            action.append(SparseMatrix.fromEntries(dim, dim, {(i, j): v for i, j, v in triples}))
        return LeftModule(algebra, dim, tuple(action), name)

    def loadResolution(self, path: Path) -> ResolutionData:
        """
        Read a resolution file.

        The file holds {"fiberDims": [...], "differentials": {"s": [[i, j, [B-coordinates]], ...]},
        "periodic": bool}; coordinates are over the subalgebra's own basis.

        Raises:
            ParseError: If the file is malformed or a differential is missing
        """
        document = StructureValidator.requireMapping(self._readJson(path), "resolution")
        StructureValidator.requireKeys(document, ("fiberDims", "differentials"), "resolution")
        fibers = StructureValidator.requireList(document["fiberDims"], "resolution.fiberDims")
        fiberDims = tuple(
            StructureValidator.requirePositive(f, f"resolution.fiberDims[{s}]") if s == 0 else self._nonNegative(f, s)
            for s, f in enumerate(fibers)
        )
        given = StructureValidator.requireMapping(document["differentials"], "resolution.differentials")

        differentials: dict[int, list[tuple[int, int, tuple[Fraction, ...]]]] = {}
        for s in range(1, len(fiberDims)):
            location = f"resolution.differentials.{s}"
            entries = StructureValidator.requireList(given.get(str(s), []), location)
            parsed = []
            for index, entry in enumerate(entries):
                if not isinstance(entry, list) or len(entry) != 3:
                    raise ParseError(f"{location}[{index}]: expected [row, column, coordinates]", location)
                i = StructureValidator.requireIndex(entry[0], fiberDims[s], f"{location}[{index}].row")
                j = StructureValidator.requireIndex(entry[1], fiberDims[s - 1], f"{location}[{index}].column")
                coordinates = StructureValidator.requireList(entry[2], f"{location}[{index}].coordinates")
                parsed.append((i, j, RationalHelper.parseVector(coordinates, len(coordinates), location)))
            differentials[s] = parsed
        extra = sorted(set(given) - {str(s) for s in range(1, len(fiberDims))})
        if extra:
            raise ParseError(f"resolution.differentials: no fiber for degrees {extra}", "resolution.differentials")

        periodic = document.get("periodic", False)
        if not isinstance(periodic, bool):
            raise ParseError("resolution.periodic: expected true or false", "resolution.periodic")
        logger.info(f"Loaded resolution with fibers {list(fiberDims)} (periodic={periodic}) from {path}")
        return ResolutionData(fiberDims, differentials, periodic)

    @staticmethod
    def _nonNegative(value: Any, s: int) -> int:
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ParseError(f"resolution.fiberDims[{s}]: expected a non-negative integer", "resolution.fiberDims")
        return value

    @staticmethod
    def _parseTriples(entries: Any, indices: int, bound: int, location: str) -> list[tuple[Any, ...]]:
        """Parse [[index, ..., "p/q"], ...] with `indices` leading indices below `bound`."""
        rows = StructureValidator.requireList(entries, location)
        parsed = []
        for n, row in enumerate(rows):
            where = f"{location}[{n}]"
            if not isinstance(row, list) or len(row) != indices + 1:
                raise ParseError(f"{where}: expected {indices} indices and a rational", where)
            keys = tuple(StructureValidator.requireIndex(v, bound, where) for v in row[:indices])
            parsed.append((*keys, RationalHelper.parseRational(row[indices], where)))
        return parsed

    @staticmethod
    def _readJson(path: Path) -> Any:
        try:
            with open(path, encoding="utf-8") as f:
                return json.load(f)
        except OSError as e:
            raise ParseError(f"Cannot read {path}: {e}", str(path)) from e
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}", str(path)) from e
