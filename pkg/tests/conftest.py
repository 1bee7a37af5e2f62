"""Shared fixtures: small algebras, subalgebras and Lie actions with known answers."""

from fractions import Fraction
from pathlib import Path

import pytest

from config.settings import settings
from core.algebra import AugmentedSubalgebra, FinAlgebra, LieAction, LieAlgebra
from oracles import borelLieAlgebra, dualNumbersAlgebra, m2AbelianAction, m2Algebra, m2BorelLieAction, vector
from services.input_service import InputService


@pytest.fixture
def dualNumbers() -> FinAlgebra:
    """K[t]/(t^2) on the basis (1, t)."""
    return dualNumbersAlgebra()


@pytest.fixture
def dualPair(dualNumbers: FinAlgebra) -> AugmentedSubalgebra:
    """B = A = K[t]/(t^2) with eps(t) = 0."""
    return AugmentedSubalgebra.whole(dualNumbers, [1, 0])


@pytest.fixture
def m2() -> FinAlgebra:
    return m2Algebra()


@pytest.fixture
def nilpotentPair(m2: FinAlgebra) -> AugmentedSubalgebra:
    """B = span{1, E12} inside M2, eps(E12) = 0."""
    return AugmentedSubalgebra(m2, (vector(1, 0, 0, 1), vector(0, 1, 0, 0)), vector(1, 0))


@pytest.fixture
def trivialPair(m2: FinAlgebra) -> AugmentedSubalgebra:
    return AugmentedSubalgebra.trivial(m2)


@pytest.fixture
def upperTriangular() -> FinAlgebra:
    """Upper triangular 2x2 matrices on (E11, E12, E22)."""
    one = Fraction(1)
    return FinAlgebra.fromTriples(
        ["E11", "E12", "E22"], [1, 0, 1], [(0, 0, 0, one), (0, 1, 1, one), (1, 2, 1, one), (2, 2, 2, one)], "T2"
    )


@pytest.fixture
def triangularPair(upperTriangular: FinAlgebra) -> AugmentedSubalgebra:
    """span{1, E12} inside T2; T2 is not flat over it."""
    return AugmentedSubalgebra(upperTriangular, (vector(1, 0, 1), vector(0, 1, 0)), vector(1, 0))


@pytest.fixture
def dualAction(dualNumbers: FinAlgebra) -> LieAction:
    """Abelian rank 1, rho(e) = t."""
    return LieAction(LieAlgebra.abelian(1), dualNumbers, (vector(0, 1),))


@pytest.fixture
def dualAbelianRankTwo(dualNumbers: FinAlgebra) -> LieAction:
    return LieAction(LieAlgebra.abelian(2), dualNumbers, (vector(0, 1), vector(0, 0)))


@pytest.fixture
def m2Action(m2: FinAlgebra) -> LieAction:
    return m2AbelianAction(m2)


@pytest.fixture
def borelLie() -> LieAlgebra:
    return borelLieAlgebra()


@pytest.fixture
def m2BorelAction(m2: FinAlgebra) -> LieAction:
    """rho(e0) = (E11 - E22)/2, rho(e1) = E12."""
    return m2BorelLieAction(m2)


@pytest.fixture
def inputService() -> InputService:
    return InputService()


@pytest.fixture
def examplePath():
    """Path of a shipped example by file name."""

    def resolve(name: str) -> Path:
        return settings.getExamplePath(name)

    return resolve
