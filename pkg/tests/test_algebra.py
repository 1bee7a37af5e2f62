"""Tests for algebras, augmented subalgebras, Lie actions and modules."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from core.algebra import (
    AugmentedSubalgebra,
    FinAlgebra,
    LeftModule,
    LieAction,
    LieAlgebra,
    characterModule,
    generatedSubalgebra,
    inducedModule,
    invariants,
    leftIdeal,
    opposite,
)
from core.linalg import SparseMatrix, Subspace
from oracles import HALF, m2Algebra, m2Product, vector
from strategies import vectors
from utils.exceptions import InvalidLieActionError, ValidationError


class TestFinAlgebra:
    @settings(max_examples=40, deadline=None)
    @given(vectors(4), vectors(4))
    def test_m2_product_matches_matrix_arithmetic(self, x, y):
        assert m2Algebra().multiply(x, y) == m2Product(x, y)

    def test_non_associative_table_names_the_triple(self):
        one = Fraction(1)
        # x^2 = 1 + x is a fine commutative algebra
        FinAlgebra.fromTriples(["1", "x"], [1, 0], [(0, 0, 0, one), (0, 1, 1, one), (1, 0, 1, one), (1, 1, 0, one), (1, 1, 1, one)])
        # x 1 = 1 makes (x 1) x = x but x (1 x) = 0
        broken = [(0, 0, 0, one), (0, 1, 1, one), (1, 0, 0, one)]
        with pytest.raises(ValidationError) as info:
            FinAlgebra.fromTriples(["1", "x"], [1, 0], broken)
        assert info.value.errorCode == "VALIDATION_ERROR"
        assert info.value.axiom.startswith("associativity(")

    def test_unit_axiom(self):
        with pytest.raises(ValidationError) as info:
            FinAlgebra.fromTriples(["a", "b"], [1, 0], [(0, 0, 0, Fraction(1))])
        assert info.value.axiom.startswith("unit")

    def test_opposite_is_an_involution(self, m2):
        flipped = opposite(m2)
        assert flipped.name == "M2^opp"
        assert flipped.multiply(vector(0, 1, 0, 0), vector(0, 0, 1, 0)) == m2.multiply(
            vector(0, 0, 1, 0), vector(0, 1, 0, 0)
        )
        assert opposite(flipped) == m2

    def test_commutativity(self, dualNumbers, m2):
        assert dualNumbers.isCommutative()
        assert not m2.isCommutative()


class TestAugmentedSubalgebra:
    def test_kernel_and_own_algebra(self, nilpotentPair):
        assert nilpotentPair.dim == 2
        assert nilpotentPair.kernelBasis == (vector(0, 1),)
        assert nilpotentPair.kernelInParent == (vector(0, 1, 0, 0),)
        own = nilpotentPair.asAlgebra()
        assert own.dim == 2
        assert own.multiply(vector(0, 1), vector(0, 1)) == vector(0, 0)

    def test_trivial_subalgebra_has_no_kernel(self, trivialPair):
        assert trivialPair.dim == 1
        assert trivialPair.kernelDim == 0

    def test_augmentation_must_be_multiplicative(self, m2):
        with pytest.raises(ValidationError) as info:
            AugmentedSubalgebra(m2, (vector(1, 0, 0, 1), vector(0, 1, 0, 0)), vector(1, 1))
        assert info.value.axiom == "augmentation-multiplicative(i=1,j=1)"

    def test_augmentation_must_send_one_to_one(self, m2):
        with pytest.raises(ValidationError) as info:
            AugmentedSubalgebra(m2, (vector(1, 0, 0, 1), vector(0, 1, 0, 0)), vector(2, 0))
        assert info.value.axiom == "augmentation-unit"

    def test_subalgebra_must_contain_the_unit(self, m2):
        with pytest.raises(ValidationError) as info:
            AugmentedSubalgebra(m2, (vector(0, 1, 0, 0),), vector(0))
        assert info.value.axiom == "subalgebra-unit"

    def test_subalgebra_must_be_closed(self, m2):
        with pytest.raises(ValidationError) as info:
            AugmentedSubalgebra(m2, (vector(1, 0, 0, 1), vector(0, 1, 0, 0), vector(0, 0, 1, 0)), vector(1, 0, 0))
        assert info.value.axiom.startswith("subalgebra-closure")

    def test_self_pair_uses_own_algebra(self, nilpotentPair):
        own = nilpotentPair.selfPair()
        assert own.parent == nilpotentPair.asAlgebra()
        assert own.kernelDim == 1


class TestLie:
    def test_antisymmetry_is_required(self):
        with pytest.raises(ValidationError) as info:
            LieAlgebra.fromTriples(2, [(0, 1, 1, Fraction(1))])
        assert info.value.axiom == "antisymmetry(i=0,j=1,k=1)"

    def test_abelian(self, borelLie):
        assert LieAlgebra.abelian(3).isAbelian()
        assert not borelLie.isAbelian()

    def test_action_must_respect_brackets(self, m2, borelLie):
        with pytest.raises(InvalidLieActionError) as info:
            LieAction(borelLie, m2, (vector(0, 0, 0, 0), vector(0, 1, 0, 0)))
        assert info.value.errorCode == "INVALID_LIE_ACTION"

    def test_borel_action_is_valid(self, m2BorelAction):
        assert m2BorelAction.rank == 2
        assert m2BorelAction.rho[0] == vector(HALF, 0, 0, -HALF)


class TestModules:
    def test_regular_and_right_regular(self, m2):
        left = LeftModule.regular(m2)
        right = LeftModule.rightRegular(m2)
        assert left.act(vector(0, 1, 0, 0), vector(0, 0, 1, 0)) == vector(1, 0, 0, 0)
        assert right.algebra == opposite(m2)
        assert right.act(vector(0, 1, 0, 0), vector(0, 0, 1, 0)) == vector(0, 0, 0, 1)

    def test_action_must_be_multiplicative(self, dualNumbers):
        with pytest.raises(ValidationError) as info:
            LeftModule(dualNumbers, 1, (SparseMatrix.identity(1), SparseMatrix.identity(1)))
        assert info.value.axiom.startswith("module-action")

    def test_restriction(self, m2, nilpotentPair):
        restricted = LeftModule.regular(m2).restrict(nilpotentPair)
        assert restricted.algebra == nilpotentPair.asAlgebra()
        assert restricted.actionOf(vector(0, 1)) == m2.leftMultiplicationMatrix(vector(0, 1, 0, 0))

    def test_character_module(self, nilpotentPair):
        k = characterModule(nilpotentPair)
        assert k.dim == 1
        assert k.act(vector(3, 5), vector(1)) == vector(3)

    def test_zero_module(self, m2):
        assert LeftModule.zero(m2).dim == 0


class TestInducedModule:
    def test_m2_over_nilpotent_subalgebra(self, m2, nilpotentPair):
        induced = inducedModule(m2, nilpotentPair)
        assert induced.ideal == Subspace.spannedBy([vector(0, 1, 0, 0), vector(0, 0, 0, 1)], 4)
        assert induced.dim == 2
        assert induced.quotient.representatives == (vector(1, 0, 0, 0), vector(0, 0, 1, 0))

    def test_trivial_subalgebra_induces_the_regular_module(self, m2, trivialPair):
        assert inducedModule(m2, trivialPair).dim == 4

    def test_invariants_of_induced_module(self, m2, nilpotentPair):
        induced = inducedModule(m2, nilpotentPair)
        fixed = invariants(induced.module, nilpotentPair)
        assert fixed.dim == 1
        assert induced.representative(fixed.basis[0]) == vector(1, 0, 0, 0)

    def test_dual_numbers_induce_the_trivial_module(self, dualNumbers, dualPair):
        assert inducedModule(dualNumbers, dualPair).dim == 1


def test_left_ideal_and_generated_subalgebra(m2):
    ideal = leftIdeal(m2, Subspace.spannedBy([vector(0, 1, 0, 0)], 4))
    assert ideal.dim == 2
    assert generatedSubalgebra(m2, Subspace.spannedBy([vector(0, 1, 0, 0)], 4)).dim == 2
    assert generatedSubalgebra(m2, Subspace.spannedBy([vector(0, 1, 0, 0), vector(0, 0, 1, 0)], 4)).dim == 4
