"""Matrices over the algebra: arithmetic, predicates, conjugation."""

import pytest

from cuntzalg.algebra import Element
from cuntzalg.backends import EXACT
from cuntzalg.constructions import cyclic_model
from cuntzalg.matrices import OpMatrix, ad_unitary
from cuntzalg.morphisms import cyclic_endo, named_endo


def gen(n, i):
    return Element.generator(n, i)


@pytest.fixture(scope="module")
def model2():
    return cyclic_model(2, validate=False)


@pytest.fixture(scope="module")
def model3():
    return cyclic_model(3, validate=False)


class TestArithmetic:
    def test_identity_is_neutral(self, model3):
        a = model3.T[0]
        assert (OpMatrix.identity(3, 3) * a).equals(a)
        assert (a * OpMatrix.identity(3, 3)).equals(a)

    def test_adjoint_involution(self, model3):
        a = model3.T[1]
        assert a.adjoint().adjoint().equals(a)

    def test_t1_is_isometry(self, model2):
        t1 = model2.T[0]
        assert (t1.adjoint() * t1).equals(OpMatrix.identity(2, 2))

    def test_size_mismatch(self, model2, model3):
        with pytest.raises(ValueError):
            model2.w * OpMatrix.identity(3, 2)

    def test_requires_square(self):
        with pytest.raises(ValueError):
            OpMatrix([[Element.one(2), Element.one(2)]])


class TestPredicates:
    def test_diagonal_phase_matrix_is_unitary(self, model3):
        assert model3.Z.is_unitary()

    def test_unnormalised_row_matrix_is_not_isometry(self, model3):
        verdict = model3.Vmat.is_isometry()
        assert not verdict
        # V*V = n I, so the first diagonal entry already fails
        assert verdict.first_failure == (1, 1)

    def test_cycle_matrix_is_unitary(self, model3):
        assert model3.w.is_unitary()

    def test_first_failure_coordinate(self):
        one = Element.one(2)
        zero = Element.zero(2)
        proj = gen(2, 1) * gen(2, 1).adjoint()
        a = OpMatrix([[one, zero], [zero, proj]])
        verdict = a.is_isometry()
        assert not verdict.ok
        assert verdict.first_failure == (2, 2)

    def test_selfadjoint(self, model2):
        f = gen(2, 1) * gen(2, 1).adjoint() - gen(2, 2) * gen(2, 2).adjoint()
        zero = Element.zero(2)
        mat = OpMatrix([[zero, f], [f, zero]])
        assert mat.is_selfadjoint()
        assert not OpMatrix([[zero, f], [-f, zero]]).is_selfadjoint().ok


class TestConjugation:
    def test_identity_acts_trivially(self, model3):
        a = model3.T[2]
        assert ad_unitary(OpMatrix.identity(3, 3), a).equals(a)

    def test_phase_conjugation_shifts_generators(self, model2):
        assert ad_unitary(model2.Z, model2.T[0]).equals(model2.T[1])
        assert ad_unitary(model2.Z, model2.T[1]).equals(model2.T[0])

    def test_twisted_diagonal_is_fixed(self, model2):
        lam = cyclic_endo(2)
        x = gen(2, 1) * gen(2, 2).adjoint()
        diag = OpMatrix.diagonal([x, lam(x)])
        assert ad_unitary(model2.Z, diag).equals(diag)

    def test_multiplicative(self, model3):
        a, b = model3.T[0], model3.T[1]
        lhs = ad_unitary(model3.Z, a * b)
        rhs = ad_unitary(model3.Z, a) * ad_unitary(model3.Z, b)
        assert lhs.equals(rhs)


class TestEntrywise:
    def test_identity_endo(self, model3):
        ident = named_endo("cyclic", 3).power(0)
        assert model3.w.entrywise(ident).equals(model3.w)

    def test_unital_endo_fixes_scalar_matrix(self):
        lam = cyclic_endo(2)
        ones = OpMatrix([[Element.one(2)] * 2] * 2)
        assert ones.entrywise(lam).equals(ones)

    def test_rotation_on_twisted_diagonal(self, model2):
        lam = cyclic_endo(2)
        shifted = model2.s[0].entrywise(lam)
        want = OpMatrix.diagonal([gen(2, 2), gen(2, 1)])
        assert shifted.equals(want)

    def test_rank_mismatch(self, model3):
        with pytest.raises(ValueError):
            model3.w.entrywise(cyclic_endo(2))


class TestPower:
    def test_zeroth_power(self, model3):
        assert model3.Z.power(0).equals(OpMatrix.identity(3, 3))

    def test_cycle_order(self, model3):
        assert model3.w.power(3).equals(OpMatrix.identity(3, 3))
        assert not model3.w.power(2).equals(OpMatrix.identity(3, 3))

    def test_negative_rejected(self, model3):
        with pytest.raises(ValueError):
            model3.Z.power(-1)
