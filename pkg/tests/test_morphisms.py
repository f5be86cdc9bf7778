"""Endomorphisms, the unitary correspondence, expectation and spectral parts."""

import random
from fractions import Fraction

import pytest

from cuntzalg.algebra import Element, Monomial
from cuntzalg.backends import EXACT
from cuntzalg.morphisms import (Endo, cyclic_endo, endo_from_unitary,
                                exchange_endo, expect_cyclic, flipflop_endo,
                                is_fixed, named_endo, phase_unitary,
                                spectral_component, spectral_decompose,
                                unitary_from_endo)
from cuntzalg.scalars import root_of_unity


def gen(n, i):
    return Element.generator(n, i)


class TestNamedEndos:
    def test_cyclic_wraps(self):
        lam = named_endo("cyclic", 3)
        assert lam(gen(3, 3)).equals(gen(3, 1))
        assert lam(gen(3, 1)).equals(gen(3, 2))

    def test_exchange_fixes_middle_generator(self):
        lam = named_endo("exchange", 3)
        assert is_fixed(lam, gen(3, 2))
        assert lam(gen(3, 1)).equals(gen(3, 3))

    def test_flipflop_is_rank_two_cyclic(self):
        assert named_endo("flipflop", 2).equals(named_endo("cyclic", 2))
        assert named_endo("flipflop", 2).equals(named_endo("exchange", 2))

    def test_flipflop_needs_rank_two(self):
        with pytest.raises(ValueError):
            named_endo("flipflop", 3)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            named_endo("mystery", 2)


class TestUnitaryCorrespondence:
    def test_unit_gives_identity(self):
        endo = endo_from_unitary(Element.one(2))
        assert endo(gen(2, 1)).equals(gen(2, 1))

    def test_flipflop_unitary(self):
        u = gen(2, 1) * gen(2, 2).adjoint() + gen(2, 2) * gen(2, 1).adjoint()
        endo = endo_from_unitary(u)
        assert endo.equals(flipflop_endo())

    def test_cyclic_unitary_rank_three(self):
        u = Element.zero(3)
        for i in range(1, 4):
            u = u + Element.generator(3, i + 1) * gen(3, i).adjoint()
        assert endo_from_unitary(u).equals(cyclic_endo(3))

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            endo_from_unitary(gen(2, 1))

    def test_unitary_of_identity_endo(self):
        ident = cyclic_endo(2).power(0)
        assert unitary_from_endo(ident).equals(Element.one(2))

    def test_unitary_of_flipflop(self):
        want = gen(2, 1) * gen(2, 2).adjoint() + gen(2, 2) * gen(2, 1).adjoint()
        assert unitary_from_endo(flipflop_endo()).equals(want)

    def test_unitary_of_exchange_rank_three(self):
        want = Element.zero(3)
        for i in range(1, 4):
            want = want + Element.generator(3, 4 - i) * gen(3, i).adjoint()
        assert unitary_from_endo(exchange_endo(3)).equals(want)

    @pytest.mark.parametrize("kind,n", [("cyclic", 2), ("cyclic", 3),
                                        ("exchange", 3), ("exchange", 4),
                                        ("flipflop", 2)])
    def test_round_trips(self, kind, n):
        endo = named_endo(kind, n)
        u = unitary_from_endo(endo)
        assert endo_from_unitary(u).equals(endo)
        again = unitary_from_endo(endo_from_unitary(u))
        assert again.equals(u)


class TestApplication:
    def test_eigenvector_property(self):
        v = phase_unitary(3)
        lam = cyclic_endo(3)
        assert lam(v).equals(v.scale(root_of_unity(3, -1)))

    def test_unital(self):
        assert exchange_endo(4)(Element.one(4)).equals(Element.one(4))

    def test_word_image(self):
        lam = cyclic_endo(2)
        x = gen(2, 1) * gen(2, 2).adjoint()
        assert lam(x).equals(gen(2, 2) * gen(2, 1).adjoint())

    def test_homomorphism_on_seeded_samples(self):
        rng = random.Random(20240817)
        lam = cyclic_endo(3)
        for _ in range(25):
            terms = {}
            for _ in range(rng.randrange(1, 3)):
                alpha = tuple(rng.randrange(1, 4) for _ in range(rng.randrange(3)))
                beta = tuple(rng.randrange(1, 4) for _ in range(rng.randrange(3)))
                mono = Monomial(alpha, beta)
                coeff = EXACT.rational(rng.choice((1, -1)), rng.choice((1, 2)))
                terms[mono] = terms[mono] + coeff if mono in terms else coeff
            x = Element(3, terms)
            y = Element(3, dict(reversed(list(terms.items()))))
            assert lam(x * y).equals(lam(x) * lam(y))
            assert lam(x.adjoint()).equals(lam(x).adjoint())

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            cyclic_endo(3)(gen(2, 1))


class TestCompositionAndOrder:
    def test_cyclic_has_order_n(self):
        lam = cyclic_endo(3)
        assert lam.power(3).equals(lam.power(0))
        assert not lam.power(1).equals(lam.power(0))

    def test_exchange_is_involutive(self):
        lam = exchange_endo(4)
        assert lam.power(2).equals(lam.power(0))

    def test_compose_order(self):
        lam = cyclic_endo(3)
        ex = exchange_endo(3)
        # (ex . lam)(S_1) = ex(S_2) = S_2 while (lam . ex)(S_1) = lam(S_3) = S_1
        assert ex.compose(lam)(gen(3, 1)).equals(gen(3, 2))
        assert lam.compose(ex)(gen(3, 1)).equals(gen(3, 1))


class TestValidation:
    def test_bad_images_rejected(self):
        with pytest.raises(ValueError):
            Endo((gen(2, 1), gen(2, 1)))

    def test_escape_hatch(self):
        endo = Endo((gen(2, 1), gen(2, 1)), validate=False)
        assert endo.rank == 2


class TestExpectation:
    def test_two_term_average(self):
        want = (gen(2, 1) + gen(2, 2)).scale(Fraction(1, 2))
        assert expect_cyclic(gen(2, 1)).equals(want)

    def test_unital(self):
        assert expect_cyclic(Element.one(3)).equals(Element.one(3))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_kills_phase_unitary(self, n):
        assert expect_cyclic(phase_unitary(n)).is_zero()

    def test_idempotent_and_invariant(self):
        x = gen(3, 1) * gen(3, 2).adjoint() + Element.one(3)
        fx = expect_cyclic(x)
        assert expect_cyclic(fx).equals(fx)
        assert cyclic_endo(3)(fx).equals(fx)

    def test_module_property(self):
        a = expect_cyclic(gen(3, 1))
        x = gen(3, 2) * gen(3, 3).adjoint()
        assert expect_cyclic(a * x).equals(a * expect_cyclic(x))


class TestSpectralDecomposition:
    def test_unit_has_only_fixed_part(self):
        comps = spectral_decompose(Element.one(2))
        assert comps[0].equals(Element.one(2))
        assert comps[1].is_zero()

    def test_generator_rank_two(self):
        comps = spectral_decompose(gen(2, 1))
        assert comps[0].equals((gen(2, 1) + gen(2, 2)).scale(Fraction(1, 2)))
        assert comps[1].equals((gen(2, 1) - gen(2, 2)).scale(Fraction(1, 2)))

    def test_phase_unitary_is_homogeneous(self):
        v = phase_unitary(3)
        comps = spectral_decompose(v)
        # v has eigenvalue zeta^-1 = zeta^(n-1), so only component n-1 survives
        assert comps[0].is_zero()
        assert comps[1].is_zero()
        assert comps[2].equals(v)

    def test_components_sum_and_eigenvalues(self):
        lam = cyclic_endo(3)
        x = gen(3, 1) + gen(3, 2) * gen(3, 3).adjoint()
        comps = spectral_decompose(x)
        total = Element.zero(3)
        for k, comp in enumerate(comps):
            total = total + comp
            assert lam(comp).equals(comp.scale(root_of_unity(3, k)))
        assert total.equals(x)

    def test_component_index_range(self):
        with pytest.raises(ValueError):
            spectral_component(gen(2, 1), 2)


class TestIsFixed:
    def test_symmetric_sum(self):
        assert is_fixed(cyclic_endo(2), gen(2, 1) + gen(2, 2))

    def test_single_generator_moves(self):
        assert not is_fixed(cyclic_endo(2), gen(2, 1))

    def test_exchange_middle(self):
        assert is_fixed(exchange_endo(3), gen(3, 2))
