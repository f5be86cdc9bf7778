"""Reduced words, linear combinations, and the equality decision procedure."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuntzalg.algebra import (Element, ExpansionLimitError, Monomial,
                              is_isometry, is_projection, is_selfadjoint,
                              is_unitary, monomial_product)
from cuntzalg.backends import EXACT
from cuntzalg.morphisms import phase_unitary
from cuntzalg.scalars import root_of_unity


def gen(n, i):
    return Element.generator(n, i)


class TestMonomialProduct:
    def test_full_cancellation(self):
        assert monomial_product(Monomial((1,), (2,)), Monomial((2,), (3,))) \
            == Monomial((1,), (3,))

    def test_orthogonal_words_vanish(self):
        assert monomial_product(Monomial((), (1,)), Monomial((2,), ())) is None

    def test_prefix_case(self):
        assert monomial_product(Monomial((1,), (2,)), Monomial((2, 1), (3,))) \
            == Monomial((1, 1), (3,))

    def test_unit_is_neutral(self):
        unit = Monomial((), ())
        word = Monomial((1, 2), (2,))
        assert monomial_product(unit, word) == word
        assert monomial_product(word, unit) == word


class TestElementArithmetic:
    def test_isometry_cross_terms_vanish(self):
        n = 2
        total = gen(n, 1) + gen(n, 2)
        assert (total.adjoint() * total).equals(Element.one(n).scale(2))

    def test_adjoint_conjugates_coefficients(self):
        x = Element(3, {Monomial((1,), (2,)): root_of_unity(3, 1)})
        want = Element(3, {Monomial((2,), (1,)): root_of_unity(3, 2)})
        assert x.adjoint().equals(want)

    def test_vvstar_collapses_to_projection_sum(self):
        v = phase_unitary(3)
        prod = v * v.adjoint()
        # syntactically the projection sum, not the unit
        assert set(prod.terms) == {Monomial((k,), (k,)) for k in (1, 2, 3)}
        assert all(c == 1 for c in prod.terms.values())
        assert prod.equals(Element.one(3))

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            gen(2, 1) * gen(3, 1)

    def test_rank_one_rejected(self):
        with pytest.raises(ValueError):
            Element(1, {})

    def test_letter_range_checked(self):
        with pytest.raises(ValueError):
            Element(2, {Monomial((3,), ()): EXACT.rational(1)})

    def test_generator_index_wraps(self):
        assert Element.generator(3, 4).equals(gen(3, 1))


class TestExpansion:
    def test_unit_at_level_one(self):
        expanded = Element.one(2).expand_to_level(1)
        want = gen(2, 1) * gen(2, 1).adjoint() + gen(2, 2) * gen(2, 2).adjoint()
        assert set(expanded.terms) == set(want.terms)

    def test_generator_at_level_one(self):
        expanded = gen(2, 1).expand_to_level(1)
        assert set(expanded.terms) == {Monomial((1, 1), (1,)), Monomial((1, 2), (2,))}

    def test_projection_difference_at_level_two(self):
        n = 2
        x = gen(n, 1) * gen(n, 1).adjoint() - gen(n, 2) * gen(n, 2).adjoint()
        expanded = x.expand_to_level(2)
        want = {
            Monomial((1, 1), (1, 1)): Fraction(1),
            Monomial((1, 2), (1, 2)): Fraction(1),
            Monomial((2, 1), (2, 1)): Fraction(-1),
            Monomial((2, 2), (2, 2)): Fraction(-1),
        }
        assert {m: c.as_fraction() for m, c in expanded.terms.items()} == want

    def test_level_below_coword_rejected(self):
        x = gen(2, 1).adjoint() * gen(2, 1) * gen(2, 1).adjoint()
        with pytest.raises(ValueError):
            x.expand_to_level(0)

    def test_guard_raises_distinct_error(self):
        with pytest.raises(ExpansionLimitError):
            Element.one(2).expand_to_level(25, max_terms=1000)

    def test_guard_reports_projection(self):
        try:
            Element.one(3).expand_to_level(10, max_terms=100)
        except ExpansionLimitError as err:
            assert err.projected == 3 ** 10
            assert err.limit == 100


class TestEquals:
    def test_cuntz_relation(self):
        n = 2
        total = gen(n, 1) * gen(n, 1).adjoint() + gen(n, 2) * gen(n, 2).adjoint()
        assert total.equals(Element.one(n))

    def test_distinct_generators(self):
        assert not gen(2, 1).equals(gen(2, 2))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_vstar_v_is_one(self, n):
        v = phase_unitary(n)
        assert (v.adjoint() * v).equals(Element.one(n))

    def test_zero_element(self):
        assert Element.zero(2).is_zero()
        assert (gen(2, 1) - gen(2, 1)).is_zero()


class TestPredicates:
    def test_generator_is_isometry_not_unitary(self):
        assert is_isometry(gen(2, 1))
        assert not is_unitary(gen(2, 1))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_phase_unitary_is_unitary(self, n):
        assert is_unitary(phase_unitary(n))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_normalised_generator_sum_is_isometry(self, n):
        total = Element.zero(n)
        for i in range(1, n + 1):
            total = total + gen(n, i)
        big_t = total.scale(EXACT.sqrt_int(n) * Fraction(1, n))
        assert is_isometry(big_t)

    def test_projections(self):
        p = gen(2, 1) * gen(2, 1).adjoint()
        assert is_projection(p)
        assert is_selfadjoint(p)
        assert not is_projection(gen(2, 1))


class TestGaugeComponents:
    def test_mixed_degrees(self):
        x = gen(2, 1) + gen(2, 1) * gen(2, 2).adjoint()
        parts = x.gauge_components()
        assert set(parts) == {0, 1}
        assert parts[1].equals(gen(2, 1))
        assert parts[0].equals(gen(2, 1) * gen(2, 2).adjoint())

    def test_unit(self):
        parts = Element.one(2).gauge_components()
        assert set(parts) == {0}

    def test_v_times_generator_collapses(self):
        v = phase_unitary(2)
        x = v * gen(2, 1)
        parts = x.gauge_components()
        assert set(parts) == {1}
        assert parts[1].equals(-gen(2, 1))

    def test_parts_sum_back(self):
        x = gen(3, 1) + gen(3, 2).adjoint() + Element.one(3)
        total = Element.zero(3)
        for part in x.gauge_components().values():
            total = total + part
        assert total.equals(x)


def random_element(rng, n, max_len=3, max_terms=3):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        alpha = tuple(rng.randrange(1, n + 1)
                      for _ in range(rng.randrange(max_len + 1)))
        beta = tuple(rng.randrange(1, n + 1)
                     for _ in range(rng.randrange(max_len + 1)))
        coeff = EXACT.rational(rng.choice((1, -1, 2)), rng.choice((1, 2)))
        mono = Monomial(alpha, beta)
        terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return Element(n, terms)


@st.composite
def elements(draw, max_rank=4, max_len=3):
    n = draw(st.integers(2, max_rank))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_element(random.Random(seed), n, max_len)


class TestAlgebraLaws:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**31))
    def test_associativity(self, n, seed):
        rng = random.Random(seed)
        x, y, z = (random_element(rng, n) for _ in range(3))
        assert ((x * y) * z).equals(x * (y * z))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**31))
    def test_adjoint_antimultiplicative(self, n, seed):
        rng = random.Random(seed)
        x, y = (random_element(rng, n) for _ in range(2))
        assert (x * y).adjoint().equals(y.adjoint() * x.adjoint())

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**31))
    def test_expansion_preserves_equality(self, n, seed):
        rng = random.Random(seed)
        x = random_element(rng, n)
        level = max((len(m.beta) for m in x.terms), default=0) + 1
        assert x.expand_to_level(level).equals(x)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**31))
    def test_equals_invariant_under_relation(self, n, seed):
        rng = random.Random(seed)
        x = random_element(rng, n)
        z = random_element(rng, n, max_len=2)
        defect = Element.zero(n)
        for i in range(1, n + 1):
            defect = defect + gen(n, i) * gen(n, i).adjoint()
        defect = defect - Element.one(n)
        assert x.equals(x + defect * z)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**31))
    def test_gauge_degrees_add_on_products(self, n, seed):
        rng = random.Random(seed)
        # homogeneous slices multiply into a single degree
        x = random_element(rng, n)
        y = random_element(rng, n)
        for dx, px in x.gauge_components().items():
            for dy, py in y.gauge_components().items():
                degrees = {m.degree for m in (px * py).terms}
                assert degrees <= {dx + dy}
