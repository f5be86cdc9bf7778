"""JSON interchange for scalars, elements, matrices, endos and model bundles."""

import json

import pytest

from cuntzalg.algebra import Element, Monomial
from cuntzalg.backends import EXACT, NumericScalars
from cuntzalg.constructions import cyclic_model, exchange_model, nogo_witness
from cuntzalg.morphisms import cyclic_endo, phase_unitary
from cuntzalg.serialize import (element_from_obj, element_to_obj, endo_from_obj,
                                endo_to_obj, matrix_from_obj, matrix_to_obj,
                                model_to_obj)


def gen(n, i):
    return Element.generator(n, i)


class TestElementJson:
    def test_schema_shape(self):
        x = phase_unitary(2)
        obj = element_to_obj(x)
        assert obj["n"] == 2
        for term in obj["terms"]:
            assert set(term) == {"alpha", "beta", "coeff"}
            assert set(term["coeff"]) == {"M", "coeffs"}

    def test_round_trip(self):
        x = phase_unitary(3) + gen(3, 1).scale(EXACT.sqrt_int(3))
        assert element_from_obj(element_to_obj(x)).equals(x)

    def test_deterministic_and_json_clean(self):
        x = phase_unitary(3)
        a = json.dumps(element_to_obj(x), sort_keys=True)
        b = json.dumps(element_to_obj(x), sort_keys=True)
        assert a == b

    def test_contraction_applies(self):
        x = gen(2, 1) * gen(2, 1).adjoint() + gen(2, 2) * gen(2, 2).adjoint()
        obj = element_to_obj(x)
        assert obj["terms"] == [{
            "alpha": [], "beta": [],
            "coeff": {"M": 1, "coeffs": [["1", "1"]]},
        }]

    def test_numeric_elements_refuse(self):
        backend = NumericScalars(64, 1e-10)
        x = Element.one(2, backend)
        with pytest.raises(TypeError):
            element_to_obj(x)

    def test_rank_guard(self):
        obj = element_to_obj(gen(2, 1))
        with pytest.raises(ValueError):
            element_from_obj(obj, expected_rank=3)


class TestMatrixJson:
    def test_round_trip(self):
        model = cyclic_model(2, validate=False)
        obj = matrix_to_obj(model.T[0])
        assert obj["k"] == 2 and obj["n"] == 2
        assert matrix_from_obj(obj).equals(model.T[0])


class TestEndoJson:
    def test_round_trip(self):
        endo = cyclic_endo(3)
        obj = endo_to_obj(endo)
        assert obj["n"] == 3 and len(obj["images"]) == 3
        assert endo_from_obj(obj).equals(endo)

    def test_validation_on_load(self):
        obj = {"n": 2, "images": [element_to_obj(gen(2, 1))] * 2}
        with pytest.raises(ValueError):
            endo_from_obj(obj)


class TestModelBundles:
    def test_cyclic_bundle_keys(self):
        model = cyclic_model(2, validate=False)
        obj = model_to_obj(model)
        assert set(obj) == {"n", "v", "Z", "T", "w", "s", "bigT", "R"}
        assert len(obj["T"]) == 2 and len(obj["R"]) == 2

    def test_exchange_bundle_keys(self):
        model = exchange_model(1, validate=False)
        obj = model_to_obj(model)
        assert set(obj) == {"n", "Z", "w", "tilde_v", "y", "s_tilde"}
        assert set(obj["y"]) == {"unscaled", "scaled"}

    def test_nogo_bundle_keys(self):
        obj = model_to_obj(nogo_witness(validate=False))
        assert set(obj) == {"n", "F", "V", "Z", "T1", "T2"}

    def test_bundles_are_json_serialisable(self):
        obj = model_to_obj(cyclic_model(2, validate=False))
        json.dumps(obj)
