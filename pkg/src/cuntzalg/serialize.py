"""JSON object forms for scalars, elements, matrices, endomorphisms and bundles.

Element term lists are emitted after the display contraction pass, sorted by
gauge degree then word, so serialization is deterministic for a fixed value.
Only exact coefficients serialize; the numeric backend is a cross-check
device, not an interchange format.
"""

from __future__ import annotations

from .algebra import Element, Monomial
from .constructions import CyclicModel, ExchangeModel, NogoWitness
from .expr import contract_terms, sorted_terms
from .matrices import OpMatrix
from .morphisms import Endo
from .scalars import CycloScalar

__all__ = [
    "element_from_obj",
    "element_to_obj",
    "endo_from_obj",
    "endo_to_obj",
    "matrix_from_obj",
    "matrix_to_obj",
    "model_to_obj",
]


def element_to_obj(x: Element) -> dict:
    terms = []
    for mono, coeff in sorted_terms(contract_terms(x.terms, x.rank)):
        if not isinstance(coeff, CycloScalar):
            raise TypeError("only exact elements serialize to JSON")
        terms.append({
            "alpha": list(mono.alpha),
            "beta": list(mono.beta),
            "coeff": coeff.to_json_obj(),
        })
    return {"n": x.rank, "terms": terms}


def element_from_obj(obj: dict, expected_rank: int | None = None) -> Element:
    rank = int(obj["n"])
    if expected_rank is not None and rank != expected_rank:
        raise ValueError(f"expected rank {expected_rank}, got {rank}")
    terms = {}
    for item in obj["terms"]:
        mono = Monomial(tuple(int(a) for a in item["alpha"]),
                        tuple(int(b) for b in item["beta"]))
        coeff = CycloScalar.from_json_obj(item["coeff"])
        terms[mono] = terms[mono] + coeff if mono in terms else coeff
    return Element(rank, terms)


def matrix_to_obj(a: OpMatrix) -> dict:
    return {
        "k": a.size,
        "n": a.rank,
        "entries": [[element_to_obj(entry) for entry in row] for row in a.rows],
    }


def matrix_from_obj(obj: dict) -> OpMatrix:
    rank = int(obj["n"])
    rows = [[element_from_obj(entry, rank) for entry in row]
            for row in obj["entries"]]
    if len(rows) != int(obj["k"]):
        raise ValueError("matrix size does not match entry grid")
    return OpMatrix(rows)


def endo_to_obj(e: Endo) -> dict:
    return {"n": e.rank, "images": [element_to_obj(img) for img in e.images]}


def endo_from_obj(obj: dict, *, validate: bool = True) -> Endo:
    rank = int(obj["n"])
    images = tuple(element_from_obj(item, rank) for item in obj["images"])
    return Endo(images, validate=validate)


def model_to_obj(model) -> dict:
    """A bundle keyed by the symbol names of its objects."""
    if isinstance(model, CyclicModel):
        return {
            "n": model.n,
            "v": element_to_obj(model.v),
            "Z": matrix_to_obj(model.Z),
            "T": [matrix_to_obj(t) for t in model.T],
            "w": matrix_to_obj(model.w),
            "s": [matrix_to_obj(s) for s in model.s],
            "bigT": element_to_obj(model.bigT),
            "R": [element_to_obj(r) for r in model.R],
        }
    if isinstance(model, ExchangeModel):
        return {
            "n": model.rank,
            "Z": matrix_to_obj(model.base.Z),
            "w": matrix_to_obj(model.base.w),
            "tilde_v": element_to_obj(model.tilde_v),
            "y": {
                "unscaled": [[element_to_obj(y) for y in row]
                             for row in model.y_unscaled],
                "scaled": [[element_to_obj(y) for y in row]
                           for row in model.y_scaled],
            },
            "s_tilde": {
                "unscaled": [[matrix_to_obj(s) for s in row]
                             for row in model.st_unscaled],
                "scaled": [[matrix_to_obj(s) for s in row]
                           for row in model.st_scaled],
            },
        }
    if isinstance(model, NogoWitness):
        return {
            "n": 2,
            "F": element_to_obj(model.F),
            "V": matrix_to_obj(model.V),
            "Z": matrix_to_obj(model.Z2),
            "T1": matrix_to_obj(model.T1),
            "T2": matrix_to_obj(model.T2),
        }
    raise TypeError(f"cannot serialize {type(model).__name__}")
