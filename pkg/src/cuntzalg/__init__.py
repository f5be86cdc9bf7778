"""Exact symbolic computation in Cuntz algebras O_n.

Exact cyclotomic coefficients, reduced-word elements with a complete
equality decision procedure, matrices over the algebra, endomorphisms via
the unitary correspondence, the named fixed-point constructions, and the
verification suites that re-derive their identities.
"""

__version__ = "0.1.0"

from .algebra import (DEFAULT_MAX_TERMS, Element, ExpansionLimitError, Monomial,
                      gauge_components, is_isometry, is_projection,
                      is_selfadjoint, is_unitary, monomial_product)
from .backends import EXACT, ExactScalars, NumericScalar, NumericScalars
from .constructions import (CyclicModel, ExchangeModel, NogoQuadruple,
                            NogoWitness, alpha_represent,
                            check_cyclic_compatible, check_parity_compatible,
                            cyclic_model, exchange_model, fixed_generator_suite,
                            nogo_equations, nogo_witness,
                            reconstruct_from_first_row)
from .expr import ParseError, format_element, parse_element
from .matrices import OpMatrix, ad_unitary
from .morphisms import (Endo, cyclic_endo, endo_from_unitary, exchange_endo,
                        expect_cyclic, flipflop_endo, is_fixed, named_endo,
                        phase_unitary, spectral_component, spectral_decompose,
                        unitary_from_endo)
from .scalars import (CycloScalar, cyclotomic_polynomial, euler_phi, radical,
                      rational_scalar, root_of_unity)
from .suites import (DEFAULT_SEED, SUITE_NAMES, CheckReport, CheckResult,
                     SuiteOptions, run_suite)

__all__ = [
    "DEFAULT_MAX_TERMS", "DEFAULT_SEED", "EXACT", "SUITE_NAMES",
    "CheckReport", "CheckResult", "CycloScalar", "CyclicModel", "Element",
    "Endo", "ExactScalars", "ExchangeModel", "ExpansionLimitError", "Monomial",
    "NogoQuadruple", "NogoWitness", "NumericScalar", "NumericScalars",
    "OpMatrix", "ParseError", "SuiteOptions", "ad_unitary", "alpha_represent",
    "check_cyclic_compatible", "check_parity_compatible", "cyclic_endo",
    "cyclic_model", "cyclotomic_polynomial", "endo_from_unitary", "euler_phi",
    "exchange_endo", "exchange_model", "expect_cyclic", "fixed_generator_suite",
    "flipflop_endo", "format_element", "gauge_components", "is_fixed",
    "is_isometry", "is_projection", "is_selfadjoint", "is_unitary",
    "monomial_product", "named_endo", "nogo_equations", "nogo_witness",
    "parse_element", "phase_unitary", "radical", "rational_scalar",
    "reconstruct_from_first_row", "root_of_unity", "run_suite",
    "spectral_component", "spectral_decompose", "unitary_from_endo",
]
