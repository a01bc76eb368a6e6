"""Propositional logic of a two-agent poset: finite algebras with
perception operators, relational frames, the dualities between them, and
a complete three-valued decision procedure with countermodel extraction.
"""
from .errors import ResourceError, StructureError
from .formula import (
    And,
    Formula,
    Implies,
    Not,
    ParseError,
    S1,
    S2,
    Var,
    Or,
    depth,
    enumerate_formulas,
    parse_formula,
    random_formula,
    random_formulas,
    render_formula,
    variables,
)
from .algebra import (
    Assignment,
    AxiomReport,
    FiniteAlgebra,
    Verdict,
    algebra_consequence,
    algebra_from_dict,
    algebra_to_dict,
    check_derived_properties,
    check_ht_algebra,
    check_perception_congruence,
    check_t_structure,
    complemented_elements,
    derive_c,
    derive_implication,
    eval_formula,
    make_b,
    make_bt,
    product_algebra,
)
from .frame import (
    HTFrame,
    HTModel,
    check_frame,
    check_model,
    enumerate_frames,
    find_frame_isomorphism,
    frame_from_dict,
    frame_to_dict,
    frame_valid,
    make_k0,
    model_consequence,
    model_from_dict,
    model_to_dict,
    model_truth,
    r_closed_subsets,
    reflexive_transitive_closure,
    sat,
    sat_states,
)
from .duality import (
    PrimeFilter,
    RClosedFamily,
    algebraic_to_model,
    canonical_frame,
    check_isomorphic,
    complex_algebra,
    model_to_algebraic,
    prime_filters,
    r_closed_sets,
)
from .decide import (
    DecisionResult,
    HarnessReport,
    countermodel_on_k0,
    decide_consequence,
    decide_validity,
    equivalence_harness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
