"""Exact computation in symmetric-function rings and their categorical towers."""

from .partitions import Partition, enumerate_partitions
from .schur import (FormalSum, kostka, lr_coefficient, monomial_to_schur, schur_product,
                    schur_to_monomial)
from .symring import ExplicitPoly, MONOMIAL, SCHUR, TruncatedSymElem
from .symfunc import CompatibleSequence, SymFunc, lift
from .engine import (InverseSystem, LimitMorphism, LimitObject, SSCategory, SSMorphism,
                     SSObject, ShorteningMap, SimpleLabel, apply_functor_morphism,
                     apply_functor_object, biproduct, canonical_factor, check_conditions,
                     cokernel, coimage, direct_sum, image, is_isomorphism, kernel,
                     limit_simples, restricted_membership, system_from_json, system_to_json)
from .glpoly import (GlInftyObject, character, character_infty, degree_component, gamma_lim,
                     gamma_lim_star, gamma_n, gl_label, gl_system, restrict, ss_object,
                     tensor, tensor_infty)
from .errors import (CompatibilityError, DomainError, ParseError, ScaleError,
                     StabilizationError)

__all__ = [
    "Partition", "enumerate_partitions",
    "FormalSum", "kostka", "lr_coefficient", "schur_product", "schur_to_monomial",
    "monomial_to_schur",
    "ExplicitPoly", "TruncatedSymElem", "MONOMIAL", "SCHUR",
    "SymFunc", "CompatibleSequence", "lift",
    "SimpleLabel", "SSCategory", "ShorteningMap", "SSObject", "SSMorphism",
    "InverseSystem", "LimitObject", "LimitMorphism",
    "apply_functor_object", "apply_functor_morphism", "direct_sum", "biproduct",
    "kernel", "cokernel", "image", "coimage", "canonical_factor", "is_isomorphism",
    "limit_simples", "restricted_membership", "check_conditions",
    "system_to_json", "system_from_json",
    "GlInftyObject", "gl_label", "gl_system", "gamma_n", "gamma_lim", "gamma_lim_star",
    "restrict", "tensor", "tensor_infty", "degree_component", "character",
    "character_infty", "ss_object",
    "DomainError", "ScaleError", "CompatibilityError", "StabilizationError", "ParseError",
]
