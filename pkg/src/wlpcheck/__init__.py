"""Certified weak Lefschetz checks for Artinian complete intersections."""

from .bundle_bounds import BoundReport, IntRange, ResolutionShape, is_stable, slope, splitting_bounds, wlp_ranges
from .exactfield import DEFAULT_PRIME, QQ, FieldElement, PrimeField, RationalField
from .jacobian import beauville_check, certify_smooth, jacobian_ideal
from .lefschetz import (
    CERTIFIED,
    CERTIFIED_FAILURE,
    SUSPECTED,
    HilbertFunction,
    NotArtinianError,
    QuotientAlgebra,
    WlpVerdict,
    certify_complete_intersection,
    full_wlp,
    hilbert_by_linear_algebra,
    hilbert_by_product_formula,
    wlp_in_degree,
)
from .polyring import CiSpec, GradedForm, Monomial, enumerate_monomials, parse_form, random_form, render

__all__ = [
    "BoundReport", "IntRange", "ResolutionShape", "is_stable", "slope", "splitting_bounds", "wlp_ranges",
    "DEFAULT_PRIME", "QQ", "FieldElement", "PrimeField", "RationalField",
    "beauville_check", "certify_smooth", "jacobian_ideal",
    "CERTIFIED", "CERTIFIED_FAILURE", "SUSPECTED", "HilbertFunction", "NotArtinianError", "QuotientAlgebra",
    "WlpVerdict", "certify_complete_intersection", "full_wlp", "hilbert_by_linear_algebra",
    "hilbert_by_product_formula", "wlp_in_degree",
    "CiSpec", "GradedForm", "Monomial", "enumerate_monomials", "parse_form", "random_form", "render",
]

__version__ = "0.1.0"
