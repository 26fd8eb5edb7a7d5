"""Exact log canonical thresholds of analytically irreducible plane curves.

Three independent routes to the same number: the valuation-theoretic
formula 1/v_f(x) + 1/v_f(y), the Newton-polygon value of the terminal key
polynomial, and an embedded-resolution oracle with Farey-weighted
exceptional divisors.  All arithmetic is exact, over Q or a prime field.
"""

from .arith import ExtRat, INF, PrimeField, QQ, Rat, RationalField, field_from_spec
from .errors import CurveLctError
from .newton import (
    NewtonPolygon,
    howald_lct,
    lct_monom_closedform,
    lp_vertex_min,
    monom_ideal,
    newton_polygon,
    scaled_polygon_check,
)
from .poly import (
    BivarPoly,
    MonomialWeights,
    intersection_multiplicity,
    monomial_valuation,
    normalize_coordinates,
    ord_m,
    parse_poly,
    quotient_dimension,
    resultant_y,
    tangent_cone,
)
from .resolution import (
    ResolutionResult,
    ResolutionTree,
    farey_multiplicity_probe,
    resolution_lct,
    resolve_curve,
)
from .skp import (
    Skp,
    ValuationDescriptor,
    curve_descriptor,
    key_expansion,
    make_descriptor,
    skp_from_curve,
    skp_valuation,
    solve_theta,
    validate_skp,
)
from .valtree import (
    ApproxSequence,
    FormulaResult,
    a_over_alpha_minimum,
    approximating_sequence,
    lct_formula,
    multiplicity,
    ord_m_descriptor,
    point_at_skewness,
    skewness,
    skewness_product_check,
    thinness,
    tree_meet,
    vhat_x,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxSequence",
    "BivarPoly",
    "CurveLctError",
    "ExtRat",
    "FormulaResult",
    "INF",
    "MonomialWeights",
    "NewtonPolygon",
    "PrimeField",
    "QQ",
    "Rat",
    "RationalField",
    "ResolutionResult",
    "ResolutionTree",
    "Skp",
    "ValuationDescriptor",
    "a_over_alpha_minimum",
    "approximating_sequence",
    "curve_descriptor",
    "farey_multiplicity_probe",
    "field_from_spec",
    "howald_lct",
    "intersection_multiplicity",
    "key_expansion",
    "lct_formula",
    "lct_monom_closedform",
    "lp_vertex_min",
    "make_descriptor",
    "monom_ideal",
    "monomial_valuation",
    "multiplicity",
    "newton_polygon",
    "normalize_coordinates",
    "ord_m",
    "ord_m_descriptor",
    "parse_poly",
    "point_at_skewness",
    "quotient_dimension",
    "resolution_lct",
    "resolve_curve",
    "resultant_y",
    "scaled_polygon_check",
    "skewness",
    "skewness_product_check",
    "skp_from_curve",
    "skp_valuation",
    "solve_theta",
    "tangent_cone",
    "thinness",
    "tree_meet",
    "validate_skp",
    "vhat_x",
]
