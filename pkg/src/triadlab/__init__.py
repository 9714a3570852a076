"""Exact graded algebra over k[a]_(a)[X,Y,Z,T]: resolutions, triads, curve families."""

from .chiffres import Chiffres, chiffres_format, chiffres_parse
from .complexes import Complex3, heart, homology, mapping_cone
from .families import (
    FamilyShape,
    QFunction,
    degree_genus,
    euler_B,
    euler_poly,
    family_report,
    koszul_complex,
    koszul_q_sharp,
    shift_h0,
    triad_c1,
)
from .gradedmatrix import GradedMatrix, PresentedModule
from .pid import InvariantFactors, smith_normal_form
from .pieces import degree_piece, is_finite_over_A, torsion_saturation
from .poly import Poly, format_poly, parse_poly
from .resolutions import free_resolution, kernel_presentation, minimal_presentation
from .scalars import QQ, ScalarField, field_from_name
from .session import format_session, parse_session
from .subquotients import (
    ExtCocycle,
    SubquotientDatum,
    cocycle_check,
    compact_cone_triad,
    cone_triad,
    subquotient_of,
    trivial_triad,
)
from .triads import (
    MinorTriad,
    Triad,
    TriadMorphism,
    dual_triad,
    elementary_reduction,
    fiber_functor,
    psi_check,
    psi_check_degreewise,
    resolution_majeure,
    triad_invariants,
    triad_validate,
)

__all__ = [
    "Chiffres",
    "chiffres_format",
    "chiffres_parse",
    "Complex3",
    "heart",
    "homology",
    "mapping_cone",
    "FamilyShape",
    "QFunction",
    "degree_genus",
    "euler_B",
    "euler_poly",
    "family_report",
    "koszul_complex",
    "koszul_q_sharp",
    "shift_h0",
    "triad_c1",
    "GradedMatrix",
    "PresentedModule",
    "InvariantFactors",
    "smith_normal_form",
    "degree_piece",
    "is_finite_over_A",
    "torsion_saturation",
    "Poly",
    "format_poly",
    "parse_poly",
    "free_resolution",
    "kernel_presentation",
    "minimal_presentation",
    "QQ",
    "ScalarField",
    "field_from_name",
    "format_session",
    "parse_session",
    "ExtCocycle",
    "SubquotientDatum",
    "cocycle_check",
    "compact_cone_triad",
    "cone_triad",
    "subquotient_of",
    "trivial_triad",
    "MinorTriad",
    "Triad",
    "TriadMorphism",
    "dual_triad",
    "elementary_reduction",
    "fiber_functor",
    "psi_check",
    "psi_check_degreewise",
    "resolution_majeure",
    "triad_invariants",
    "triad_validate",
]
