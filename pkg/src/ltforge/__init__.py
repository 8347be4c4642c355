"""Exact Lubin-Tate formal groups, Weil-number decisions and torsion-finiteness verdicts."""
from .algebraic import AlgebraicNumber, algebraic_from_poly, enumerate_weil_polys, is_root_of_unity, is_weil
from .finiteness import (
    GroupClass,
    Verdict,
    character_spec,
    exceptional_set,
    lubin_tate_character_spec,
    make_pair,
    structure_report,
    verdict,
)
from .lubin_tate import (
    default_frobenius,
    formal_group_law,
    formal_log,
    isomorphism_theta,
    multiplication_by,
    torsion_newton_polygon,
)
from .padic import LocalFieldModel, PadicNumber, make_field, qp
from .series import Series, series1, series2

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber", "GroupClass", "LocalFieldModel", "PadicNumber", "Series", "Verdict",
    "algebraic_from_poly", "character_spec", "default_frobenius", "enumerate_weil_polys",
    "exceptional_set", "formal_group_law", "formal_log", "is_root_of_unity", "is_weil",
    "isomorphism_theta", "lubin_tate_character_spec", "make_field", "make_pair",
    "multiplication_by", "qp", "series1", "series2", "structure_report",
    "torsion_newton_polygon", "verdict",
]
