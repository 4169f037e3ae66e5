"""Exact exterior calculus on the first jet space for Monge-Ampere equations."""

from .catalog import CatalogEntry, UnknownEquation, catalog
from .dsl import ParseError, parse_form, parse_jet_polynomial, parse_polynomial
from .euler import EULER_LAGRANGE_SIGN, FirstOrderLagrangian, euler, euler_first_order
from .exterior import DifferentialForm, GeneratorSet, ext_d, wedge
from .jetcalc import (
    JetContext,
    bottom,
    d_p,
    effective_part,
    hodge_lepage_residual,
    is_effective,
    lie_reeb,
    project,
)
from .jetpde import MAEquation, euler_lagrange_fields, extract_pde, synthesize_form, total_derivative
from .msympl import check_harrivel, harrivel_form, helein_kg, verify_multisymplectic_direct
from .ratpoly import Polynomial
from .render import render
from .variational import Status, VariationalVerdict, reconstruct, structural_check

__version__ = "1.0.0"

__all__ = [
    "CatalogEntry",
    "DifferentialForm",
    "EULER_LAGRANGE_SIGN",
    "FirstOrderLagrangian",
    "GeneratorSet",
    "JetContext",
    "MAEquation",
    "ParseError",
    "Polynomial",
    "Status",
    "UnknownEquation",
    "VariationalVerdict",
    "bottom",
    "catalog",
    "check_harrivel",
    "d_p",
    "effective_part",
    "euler",
    "euler_first_order",
    "euler_lagrange_fields",
    "ext_d",
    "extract_pde",
    "harrivel_form",
    "helein_kg",
    "hodge_lepage_residual",
    "is_effective",
    "lie_reeb",
    "parse_form",
    "parse_jet_polynomial",
    "parse_polynomial",
    "project",
    "reconstruct",
    "render",
    "structural_check",
    "synthesize_form",
    "total_derivative",
    "verify_multisymplectic_direct",
    "wedge",
]
