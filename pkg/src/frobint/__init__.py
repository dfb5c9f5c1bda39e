"""Integral Frobenius matrices for abelian surfaces with real multiplication.

The package computes, for an abelian surface over F_p whose endomorphisms
contain the maximal order O_E of a real quadratic field of class number
one, the 2x2 matrix over O_E giving the Frobenius action on the rank-two
O_E-module underlying the surface.  Inputs are either Hecke-eigenvalue
tables (eigen mode) or explicit genus-2 curve models (curve mode).
"""

from .frobdata import FrobData, WeilQuartic, classify, count_to_weil, make_hp, recover_ap
from .orders import compute_bOL, find_u, make_order_spec, order_divisors
from .realquad import RQField, RQIdeal, RQInt, parse_element
from .sigma import SigmaMatrix, build_sigma, scalar_action_on_torsion, verify_sigma

__all__ = [
    "FrobData",
    "RQField",
    "RQIdeal",
    "RQInt",
    "SigmaMatrix",
    "WeilQuartic",
    "build_sigma",
    "classify",
    "compute_bOL",
    "count_to_weil",
    "find_u",
    "make_hp",
    "make_order_spec",
    "order_divisors",
    "parse_element",
    "recover_ap",
    "scalar_action_on_torsion",
    "verify_sigma",
]

__version__ = "0.1.0"
