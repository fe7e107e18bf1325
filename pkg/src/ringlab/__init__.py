"""Exact computation with polynomial functions over finite rings.

The main entry points are :func:`construct_ring` for ring specs such as
``"ut:2:gf:2"`` or ``"dual:1:zn:4"``, :class:`Poly` for polynomials with right
substitution, and :func:`run_suite` for the verification suites.
"""
from .errors import (
    BudgetExceeded,
    CharIsP,
    NotAChainRing,
    NotAUnit,
    NotCommutative,
    NotIrreducible,
    NotMonic,
    ParseError,
    RinglabError,
    UnsupportedSuite,
    WrongRing,
)
from .poly import Poly, eval_right, lambda_eval, monic_central_null, poly_mul
from .report import Report
from .rings import DualRing, Ring, construct_ring, make_dual
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "CharIsP", "DualRing", "NotAChainRing", "NotAUnit", "NotCommutative",
    "NotIrreducible", "NotMonic", "ParseError", "Poly", "Report", "Ring", "RinglabError", "SUITES",
    "UnsupportedSuite", "WrongRing", "construct_ring", "eval_right", "lambda_eval", "make_dual",
    "monic_central_null", "poly_mul", "run_suite",
]
