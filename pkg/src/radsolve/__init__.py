"""Exact solver for radical equations of depth at most two."""

from .algebra import AlgebraicReal, Polynomial, RationalFunction, isolate_real_roots, sign_at
from .equation import (
    EquationSyntaxError,
    RadicalEquation,
    UnsupportedForm,
    normalize,
    parse,
    parse_equation,
)
from .realset import RealSet, from_sign_condition
from .solver import SolutionReport, locate_vs_quadratic, solve

__version__ = "0.1.0"

__all__ = [
    "AlgebraicReal",
    "EquationSyntaxError",
    "Polynomial",
    "RadicalEquation",
    "RationalFunction",
    "RealSet",
    "SolutionReport",
    "UnsupportedForm",
    "from_sign_condition",
    "isolate_real_roots",
    "locate_vs_quadratic",
    "normalize",
    "parse",
    "parse_equation",
    "sign_at",
    "solve",
]
