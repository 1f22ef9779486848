"""q-difference Riccati equations with exact Gaussian-rational algebra.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .exact import CQ, POLE, INDETERMINATE, MathDomainError, Polynomial, QRiccatiError, RationalFunction, Z
from .linear import (
    ClosedFormSolution,
    LinearFirstOrderEq,
    LinearHomogeneousEq,
    eval_closed_form,
    factor_coefficient,
    find_rational_solutions,
    solve_constant_case,
    solve_homogeneous,
)
from .parsing import ParseError, parse_expression, parse_scalar
from .qspecial import EvalRequest, QBase, gamma_q_z, qgamma, qpochhammer_inf
from .riccati import (
    FamilyParameter,
    RiccatiEquation,
    SolutionEvaluator,
    family_member,
    general_solution,
    moebius_linearize,
    rational_solution_search,
    reduce_to_linear,
    to_second_order,
    verify_solution_exact,
)

__all__ = [
    "CQ",
    "POLE",
    "INDETERMINATE",
    "MathDomainError",
    "Polynomial",
    "QRiccatiError",
    "RationalFunction",
    "Z",
    "ClosedFormSolution",
    "LinearFirstOrderEq",
    "LinearHomogeneousEq",
    "eval_closed_form",
    "factor_coefficient",
    "find_rational_solutions",
    "solve_constant_case",
    "solve_homogeneous",
    "ParseError",
    "parse_expression",
    "parse_scalar",
    "EvalRequest",
    "QBase",
    "gamma_q_z",
    "qgamma",
    "qpochhammer_inf",
    "FamilyParameter",
    "RiccatiEquation",
    "SolutionEvaluator",
    "family_member",
    "general_solution",
    "moebius_linearize",
    "rational_solution_search",
    "reduce_to_linear",
    "to_second_order",
    "verify_solution_exact",
]

__version__ = "0.1.0"
