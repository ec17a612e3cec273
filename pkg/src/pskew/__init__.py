"""Partial skew group rings over finite fields: simplicity criteria checked against brute force."""

from .exactalg import ScalarField, Subspace
from .groups import FiniteGroup, FreeGroup, FreeWord, cyclic_group
from .paction import AlgebraPartialAction, SetPartialAction, is_G_simple, validate_axioms
from .report import Agreement, Finding, OracleInfeasible
from .skewring import (
    SkewRing,
    check_iip_equivalence,
    check_simplicity_criterion,
    ideal_generated,
    is_maximal_commutative,
    is_simple_oracle,
)

__all__ = [
    "AlgebraPartialAction",
    "Agreement",
    "FiniteGroup",
    "Finding",
    "FreeGroup",
    "FreeWord",
    "OracleInfeasible",
    "ScalarField",
    "SetPartialAction",
    "SkewRing",
    "Subspace",
    "check_iip_equivalence",
    "check_simplicity_criterion",
    "cyclic_group",
    "ideal_generated",
    "is_G_simple",
    "is_maximal_commutative",
    "is_simple_oracle",
    "validate_axioms",
]
