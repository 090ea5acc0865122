"""Exact computation toolkit for zero-sum problems over finite abelian groups.

Computes the Davenport constant, the eta-constant and the
Erdos-Ginzburg-Ziv constant by exhaustive symmetry-pruned search, enumerates
all extremal sequences up to the problem's symmetry, and classifies them
against the known parametric families for groups of shape C2 + C2 + C2n and
for cyclic groups.
"""

from .engine import (
    brute_sigma_L,
    has_zero_sum,
    is_minimal_zero_sum,
    sigma_L,
    witness_zero_sum,
)
from .errors import (
    ArityError,
    BudgetExceededError,
    CapExceededError,
    GuardError,
    ModeError,
    NonDivisorError,
    UnsupportedShapeError,
    WrongLengthError,
    ZerosumError,
)
from .families import FamilyWitness, classify, decompose_CT, enumerate_family, generate
from .groups import Basis, GroupSpec, SplitData, canonical_split, combine, order_of
from .search import (
    ConstantResult,
    compute_s_L,
    davenport_constant,
    enumerate_avoiding,
    enumerate_extremal,
    enumerate_max_minimal_zero_sum,
)
from .sequences import LengthSet, Sequence, resolve_lengths
from .symmetry import EquivalenceMode, canonical_form

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "Basis",
    "BudgetExceededError",
    "CapExceededError",
    "ConstantResult",
    "EquivalenceMode",
    "FamilyWitness",
    "GroupSpec",
    "GuardError",
    "LengthSet",
    "ModeError",
    "NonDivisorError",
    "Sequence",
    "SplitData",
    "UnsupportedShapeError",
    "WrongLengthError",
    "ZerosumError",
    "brute_sigma_L",
    "canonical_form",
    "canonical_split",
    "classify",
    "combine",
    "compute_s_L",
    "davenport_constant",
    "decompose_CT",
    "enumerate_avoiding",
    "enumerate_extremal",
    "enumerate_family",
    "enumerate_max_minimal_zero_sum",
    "generate",
    "has_zero_sum",
    "is_minimal_zero_sum",
    "order_of",
    "resolve_lengths",
    "sigma_L",
    "witness_zero_sum",
]
