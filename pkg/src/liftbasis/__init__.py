"""Lift bases of free abelian groups modulo a prime power to Z-bases."""

from .arith import GcdCombination, Modulus, mgcdex, symmetric_residue, unit_inverse
from .errors import (
    LiftError,
    NotABasisModP,
    NotAUnit,
    StabilizationTimeout,
    TooManyRows,
)
from .finite import LiftResult, get_basis_finite, replay_reduction
from .matrix import IntMatrix, RowStream, SparseRow
from .oracle import VerificationReport, verify_lift
from .stream import EliminationState, StreamLiftReport, run_until, step_loop

__all__ = [
    "EliminationState",
    "GcdCombination",
    "IntMatrix",
    "LiftError",
    "LiftResult",
    "Modulus",
    "NotABasisModP",
    "NotAUnit",
    "RowStream",
    "SparseRow",
    "StabilizationTimeout",
    "StreamLiftReport",
    "TooManyRows",
    "VerificationReport",
    "get_basis_finite",
    "mgcdex",
    "replay_reduction",
    "run_until",
    "step_loop",
    "symmetric_residue",
    "unit_inverse",
    "verify_lift",
]
