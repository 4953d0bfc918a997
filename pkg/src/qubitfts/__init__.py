"""SLOCC classification of qubit states through Freudenthal triple systems."""

from .classify import (
    EntanglementClass,
    InvariantViolation,
    cayley_hyperdet,
    class_from_name,
    local_ranks,
    reduce_canonical,
    representative,
    state_to_fts,
)
from .fts import FtsElement, fts_rank, quartic_norm, symplectic_form
from .jordan import JordanElement
from .scalars import ExactComplex, exact
from .states import InvalidStateError, QubitState

__version__ = "0.1.0"

__all__ = [
    "EntanglementClass",
    "ExactComplex",
    "FtsElement",
    "InvalidStateError",
    "InvariantViolation",
    "JordanElement",
    "QubitState",
    "cayley_hyperdet",
    "class_from_name",
    "exact",
    "fts_rank",
    "local_ranks",
    "quartic_norm",
    "reduce_canonical",
    "representative",
    "state_to_fts",
    "symplectic_form",
]
