"""Exact computations with torsion pairs, hearts and HN filtrations over Dynkin quivers."""

from .errors import (
    ContractError,
    DecompositionError,
    InternalInconsistency,
    ParseError,
    SizeError,
    StructuralError,
    TheoremViolation,
    TorsionLabError,
)
from .exactla import Field, Matrix
from .modcat import RepCategory, category
from .quiver import Quiver
from .reps import Representation, RepMorphism
from .subcat import Context, TorsionPair, TwinPair

__version__ = "0.1.0"

__all__ = [
    "Context", "ContractError", "DecompositionError", "Field", "InternalInconsistency", "Matrix",
    "ParseError", "Quiver", "RepCategory", "RepMorphism", "Representation", "SizeError",
    "StructuralError", "TheoremViolation", "TorsionLabError", "TorsionPair", "TwinPair", "category",
]
