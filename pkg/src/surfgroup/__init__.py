"""Surface-group presentations of branched covers of the sphere from monodromy data."""

from .freegroup import Alphabet, Word
from .permrep import InvalidInput, MonodromyInput, Permutation
from .pipeline import Computation, SurfaceOutput, run, verify

__all__ = [
    "Alphabet",
    "Computation",
    "InvalidInput",
    "MonodromyInput",
    "Permutation",
    "SurfaceOutput",
    "Word",
    "run",
    "verify",
]
