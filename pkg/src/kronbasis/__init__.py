"""
Exact linear algebra of Kronecker powers of permutation matrices.

Bases for the span of the ``P(w)^{(x) r}`` indexed by long increasing
subsequences, the partition-algebra commutant, Kazhdan-Lusztig annihilators in
the Iwahori-Hecke algebra, and the doubly stochastic elements of the span.
All arithmetic is over the rationals; nothing is floating point.
"""

from .errors import BudgetExceeded, VerificationError
from .permcomb import Partition, Permutation, StandardTableau
from .exactlin import SparseRationalMatrix, read_matrix, write_matrix
from .tensorrep import kron_power, phi, span_rank, theorem1_basis

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "VerificationError", "Partition", "Permutation", "StandardTableau",
    "SparseRationalMatrix", "read_matrix", "write_matrix", "kron_power", "phi", "span_rank",
    "theorem1_basis", "__version__",
]
